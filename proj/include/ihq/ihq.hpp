#ifndef IHQ_IHQ_HPP
#define IHQ_IHQ_HPP

/* Umbrella header: the full library. */

#include "ihq/rational.hpp"
#include "ihq/linalg.hpp"
#include "ihq/ring.hpp"
#include "ihq/laurent.hpp"
#include "ihq/model.hpp"
#include "ihq/validate.hpp"
#include "ihq/builders.hpp"
#include "ihq/engine.hpp"
#include "ihq/json_io.hpp"
#include "ihq/report.hpp"

#endif
