#pragma once

#include "uavsim/cli.hpp"
#include "uavsim/config.hpp"
#include "uavsim/engine.hpp"
#include "uavsim/error.hpp"
#include "uavsim/geometry.hpp"
#include "uavsim/io.hpp"
#include "uavsim/metrics.hpp"
#include "uavsim/planners.hpp"
#include "uavsim/policy.hpp"
#include "uavsim/trace.hpp"
#include "uavsim/tsp.hpp"
#include "uavsim/voi.hpp"
