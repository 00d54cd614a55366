#pragma once

#include "certhom/types.hpp"
#include "certhom/poly_core.hpp"
#include "certhom/bw_metric.hpp"
#include "certhom/linalg.hpp"
#include "certhom/newton.hpp"
#include "certhom/tracker.hpp"
#include "certhom/heuristic.hpp"
#include "certhom/start_systems.hpp"
#include "certhom/parallel.hpp"
#include "certhom/experiments.hpp"
