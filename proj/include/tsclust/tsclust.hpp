#pragma once

// Time-series clustering with a bilateral slope-based distance inside
// symmetric dynamic time warping, baseline elastic distances, PSO medoid
// clustering, and cluster-validity scoring.

#include "tsclust/common.hpp"
#include "tsclust/distance.hpp"
#include "tsclust/experiment.hpp"
#include "tsclust/pso.hpp"
#include "tsclust/series.hpp"
#include "tsclust/ucr_io.hpp"
#include "tsclust/validity.hpp"
