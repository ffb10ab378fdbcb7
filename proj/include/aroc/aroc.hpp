#pragma once

// Umbrella header: ROC / AROC estimation, the bootstrap equality test, and
// the simulation harness.

#include "aroc/bandwidth.hpp"
#include "aroc/curve.hpp"
#include "aroc/distance.hpp"
#include "aroc/ecdf.hpp"
#include "aroc/estimators.hpp"
#include "aroc/io.hpp"
#include "aroc/kernel.hpp"
#include "aroc/manifest.hpp"
#include "aroc/math.hpp"
#include "aroc/nw.hpp"
#include "aroc/parallel.hpp"
#include "aroc/rng.hpp"
#include "aroc/simulation.hpp"
#include "aroc/split.hpp"
#include "aroc/testing.hpp"
#include "aroc/types.hpp"
#include "aroc/version.hpp"
