#pragma once

#include "mpfbm/error.hpp"
#include "mpfbm/estimators.hpp"
#include "mpfbm/flows.hpp"
#include "mpfbm/gaussian.hpp"
#include "mpfbm/geometry.hpp"
#include "mpfbm/increments.hpp"
#include "mpfbm/kernels.hpp"
#include "mpfbm/measures.hpp"
#include "mpfbm/rng.hpp"
#include "mpfbm/stationarity.hpp"
