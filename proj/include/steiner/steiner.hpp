#pragma once

/// \file steiner.hpp
/// \brief Umbrella header: three-terminal minimal networks on S^2 and R^2,
/// their calibrations, and the minimality harness.

#include "steiner/error.hpp"
#include "steiner/sphere_geom.hpp"
#include "steiner/hex_algebra.hpp"
#include "steiner/spaces.hpp"
#include "steiner/network.hpp"
#include "steiner/quadrature.hpp"
#include "steiner/current.hpp"
#include "steiner/sampling.hpp"
#include "steiner/steiner_solver.hpp"
#include "steiner/calibration.hpp"
#include "steiner/minimality.hpp"
