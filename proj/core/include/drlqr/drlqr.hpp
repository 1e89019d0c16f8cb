#pragma once

#include "drlqr/errors.hpp"      // IWYU pragma: keep
#include "drlqr/fft.hpp"         // IWYU pragma: keep
#include "drlqr/frequency.hpp"   // IWYU pragma: keep
#include "drlqr/grid.hpp"        // IWYU pragma: keep
#include "drlqr/hinf.hpp"        // IWYU pragma: keep
#include "drlqr/io.hpp"          // IWYU pragma: keep
#include "drlqr/rational.hpp"    // IWYU pragma: keep
#include "drlqr/riccati.hpp"     // IWYU pragma: keep
#include "drlqr/simulate.hpp"    // IWYU pragma: keep
#include "drlqr/spectral.hpp"    // IWYU pragma: keep
#include "drlqr/state_space.hpp" // IWYU pragma: keep
#include "drlqr/synthesis.hpp"   // IWYU pragma: keep
