// chiroptica.hpp
// Umbrella header for the whole library.

#pragma once

#include "chiroptica/angles.hpp"
#include "chiroptica/elements.hpp"
#include "chiroptica/entanglement.hpp"
#include "chiroptica/geometric_phase.hpp"
#include "chiroptica/jones.hpp"
#include "chiroptica/plot.hpp"
#include "chiroptica/polarimetry.hpp"
#include "chiroptica/polarization.hpp"
