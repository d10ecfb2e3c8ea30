#pragma once

#include "errors.hpp"
#include "gon_coefficients.hpp"
#include "nbody_reduction.hpp"
#include "operator_blocks.hpp"
#include "ode.hpp"
#include "monodromy.hpp"
#include "morse_index.hpp"
#include "stability_atlas.hpp"
#include "selftest.hpp"
