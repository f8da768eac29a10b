/**
 * @file cotan.hpp
 * @brief Umbrella header.
 */
#pragma once

#include "bernoulli.hpp"
#include "cotangent_sums.hpp"
#include "estermann.hpp"
#include "euler_maclaurin.hpp"
#include "fast_eval.hpp"
#include "io.hpp"
#include "numtheory.hpp"
#include "nyman_beurling.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "wilton.hpp"
#include "zeta.hpp"
