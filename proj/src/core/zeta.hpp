#pragma once

#include "core/common.hpp"

namespace oscillab {

// Riemann zeta and its derivative for complex s != 1. Euler-Maclaurin with an
// |Im s|-scaled node count on Re s >= -2, functional-equation reflection to
// the left of that.
cplx zeta(cplx s);
cplx zeta_prime(cplx s);

cplx log_gamma(cplx z);
cplx digamma(cplx z);

namespace constants {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
// Imaginary part of the first nontrivial zero of zeta.
inline constexpr double first_zero_height = 14.13472514173469;

inline cplx first_zero() { return {0.5, first_zero_height}; }
inline cplx half_first_zero() { return {0.25, first_zero_height / 2.0}; }

// Re-checks first_zero_height by bracketing a sign change of the Hardy
// function Z(t) = exp(i vartheta(t)) zeta(1/2 + it) around it. Runs once;
// later calls return the cached verdict.
bool first_zero_verified();

}  // namespace constants

}  // namespace oscillab
