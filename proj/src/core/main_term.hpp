#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/dirichlet.hpp"

namespace oscillab {

// Finite combination sum coeff * x^exponent * (log x)^log_power. Complex
// exponents occur in conjugate pairs so evaluation is real.
struct MainTermExpr {
  struct Term {
    cplx coeff;
    cplx exponent;
    int log_power = 0;
  };
  std::vector<Term> terms;

  double eval(double x) const;
  std::string to_json() const;

  // For a conjugate pair c x^{1+i theta} + conj(c) x^{1-i theta} this is
  // (amplitude, phase) of the equivalent 2|c| x cos(theta log x + phase).
  // Returns false when no off-axis pair is present.
  bool oscillatory_part(double* amplitude, double* phase) const;
};

struct LaurentCoeffs {
  cplx pole;
  int order = 1;
  std::vector<cplx> a_minus;  // a_minus[k-1] multiplies (s - pole)^{-k}
};

// Principal-part coefficients of F about the pole, by 256-node trapezoidal
// quadrature on a circle of the given radius.
LaurentCoeffs laurent_coefficients(const std::function<cplx(cplx)>& f, cplx pole, int order,
                                   double radius);
LaurentCoeffs laurent_coefficients(const ApplicationSpec& app, cplx pole, int order,
                                   double radius);

// Safe circle radius around one declared pole of the application.
double default_laurent_radius(const ApplicationSpec& app, cplx pole);

MainTermExpr main_term_from_poles(const ApplicationSpec& app);
MainTermExpr closed_form_main_term(const ApplicationSpec& app);

}  // namespace oscillab
