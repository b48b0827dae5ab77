#pragma once

#include <vector>

#include "core/common.hpp"
#include "core/sequence.hpp"

namespace oscillab {

struct PoleInfo {
  cplx location;
  int order = 1;
};

// One application: the generating Dirichlet series, its main-term poles,
// and the strip parameters 0 < sigma1 < sigma2 < sigma3 that frame the
// integration contours.
struct ApplicationSpec {
  SequenceKind kind = SequenceKind::divisor;
  double theta = 1.0;
  std::vector<PoleInfo> poles;
  double sigma1 = 0.5;
  double sigma2 = 1.0;
  double sigma3 = 1.25;
  double default_t0 = 2.0;
  int product_truncation = 64;  // abelian only

  static ApplicationSpec make(SequenceKind kind, double theta = 1.0);

  // Meromorphic continuation of sum a_n n^-s for this application.
  cplx dirichlet_d(cplx s) const;

  // sum |a_n| n^-sigma; finite for sigma > sigma2. Every application here has
  // non-negative coefficients, so this equals D(sigma).
  double coefficient_sum(double sigma) const;

  void validate() const;
};

}  // namespace oscillab
