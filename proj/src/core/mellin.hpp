#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "core/common.hpp"
#include "core/delta.hpp"
#include "core/dirichlet.hpp"

namespace oscillab {

// Five-segment integration path: up the line Re = sigma3 from below, left at
// -iT0, up the line Re = sigma1, right at +iT0, and up Re = sigma3 again.
// The two infinite vertical pieces are truncated at |Im| = height and closed
// with an analytic tail bound.
struct Contour {
  double sigma1 = 0.5;
  double sigma3 = 1.25;
  double t0 = 2.0;
  double height = 2000.0;

  static Contour for_app(const ApplicationSpec& app, double height = 2000.0);
  void validate(const ApplicationSpec& app) const;
};

struct MellinValue {
  cplx value;
  double tail_bound = 0.0;  // certified bound on the truncated remainder
};

// A(s) = integral_1^inf Delta(x) x^{-s-1} dx, truncated at x_max.
MellinValue mellin_direct(const ApplicationSpec& app, const DeltaFunction& d, cplx s,
                          double x_max, int threads = 0);

// A(s) through the contour identity, for s right of the path (Re s > sigma1).
// Between the horizontal legs the truncated path integral and the transform
// agree; above |Im s| = T0 the path integral loses the residue of the
// integrand at eta = s, so D(s)/s is added back. Either way the returned
// value is the meromorphic continuation of A.
MellinValue mellin_contour(const ApplicationSpec& app, const Contour& c, cplx s, int threads = 0);

// Same machinery with an injected evaluator (tests use synthetic series).
MellinValue mellin_contour_with(const std::function<cplx(cplx)>& dirichlet, double coeff_sum,
                                const Contour& c, cplx s, int threads = 0);

// (1/2pi) int_{-H}^{H} Re[D(sigma+it) x^{sigma+it} / (sigma+it)] dt;
// estimates Delta(x) when every main-term pole lies right of the line.
double perron_truncated(const ApplicationSpec& app, double x, double line_sigma, double height,
                        int threads = 0);
double perron_truncated_with(const std::function<cplx(cplx)>& dirichlet, double x,
                             double line_sigma, double height, int threads = 0);

struct PoleStrength {
  double extrapolated = 0.0;
  bool converged = false;
  std::optional<double> residue_estimate;  // |Res D| / |s0| via circle quadrature
  struct Probe {
    double sigma_offset;
    double abs_a;
    double scaled;  // sigma_offset * abs_a
  };
  std::vector<Probe> probes;

  std::string probes_csv() const;
};

// lim (sigma - sigma0) |A(sigma + i t0)| by probing A at sigma0 + 2^-j,
// j = 4..12, with first-order Richardson extrapolation.
PoleStrength pole_strength(const ApplicationSpec& app, const Contour& c, double sigma0, double t0,
                           int threads = 0);
PoleStrength pole_strength_with(const std::function<cplx(cplx)>& mellin_a, double sigma0,
                                double t0);

}  // namespace oscillab
