#include "core/dirichlet.hpp"

#include <cmath>

#include "core/zeta.hpp"

namespace oscillab {

namespace {

// log zeta(w) for Re w large, from the Dirichlet series of zeta - 1. Used for
// the abelian product tail where a full Euler-Maclaurin call per factor would
// be waste; each term is accurate to ~1e-16 once Re w >= 8.
cplx log_zeta_tail(cplx w) {
  cplx sum = 0.0;
  for (int n = 2; n <= 40; ++n) {
    cplx term = std::exp(-w * std::log(static_cast<double>(n)));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return std::log(1.0 + sum);
}

cplx abelian_d(const ApplicationSpec& app, cplx s) {
  int trunc = app.product_truncation;
  cplx prod = 1.0;
  for (int k = 1; k <= trunc; ++k) {
    cplx ks = static_cast<double>(k) * s;
    require(std::abs(ks - 1.0) > 1e-9, errc::pole,
            "dirichlet_d: abelian factor pole, k*s = 1 for k = " + std::to_string(k));
    prod *= zeta(ks);
  }
  // Tail factor exp(sum_{k>trunc} log zeta(ks)); each term is bounded by
  // 2^{1 - k Re s}, and summation stops once that bound drops below 1e-14.
  cplx log_tail = 0.0;
  for (int k = trunc + 1;; ++k) {
    double bound = std::exp2(1.0 - static_cast<double>(k) * s.real());
    if (bound < 1e-14) break;
    require(k <= 100000, errc::convergence, "dirichlet_d: abelian tail does not converge");
    log_tail += log_zeta_tail(static_cast<double>(k) * s);
  }
  if (std::abs(log_tail) > 0.0) prod *= std::exp(log_tail);
  return prod;
}

}  // namespace

ApplicationSpec ApplicationSpec::make(SequenceKind kind, double theta) {
  ApplicationSpec app;
  app.kind = kind;
  app.theta = (kind == SequenceKind::twisted) ? theta : 0.0;
  app.sigma2 = 1.0;
  app.sigma3 = 1.25;
  switch (kind) {
    case SequenceKind::divisor:
      app.sigma1 = 0.5;
      app.poles = {{cplx(1.0, 0.0), 2}};
      app.default_t0 = 2.0;
      break;
    case SequenceKind::squarefree_divisors:
      app.sigma1 = 0.2;
      app.poles = {{cplx(1.0, 0.0), 2}};
      app.default_t0 = 2.0;
      break;
    case SequenceKind::twisted:
      require(theta != 0.0, errc::argument, "twisted application requires theta != 0");
      app.sigma1 = 0.2;
      app.poles = {{cplx(1.0, 0.0), 2}, {cplx(1.0, theta), 1}, {cplx(1.0, -theta), 1}};
      app.default_t0 = std::fabs(theta) + 1.0;
      break;
    case SequenceKind::von_mangoldt:
      app.sigma1 = 0.35;
      app.poles = {{cplx(1.0, 0.0), 1}};
      // keeps the first zeta zero (height 14.13) outside the box
      app.default_t0 = 13.0;
      break;
    case SequenceKind::abelian:
      app.sigma1 = 1.0 / 7.0 + 0.01;
      for (int k = 1; k <= 6; ++k) app.poles.push_back({cplx(1.0 / k, 0.0), 1});
      app.default_t0 = 2.0;
      break;
  }
  app.validate();
  return app;
}

void ApplicationSpec::validate() const {
  require(sigma1 > 0.0 && sigma1 < sigma2 && sigma2 < sigma3, errc::config,
          "application: need 0 < sigma1 < sigma2 < sigma3");
  for (const auto& p : poles) {
    require(p.order >= 1, errc::config, "application: pole order must be positive");
    require(p.location.real() > sigma1 && p.location.real() <= sigma2, errc::config,
            "application: pole outside (sigma1, sigma2]");
  }
}

cplx ApplicationSpec::dirichlet_d(cplx s) const {
  for (const auto& p : poles)
    require(std::abs(s - p.location) > 1e-9, errc::pole, "dirichlet_d: evaluation at a pole");
  switch (kind) {
    case SequenceKind::divisor: {
      cplx z = zeta(s);
      return z * z;
    }
    case SequenceKind::squarefree_divisors: {
      cplx z = zeta(s), z2 = zeta(2.0 * s);
      require(std::abs(z2) > 1e-12, errc::pole, "dirichlet_d: zeta(2s) vanishes");
      return z * z / z2;
    }
    case SequenceKind::twisted: {
      cplx z = zeta(s), z2 = zeta(2.0 * s);
      require(std::abs(z2) > 1e-12, errc::pole, "dirichlet_d: zeta(2s) vanishes");
      return z * z * zeta(s + cplx(0.0, theta)) * zeta(s - cplx(0.0, theta)) / z2;
    }
    case SequenceKind::von_mangoldt: {
      cplx z = zeta(s);
      require(std::abs(z) > 1e-12, errc::pole, "dirichlet_d: zeta(s) vanishes");
      return -zeta_prime(s) / z;
    }
    case SequenceKind::abelian:
      return abelian_d(*this, s);
  }
  fail(errc::argument, "dirichlet_d: unknown kind");
}

double ApplicationSpec::coefficient_sum(double sigma) const {
  require(sigma > sigma2, errc::convergence, "coefficient_sum: need sigma > sigma2");
  cplx v = dirichlet_d(cplx(sigma, 0.0));
  return v.real();
}

}  // namespace oscillab
