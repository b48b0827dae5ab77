#include "core/main_term.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "core/zeta.hpp"

namespace oscillab {

double MainTermExpr::eval(double x) const {
  require(x > 1.0, errc::range, "main term: eval requires x > 1");
  double lx = std::log(x);
  cplx acc = 0.0;
  double scale = 0.0;
  for (const auto& t : terms) {
    cplx v = t.coeff * std::exp(t.exponent * lx) * std::pow(lx, t.log_power);
    acc += v;
    scale += std::abs(v);
  }
  if (scale > 0.0)
    require(std::fabs(acc.imag()) <= 1e-9 * scale, errc::consistency,
            "main term: imaginary residue above tolerance (term list not conjugate-closed)");
  return acc.real();
}

std::string MainTermExpr::to_json() const {
  std::string out = "[";
  char buf[160];
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    std::snprintf(buf, sizeof buf,
                  "%s{\"re\":%.17g,\"im\":%.17g,\"exp_re\":%.17g,\"exp_im\":%.17g,\"logpow\":%d}",
                  i ? "," : "", t.coeff.real(), t.coeff.imag(), t.exponent.real(),
                  t.exponent.imag(), t.log_power);
    out += buf;
  }
  out += "]";
  return out;
}

bool MainTermExpr::oscillatory_part(double* amplitude, double* phase) const {
  for (const auto& t : terms) {
    if (t.exponent.imag() > 1e-12) {
      if (amplitude) *amplitude = 2.0 * std::abs(t.coeff);
      if (phase) *phase = std::arg(t.coeff);
      return true;
    }
  }
  return false;
}

LaurentCoeffs laurent_coefficients(const std::function<cplx(cplx)>& f, cplx pole, int order,
                                   double radius) {
  require(order >= 1, errc::argument, "laurent: order must be positive");
  require(radius >= 1e-4 && radius <= 0.4, errc::config, "laurent: radius outside [1e-4, 0.4]");

  constexpr int kNodes = 256;
  LaurentCoeffs lc;
  lc.pole = pole;
  lc.order = order;
  lc.a_minus.assign(static_cast<std::size_t>(order), cplx(0.0));

  // a_{-k} = (1/2pi) int_0^{2pi} F(pole + r e^{i phi}) r^k e^{i k phi} dphi
  for (int j = 0; j < kNodes; ++j) {
    double phi = 2.0 * std::numbers::pi * j / kNodes;
    cplx dir = std::polar(1.0, phi);
    cplx fv = f(pole + radius * dir);
    require(std::isfinite(fv.real()) && std::isfinite(fv.imag()), errc::eval,
            "laurent: quadrature node hit a singularity");
    cplx rot = radius * dir;  // (r e^{i phi})^k built up incrementally
    for (int k = 1; k <= order; ++k) {
      lc.a_minus[static_cast<std::size_t>(k - 1)] += fv * rot;
      rot *= radius * dir;
    }
  }
  for (auto& a : lc.a_minus) a /= static_cast<double>(kNodes);
  return lc;
}

double default_laurent_radius(const ApplicationSpec& app, cplx pole) {
  // Stay clear of the other declared poles; for abelian also of the
  // undeclared pole at 1/(k+1) just left of 1/k.
  double nearest = 0.625;  // 0.4 / 0.64, so the default settles at 0.4 when unconstrained
  for (const auto& p : app.poles) {
    double d = std::abs(p.location - pole);
    if (d > 1e-12) nearest = std::min(nearest, d);
  }
  if (app.kind == SequenceKind::abelian) {
    double re = pole.real();
    if (re > 1e-9) {
      double k = 1.0 / re;
      nearest = std::min(nearest, std::fabs(re - 1.0 / (std::round(k) + 1.0)));
    }
  }
  double r = 0.64 * nearest;
  require(r >= 1e-4, errc::config, "laurent: poles too close for a separating circle");
  return std::min(r, 0.4);
}

LaurentCoeffs laurent_coefficients(const ApplicationSpec& app, cplx pole, int order,
                                   double radius) {
  for (const auto& p : app.poles) {
    double d = std::abs(p.location - pole);
    require(d < 1e-12 || d > radius, errc::config,
            "laurent: circle encloses another declared pole");
  }
  return laurent_coefficients([&app](cplx s) { return app.dirichlet_d(s) / s; }, pole, order,
                              radius);
}

MainTermExpr main_term_from_poles(const ApplicationSpec& app) {
  MainTermExpr expr;
  for (const auto& p : app.poles) {
    double radius = default_laurent_radius(app, p.location);
    LaurentCoeffs lc = laurent_coefficients(app, p.location, p.order, radius);
    // Res_{s=rho} F(s) x^s = sum_k a_{-k} x^rho (log x)^{k-1} / (k-1)!
    double fact = 1.0;
    for (int k = 1; k <= p.order; ++k) {
      if (k > 1) fact *= static_cast<double>(k - 1);
      expr.terms.push_back({lc.a_minus[static_cast<std::size_t>(k - 1)] / fact, p.location, k - 1});
    }
  }
  return expr;
}

namespace {

// prod_{j != k} zeta(j/k), explicit factors to j = 64 and a log-sum tail so
// the truncation residual stays below 1e-12 for every k, not just k = 1.
double abelian_coefficient(int k) {
  cplx prod = 1.0;
  for (int j = 1; j <= 64; ++j) {
    if (j == k) continue;
    prod *= zeta(cplx(static_cast<double>(j) / k, 0.0));
  }
  double log_tail = 0.0;
  for (int j = 65;; ++j) {
    double w = static_cast<double>(j) / k;
    if (std::exp2(1.0 - w) < 1e-14) break;
    double s = 0.0;
    for (int n = 2; n <= 40; ++n) {
      double term = std::pow(static_cast<double>(n), -w);
      s += term;
      if (term < 1e-18) break;
    }
    log_tail += std::log1p(s);
  }
  return (prod * std::exp(log_tail)).real();
}

}  // namespace

MainTermExpr closed_form_main_term(const ApplicationSpec& app) {
  MainTermExpr expr;
  const double gamma = constants::euler_gamma;
  switch (app.kind) {
    case SequenceKind::divisor:
      // x log x + (2 gamma - 1) x
      expr.terms.push_back({cplx(1.0), cplx(1.0), 1});
      expr.terms.push_back({cplx(2.0 * gamma - 1.0), cplx(1.0), 0});
      break;
    case SequenceKind::squarefree_divisors: {
      double z2 = zeta(cplx(2.0)).real();
      double zp2 = zeta_prime(cplx(2.0)).real();
      expr.terms.push_back({cplx(1.0 / z2), cplx(1.0), 1});
      expr.terms.push_back({cplx(-2.0 * zp2 / (z2 * z2) + (2.0 * gamma - 1.0) / z2), cplx(1.0), 0});
      break;
    }
    case SequenceKind::von_mangoldt:
      expr.terms.push_back({cplx(1.0), cplx(1.0), 0});
      break;
    case SequenceKind::abelian:
      for (int k = 1; k <= 6; ++k)
        expr.terms.push_back({cplx(abelian_coefficient(k)), cplx(1.0 / k), 0});
      break;
    case SequenceKind::twisted:
      // No phase convention is committed to here: keep the residue pair
      // x^{1 +- i theta} instead of a cosine form.
      return main_term_from_poles(app);
  }
  return expr;
}

}  // namespace oscillab
