#include "core/zeta.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

namespace oscillab {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k}/(2k)! for k = 1..15.
constexpr std::array<double, 15> kBernoulliOverFact = {
    8.3333333333333333333e-02,  -1.3888888888888888889e-03, 3.3068783068783068783e-05,
    -8.2671957671957671958e-07, 2.0876756987868098979e-08,  -5.2841901386874931848e-10,
    1.3382536530684678833e-11,  -3.3896802963225828668e-13, 8.5860620562778445641e-15,
    -2.1748686985580618730e-16, 5.5090028283602295152e-18,  -1.3954464685812523341e-19,
    3.5347070396294674717e-21,  -8.9535174270375468504e-23, 2.2679524523376830603e-24};
constexpr int kCorrectionTerms = 14;

// Cached log n table shared by all evaluations.
class LogTable {
public:
  const double* get(std::size_t n) {
    std::call_once(once_, [this] {
      table_.resize(1 << 17);
      table_[0] = 0.0;
      for (std::size_t i = 1; i < table_.size(); ++i) table_[i] = std::log(static_cast<double>(i));
    });
    require(n < table_.size(), errc::argument, "zeta: height out of supported range");
    return table_.data();
  }

private:
  std::once_flag once_;
  std::vector<double> table_;
};

LogTable g_logs;

// With 14 Bernoulli corrections the truncation term is about
// 2.3e-24 * (|Im s|/N)^29 * N^{-Re s - 1.5}; N ~ 0.35|Im s| keeps the ratio
// below e^{-1} and the strip -2 <= Re s <= 10 at ~1e-12 relative up to
// |Im s| = 1e3, degrading gently above that.
int em_cutoff(const cplx& s) {
  double t = std::fabs(s.imag());
  return std::max(20, static_cast<int>(0.35 * t) + 20);
}

struct EmResult {
  cplx value;
  cplx derivative;
};

// Euler-Maclaurin for zeta (and optionally zeta') on Re s >= -2:
//   zeta(s) = sum_{n<N} n^-s + N^{1-s}/(s-1) + N^-s/2
//           + sum_k B_{2k}/(2k)! * N^{1-s-2k} * prod_{j=0}^{2k-2}(s+j).
// The derivative differentiates every piece in place; the Pochhammer products
// carry (P, P') through the recurrence to stay finite at negative integers.
EmResult euler_maclaurin(const cplx& s, bool want_derivative) {
  int n_cut = em_cutoff(s);
  const double* logs = g_logs.get(static_cast<std::size_t>(n_cut) + 1);

  cplx sum = 1.0;       // n = 1 term
  cplx dsum = 0.0;      // its derivative is 0
  for (int n = 2; n < n_cut; ++n) {
    double ln = logs[n];
    cplx term = std::exp(-s * ln);
    sum += term;
    if (want_derivative) dsum += -ln * term;
  }

  double lnN = logs[n_cut];
  cplx n_pow_ms = std::exp(-s * lnN);             // N^-s
  cplx n_pow_1ms = n_pow_ms * static_cast<double>(n_cut);  // N^{1-s}

  cplx sm1 = s - 1.0;
  cplx tail = n_pow_1ms / sm1 + 0.5 * n_pow_ms;
  cplx dtail;
  if (want_derivative)
    dtail = n_pow_1ms * (-lnN / sm1 - 1.0 / (sm1 * sm1)) - 0.5 * lnN * n_pow_ms;

  // Correction terms: c_k * N^{1-s-2k} * P_k(s), P_k = s(s+1)...(s+2k-2).
  cplx p = 1.0, dp = 0.0;
  double n_inv = 1.0 / static_cast<double>(n_cut);
  cplx n_pow = n_pow_1ms * n_inv;  // N^{-s}; multiplied by N^-2 per step below
  int j = 0;
  for (int k = 1; k <= kCorrectionTerms; ++k) {
    // extend product to degree 2k-1 (factors s+j for j < 2k-1)
    for (; j <= 2 * k - 2; ++j) {
      cplx f = s + static_cast<double>(j);
      dp = dp * f + p;
      p = p * f;
    }
    n_pow *= n_inv;  // now N^{1-s-2k}
    double c = kBernoulliOverFact[static_cast<std::size_t>(k - 1)];
    tail += c * n_pow * p;
    if (want_derivative) dtail += c * n_pow * (dp - lnN * p);
  }

  return {sum + tail, dsum + dtail};
}

// chi(s) = 2 (2pi)^{s-1} sin(pi s/2) Gamma(1-s), the reflection factor in
// zeta(s) = chi(s) zeta(1-s). Used only for Re s < -2 where |Im s| stays
// moderate in this artifact, so the direct product is safe.
cplx chi_factor(const cplx& s) {
  return 2.0 * std::exp((s - 1.0) * std::log(2.0 * kPi)) * std::sin(0.5 * kPi * s) *
         std::exp(log_gamma(1.0 - s));
}

}  // namespace

cplx log_gamma(cplx z) {
  // Lanczos, g = 7, 9 coefficients.
  static constexpr std::array<double, 9> c = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  cplx zz = z - 1.0;
  cplx x = c[0];
  for (int i = 1; i < 9; ++i) x += c[static_cast<std::size_t>(i)] / (zz + static_cast<double>(i));
  cplx t = zz + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

cplx digamma(cplx z) {
  cplx shift = 0.0;
  while (z.real() < 8.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  cplx inv = 1.0 / z, inv2 = inv * inv;
  // asymptotic series, B_{2k}/(2k) z^{-2k}
  static constexpr std::array<double, 7> b = {1.0 / 12,  -1.0 / 120, 1.0 / 252, -1.0 / 240,
                                              1.0 / 132, -691.0 / 32760, 1.0 / 12};
  cplx acc = std::log(z) - 0.5 * inv;
  cplx pw = inv2;
  for (double bk : b) {
    acc -= bk * pw;
    pw *= inv2;
  }
  return acc + shift;
}

cplx zeta(cplx s) {
  require(s != cplx(1.0, 0.0), errc::pole, "zeta: pole at s = 1");
  if (s.real() >= -2.0) return euler_maclaurin(s, false).value;
  cplx z1 = euler_maclaurin(1.0 - s, false).value;
  return chi_factor(s) * z1;
}

cplx zeta_prime(cplx s) {
  require(s != cplx(1.0, 0.0), errc::pole, "zeta_prime: pole at s = 1");
  if (s.real() >= -2.0) return euler_maclaurin(s, true).derivative;
  // zeta'(s) = chi'(s) zeta(1-s) - chi(s) zeta'(1-s), with
  // chi' = 2 (2pi)^{s-1} Gamma(1-s) [log(2pi) sin + (pi/2) cos - sin psi(1-s)]
  EmResult r = euler_maclaurin(1.0 - s, true);
  cplx pref = 2.0 * std::exp((s - 1.0) * std::log(2.0 * kPi)) * std::exp(log_gamma(1.0 - s));
  cplx sn = std::sin(0.5 * kPi * s), cs = std::cos(0.5 * kPi * s);
  cplx chi = pref * sn;
  cplx dchi = pref * (std::log(2.0 * kPi) * sn + 0.5 * kPi * cs - sn * digamma(1.0 - s));
  return dchi * r.value - chi * r.derivative;
}

namespace constants {

namespace {

// Riemann-Siegel theta via log Gamma: vartheta(t) = Im lgamma(1/4 + it/2) - t/2 log pi.
double rs_theta(double t) {
  return log_gamma(cplx(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

double hardy_z(double t) {
  cplx rot = std::exp(cplx(0.0, rs_theta(t)));
  return (rot * zeta(cplx(0.5, t))).real();
}

}  // namespace

bool first_zero_verified() {
  static const bool ok = [] {
    double lo = first_zero_height - 0.05, hi = first_zero_height + 0.05;
    double zlo = hardy_z(lo), zhi = hardy_z(hi);
    if ((zlo < 0.0) == (zhi < 0.0)) return false;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      double zm = hardy_z(mid);
      if ((zlo < 0.0) == (zm < 0.0)) {
        lo = mid;
        zlo = zm;
      } else {
        hi = mid;
      }
    }
    return std::fabs(0.5 * (lo + hi) - first_zero_height) < 5e-7;
  }();
  return ok;
}

}  // namespace constants

}  // namespace oscillab
