#include "core/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "core/main_term.hpp"
#include "core/parallel.hpp"
#include "core/quadrature.hpp"

namespace oscillab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Segment {
  cplx origin;     // eta(tau) = origin + dir * tau
  cplx dir;        // unit step per parameter unit
  double a, b;     // parameter range, a < b
};

// Builds the path as parameterised segments, oriented upward (L5 L4 L3 L2 L1).
std::vector<Segment> path_segments(const Contour& c) {
  return {
      {{c.sigma3, 0.0}, {0.0, 1.0}, -c.height, -c.t0},  // L5
      {{0.0, -c.t0}, {-1.0, 0.0}, -c.sigma3, -c.sigma1},  // L4 (right to left)
      {{c.sigma1, 0.0}, {0.0, 1.0}, -c.t0, c.t0},        // L3
      {{0.0, c.t0}, {1.0, 0.0}, c.sigma1, c.sigma3},     // L2
      {{c.sigma3, 0.0}, {0.0, 1.0}, c.t0, c.height},     // L1
  };
}

double dist_to_segment(const Segment& seg, cplx s) {
  // segments are axis-aligned
  cplx pa = seg.origin + seg.dir * seg.a;
  cplx pb = seg.origin + seg.dir * seg.b;
  double t = ((s - pa) / (pb - pa)).real();
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(s - (pa + t * (pb - pa)));
}

// Collects quadrature panels along one segment; panels shrink to half the
// distance to s so the 1/(s - eta) spike stays resolved when s sits close
// to the path.
void collect_panels(const Segment& seg, cplx s, double a, double b,
                    std::vector<std::pair<double, double>>& out, int depth = 0) {
  double mid = 0.5 * (a + b);
  double d = std::abs(s - (seg.origin + seg.dir * mid));
  if (depth < 40 && b - a > std::max(1e-7, 0.5 * d)) {
    collect_panels(seg, s, a, mid, out, depth + 1);
    collect_panels(seg, s, mid, b, out, depth + 1);
  } else {
    out.emplace_back(a, b);
  }
}

struct PanelJob {
  const Segment* seg;
  double a, b;
};

cplx integrate_path(const std::vector<Segment>& segs, const std::function<cplx(cplx)>& f, cplx s,
                    int threads) {
  std::vector<PanelJob> jobs;
  for (const auto& seg : segs) {
    double t = seg.a;
    while (t < seg.b) {
      double hi = std::min(seg.b, t + 1.0);  // base panel length 1 in the parameter
      std::vector<std::pair<double, double>> sub;
      collect_panels(seg, s, t, hi, sub);
      for (auto [pa, pb] : sub) jobs.push_back({&seg, pa, pb});
      t = hi;
    }
  }

  std::vector<cplx> partial(jobs.size());
  for_each_block(jobs.size(), threads, [&](std::size_t i) {
    const PanelJob& j = jobs[i];
    partial[i] = gl32(j.a, j.b, [&](double tau) {
      cplx eta = j.seg->origin + j.seg->dir * tau;
      return f(eta);
    }) * j.seg->dir;
  });

  kahan_sum re, im;
  for (const cplx& v : partial) {
    re.add(v.real());
    im.add(v.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace

Contour Contour::for_app(const ApplicationSpec& app, double height) {
  Contour c;
  c.sigma1 = app.sigma1;
  c.sigma3 = app.sigma3;
  c.t0 = app.default_t0;
  c.height = height;
  c.validate(app);
  return c;
}

void Contour::validate(const ApplicationSpec& app) const {
  require(sigma1 > 0.0 && sigma3 > app.sigma2 && app.sigma2 > sigma1, errc::config,
          "contour: need sigma3 > sigma2 > sigma1 > 0");
  require(t0 > 0.0 && height > t0, errc::config, "contour: need height > T0 > 0");
  for (const auto& p : app.poles) {
    require(p.location.real() > sigma1 && std::fabs(p.location.imag()) < t0, errc::config,
            "contour: declared pole not strictly right of the path inside |Im| < T0");
  }
}

MellinValue mellin_contour_with(const std::function<cplx(cplx)>& dirichlet, double coeff_sum,
                                const Contour& c, cplx s, int threads) {
  require(s.real() > c.sigma1, errc::argument, "mellin_contour: s must lie right of the path");
  auto segs = path_segments(c);
  double dist = 1e300;
  for (const auto& seg : segs) dist = std::min(dist, dist_to_segment(seg, s));
  require(dist >= 1e-6, errc::argument, "mellin_contour: s too close to the path");
  require(c.height >= 2.0 * std::fabs(s.imag()) + 2.0, errc::config,
          "mellin_contour: height must exceed 2|Im s| + 2 for the tail bound");

  auto f = [&](cplx eta) { return dirichlet(eta) / (eta * (s - eta)); };
  cplx integral = integrate_path(segs, f, s, threads) / cplx(0.0, kTwoPi);

  // Above the horizontal legs the path integral drops the residue of the
  // integrand at eta = s; restore it so the result continues A(s) across the
  // |Im s| = T0 lines.
  if (std::fabs(s.imag()) > c.t0 && s.real() < c.sigma3) integral += dirichlet(s) / s;

  MellinValue out;
  out.value = integral;
  // |D(sigma3 + iv)| <= coeff_sum and |eta (s - eta)| >= v^2/2 for
  // v >= 2|Im s| + 2, so each truncated tail is below coeff_sum / (pi H).
  out.tail_bound = 2.0 * coeff_sum / (std::numbers::pi * c.height);
  return out;
}

MellinValue mellin_contour(const ApplicationSpec& app, const Contour& c, cplx s, int threads) {
  c.validate(app);
  return mellin_contour_with([&app](cplx eta) { return app.dirichlet_d(eta); },
                             app.coefficient_sum(c.sigma3), c, s, threads);
}

MellinValue mellin_direct(const ApplicationSpec& app, const DeltaFunction& d, cplx s,
                          double x_max, int threads) {
  require(s.real() > app.sigma2, errc::convergence,
          "mellin_direct: need Re s > sigma2 (absolute convergence)");
  require(x_max >= 2.0 && x_max <= d.n_max(), errc::range,
          "mellin_direct: x_max outside the tabulated domain");

  auto first = static_cast<std::uint64_t>(1);
  auto last = static_cast<std::uint64_t>(std::ceil(x_max)) - 1;
  std::uint64_t n_intervals = last - first + 1;
  constexpr std::uint64_t kBlock = 2048;
  std::size_t n_blocks = static_cast<std::size_t>((n_intervals + kBlock - 1) / kBlock);
  std::vector<cplx> partial(n_blocks, cplx(0.0));

  for_each_block(n_blocks, threads, [&](std::size_t blk) {
    std::uint64_t lo_n = first + static_cast<std::uint64_t>(blk) * kBlock;
    std::uint64_t hi_n = std::min(last, lo_n + kBlock - 1);
    cplx acc = 0.0;
    for (std::uint64_t n = lo_n; n <= hi_n; ++n) {
      double lo = static_cast<double>(n);
      double hi = std::min(x_max, static_cast<double>(n + 1));
      if (hi <= lo) continue;
      acc += gl16(lo, hi, [&](double x) -> cplx {
        return d.piece(n, x) * std::exp(-(s + 1.0) * std::log(x));
      });
    }
    partial[blk] = acc;
  });

  kahan_sum re, im;
  for (const cplx& v : partial) {
    re.add(v.real());
    im.add(v.imag());
  }

  MellinValue out;
  out.value = {re.value(), im.value()};

  // Tail estimate: envelope |Delta(x)| <= C x^{sigma2 + eps} fitted on the
  // top quarter of the table, integrated past x_max.
  double eps = std::min(0.05, 0.5 * (s.real() - app.sigma2));
  double c_env = 0.0;
  std::uint64_t lo_probe = static_cast<std::uint64_t>(x_max * 0.25) + 1;
  std::uint64_t step = std::max<std::uint64_t>(1, (last - lo_probe) / 2000);
  for (std::uint64_t n = lo_probe; n < last; n += step) {
    double x = static_cast<double>(n) + 0.5;
    c_env = std::max(c_env, std::fabs(d.piece(n, x)) * std::pow(x, -app.sigma2 - eps));
  }
  out.tail_bound = 1.5 * c_env * std::pow(x_max, app.sigma2 + eps - s.real()) /
                   (s.real() - app.sigma2 - eps);
  return out;
}

double perron_truncated_with(const std::function<cplx(cplx)>& dirichlet, double x,
                             double line_sigma, double height, int threads) {
  require(x > 1.0, errc::argument, "perron: x must exceed 1");
  require(height > 1.0, errc::argument, "perron: height must exceed 1");
  double logx = std::log(x);

  // Panels must resolve both x^{it} (frequency log x) and the series factor
  // (frequency ~ log t at height t).
  std::vector<std::pair<double, double>> panels;
  double t = 0.0;
  while (t < height) {
    double freq = logx + std::log((t + kTwoPi) / kTwoPi);
    double len = std::min(0.5 * std::numbers::pi / logx, 12.0 / freq);
    double hi = std::min(height, t + len);
    panels.emplace_back(t, hi);
    t = hi;
  }

  std::vector<double> partial(panels.size());
  for_each_block(panels.size(), threads, [&](std::size_t i) {
    auto [a, b] = panels[i];
    partial[i] = gl32(a, b, [&](double tt) {
      cplx s(line_sigma, tt);
      return (dirichlet(s) * std::exp(s * logx) / s).real();
    });
  });

  kahan_sum acc;
  for (double v : partial) acc.add(v);
  return acc.value() / std::numbers::pi;
}

double perron_truncated(const ApplicationSpec& app, double x, double line_sigma, double height,
                        int threads) {
  for (const auto& p : app.poles)
    require(std::fabs(p.location.real() - line_sigma) > 1e-9 ||
                std::fabs(p.location.imag()) > height,
            errc::config, "perron: declared pole on the integration line");
  return perron_truncated_with([&app](cplx s) { return app.dirichlet_d(s); }, x, line_sigma,
                               height, threads);
}

PoleStrength pole_strength_with(const std::function<cplx(cplx)>& mellin_a, double sigma0,
                                double t0) {
  PoleStrength out;
  for (int j = 4; j <= 12; ++j) {
    double off = std::ldexp(1.0, -j);
    double abs_a = std::abs(mellin_a(cplx(sigma0 + off, t0)));
    out.probes.push_back({off, abs_a, off * abs_a});
  }
  // first-order Richardson on the halving sequence: r_j = 2 v_{j+1} - v_j
  std::vector<double> extr;
  for (std::size_t i = 0; i + 1 < out.probes.size(); ++i)
    extr.push_back(2.0 * out.probes[i + 1].scaled - out.probes[i].scaled);
  std::size_t n = extr.size();
  double r0 = extr[n - 3], r1 = extr[n - 2], r2 = extr[n - 1];
  out.extrapolated = (r0 + r1 + r2) / 3.0;
  double spread = std::max({r0, r1, r2}) - std::min({r0, r1, r2});
  out.converged = std::fabs(out.extrapolated) > 0.0 &&
                  spread <= 0.10 * std::fabs(out.extrapolated);
  return out;
}

PoleStrength pole_strength(const ApplicationSpec& app, const Contour& c, double sigma0, double t0,
                           int threads) {
  require(sigma0 >= c.sigma1, errc::config,
          "pole_strength: probe line must start right of the contour");
  auto a_eval = [&](cplx s) { return mellin_contour(app, c, s, threads).value; };
  PoleStrength out = pole_strength_with(a_eval, sigma0, t0);

  // Independent estimate |Res D| / |s0| = |Res_{s0} D(eta)/eta| by circle
  // quadrature, when s0 really is a (simple) pole of D.
  try {
    cplx s0(sigma0, t0);
    LaurentCoeffs lc = laurent_coefficients(
        [&app](cplx eta) { return app.dirichlet_d(eta) / eta; }, s0, 1, 0.12);
    double est = std::abs(lc.a_minus[0]);
    if (est > 1e-10) out.residue_estimate = est;
  } catch (const error&) {
    // leave the estimate empty when the circle hits a singularity
  }
  return out;
}

std::string PoleStrength::probes_csv() const {
  std::string out = "sigma_offset,abs_A,scaled\n";
  char buf[128];
  for (const auto& p : probes) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.sigma_offset, p.abs_a, p.scaled);
    out += buf;
  }
  return out;
}

}  // namespace oscillab
