#include "core/delta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "core/parallel.hpp"
#include "core/quadrature.hpp"

namespace oscillab {

double AlphaSpec::value_at(double t) const {
  if (mode == Mode::constant) return alpha0;
  require(t > 1.0, errc::argument, "alpha(T): shrinking form needs log T > 0");
  double a = 3.0 / 8.0 - c / std::pow(std::log(t), 0.125);
  require(a > 0.0, errc::argument, "alpha(T): window too small for this c");
  return a;
}

double DeltaFunction::main_eval(double x) const { return main_.eval(x); }

double DeltaFunction::main_deriv(double x) const {
  double lx = std::log(x);
  cplx acc = 0.0;
  for (const auto& t : main_.terms) {
    cplx v = t.coeff * std::exp((t.exponent - 1.0) * lx);
    cplx inner = t.exponent * std::pow(lx, t.log_power);
    if (t.log_power > 0) inner += static_cast<double>(t.log_power) * std::pow(lx, t.log_power - 1);
    acc += v * inner;
  }
  return acc.real();
}

double DeltaFunction::at(double x) const {
  require(x >= 1.0 && x <= n_max(), errc::range, "delta: x outside [1, n_max]");
  return table_->star(x) - main_eval(x);
}

namespace {

// Splits [a, b] at the integers and hands each smooth piece (n, lo, hi) to
// fn, in increasing order.
template <typename Fn>
void for_each_piece(double a, double b, Fn&& fn) {
  auto n = static_cast<std::uint64_t>(std::floor(a));
  while (true) {
    double lo = std::max(a, static_cast<double>(n));
    double hi = std::min(b, static_cast<double>(n + 1));
    if (hi > lo) fn(n, lo, hi);
    if (static_cast<double>(n + 1) >= b) break;
    ++n;
  }
}

// Deterministic parallel sweep over the unit intervals covering [a, b]:
// fixed blocks of intervals, per-block Kahan partial sums, sequential merge.
template <typename PieceFn>
double reduce_pieces(double a, double b, int threads, PieceFn&& piece_value) {
  auto first = static_cast<std::uint64_t>(std::floor(a));
  auto last = static_cast<std::uint64_t>(std::ceil(b)) - 1;
  std::uint64_t n_intervals = last - first + 1;
  constexpr std::uint64_t kBlock = 2048;
  std::size_t n_blocks = static_cast<std::size_t>((n_intervals + kBlock - 1) / kBlock);
  std::vector<double> partial(n_blocks, 0.0);

  for_each_block(n_blocks, threads, [&](std::size_t blk) {
    std::uint64_t lo_n = first + static_cast<std::uint64_t>(blk) * kBlock;
    std::uint64_t hi_n = std::min(last, lo_n + kBlock - 1);
    kahan_sum acc;
    for (std::uint64_t n = lo_n; n <= hi_n; ++n) {
      double lo = std::max(a, static_cast<double>(n));
      double hi = std::min(b, static_cast<double>(n + 1));
      if (hi > lo) acc.add(piece_value(n, lo, hi));
    }
    partial[blk] = acc.value();
  });

  kahan_sum total;
  for (double v : partial) total.add(v);
  return total.value();
}

void check_window(const DeltaFunction& d, double t, double span) {
  require(t >= 1.0 && span * t <= d.n_max(), errc::range,
          "window [T, 2T] not contained in the tabulated domain");
}

}  // namespace

double moment_integral(const DeltaFunction& d, double t, int k, int threads) {
  require(k == 2 || k == 4, errc::argument, "moment_integral: k must be 2 or 4");
  check_window(d, t, 2.0);
  return reduce_pieces(t, 2.0 * t, threads, [&](std::uint64_t n, double lo, double hi) {
    return gl16(lo, hi, [&](double x) {
      double v = d.piece(n, x);
      double v2 = v * v;
      return k == 2 ? v2 : v2 * v2;
    });
  });
}

double weighted_moment_integral(const DeltaFunction& d, double t, double alpha, double y,
                                int threads) {
  require(t >= 1.0, errc::range, "weighted moment: T must be >= 1");
  require(y > 0.0, errc::argument, "weighted moment: y must be positive");
  double x_max = std::min(d.n_max(), 0.5 * y * std::log(1e16) + t);
  require(x_max > t, errc::range, "weighted moment: empty integration range");
  return reduce_pieces(t, x_max, threads, [&](std::uint64_t n, double lo, double hi) {
    return gl16(lo, hi, [&](double x) {
      double v = d.piece(n, x);
      return v * v * std::pow(x, -2.0 * alpha - 1.0) * std::exp(-2.0 * x / y);
    });
  });
}

SmoothedPowerResult smoothed_power_integral(double t, double y, cplx z) {
  require(t >= 1.0, errc::argument, "smoothed integral: T >= 1");
  require(y > 0.0, errc::argument, "smoothed integral: y > 0");
  require(z.real() >= 0.0 && z.real() <= 1.0, errc::argument,
          "smoothed integral: Re z in [0, 1]");

  double u_max = y * std::log(1e18);
  double rel = std::min(0.25, 0.5 * std::numbers::pi / std::max(1.0, std::fabs(z.imag())));
  cplx acc = 0.0;
  double u = t;
  while (u < u_max) {
    double step = std::min(rel * u, 0.25 * y);
    double hi = std::min(u_max, u + step);
    acc += gl32(u, hi, [&](double x) { return std::exp(-x / y) * std::exp(-z * std::log(x)); });
    u = hi;
  }

  SmoothedPowerResult res;
  res.value = acc;
  if (z == cplx(1.0, 0.0)) {
    res.degenerate = true;
    return res;
  }
  double logt = std::log(t);
  if (std::fabs(z.imag()) >= logt * logt)
    res.prediction = std::exp((1.0 - z) * logt) / (z - 1.0);
  return res;
}

namespace {

// Piecewise scan: samples h at the endpoints (one-sided limits) and 8
// interior points, brackets every strict sign change, and refines each
// crossing to 1e-9. Returns the measure of {h > 0} within [lo, hi].
template <typename H>
double positive_measure_on_piece(H&& h, double lo, double hi) {
  constexpr int kSamples = 10;
  double xs[kSamples], fs[kSamples];
  for (int i = 0; i < kSamples; ++i) {
    xs[i] = lo + (hi - lo) * i / (kSamples - 1);
    fs[i] = h(xs[i]);
  }
  double measure = 0.0;
  double seg_start = xs[0];
  bool positive = fs[0] > 0.0;
  for (int i = 1; i < kSamples; ++i) {
    bool pos_i = fs[i] > 0.0;
    if (pos_i != positive) {
      double cross = bisect(h, xs[i - 1], xs[i], fs[i - 1], 1e-9);
      if (positive) measure += cross - seg_start;
      seg_start = cross;
      positive = pos_i;
    }
  }
  if (positive) measure += xs[kSamples - 1] - seg_start;
  return measure;
}

}  // namespace

double measure_above(const DeltaFunction& d, double t, double lambda, const AlphaSpec& alpha,
                     Side side, int threads) {
  require(lambda >= 0.0, errc::argument, "measure_above: lambda must be >= 0");
  check_window(d, t, 2.0);
  double a = alpha.value_at(t);  // frozen across the window
  return reduce_pieces(t, 2.0 * t, threads, [&](std::uint64_t n, double lo, double hi) {
    auto h = [&](double x) {
      double v = d.piece(n, x);
      double bar = lambda * std::pow(x, a);
      switch (side) {
        case Side::plus: return v - bar;
        case Side::minus: return -v - bar;
        default: return std::fabs(v) - bar;
      }
    };
    return positive_measure_on_piece(h, lo, hi);
  });
}

std::vector<double> sign_changes(const DeltaFunction& d, double t1, double t2) {
  require(t1 >= 1.0 && t2 <= d.n_max() && t1 < t2, errc::range,
          "sign_changes: [T1, T2] not contained in the domain");
  std::vector<double> out;

  for_each_piece(t1, t2, [&](std::uint64_t n, double lo, double hi) {
    // jump crossing at the integer n when the one-sided limits straddle zero;
    // counted for integers in (T1, T2]
    double nd = static_cast<double>(n);
    if (nd == lo && nd > t1) {
      double left = d.table().prefix[n - 1] - d.main_eval(nd);
      double right = d.table().prefix[n] - d.main_eval(nd);
      bool crosses = (left < 0.0 && right >= 0.0) || (left > 0.0 && right <= 0.0) ||
                     (left <= 0.0 && right > 0.0) || (left >= 0.0 && right < 0.0);
      if (crosses && left != right) out.push_back(nd);
    }
    // interior crossings: strict sign changes of the smooth piece
    constexpr int kSamples = 10;
    double xs[kSamples], fs[kSamples];
    for (int i = 0; i < kSamples; ++i) {
      xs[i] = lo + (hi - lo) * i / (kSamples - 1);
      fs[i] = d.piece(n, xs[i]);
    }
    for (int i = 1; i < kSamples; ++i) {
      if (fs[i - 1] != 0.0 && fs[i] != 0.0 && (fs[i - 1] < 0.0) != (fs[i] < 0.0)) {
        auto f = [&](double x) { return d.piece(n, x); };
        out.push_back(bisect(f, xs[i - 1], xs[i], fs[i - 1], 1e-9));
      }
    }
  });
  // right-edge jump: t2 integral and the window closes exactly on it
  double t2f = std::floor(t2);
  if (t2 == t2f && t2 > t1) {
    auto n = static_cast<std::uint64_t>(t2f);
    double left = d.table().prefix[n - 1] - d.main_eval(t2);
    double right = d.table().prefix[n] - d.main_eval(t2);
    bool crosses = (left < 0.0 && right >= 0.0) || (left > 0.0 && right <= 0.0) ||
                   (left <= 0.0 && right > 0.0) || (left >= 0.0 && right < 0.0);
    if (crosses && left != right) out.push_back(t2);
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::fabs(x - y) < 1e-9; }),
            out.end());
  return out;
}

double max_scaled_deviation(const DeltaFunction& d, double t, double alpha) {
  check_window(d, t, 2.0);
  double best = 0.0;
  for_each_piece(t, 2.0 * t, [&](std::uint64_t n, double lo, double hi) {
    auto scaled = [&](double x) { return std::fabs(d.piece(n, x)) * std::pow(x, -alpha); };
    best = std::max(best, std::max(scaled(lo), scaled(hi)));
    // interior extremum of Delta x^-alpha: x M'(x) + alpha Delta(x) = 0
    auto g = [&](double x) { return x * d.main_deriv(x) + alpha * d.piece(n, x); };
    constexpr int kSamples = 10;
    double xs[kSamples], gs[kSamples];
    for (int i = 0; i < kSamples; ++i) {
      xs[i] = lo + (hi - lo) * i / (kSamples - 1);
      gs[i] = g(xs[i]);
    }
    for (int i = 1; i < kSamples; ++i) {
      if ((gs[i - 1] < 0.0) != (gs[i] < 0.0)) {
        double root = bisect(g, xs[i - 1], xs[i], gs[i - 1], 1e-9);
        best = std::max(best, scaled(root));
      }
    }
  });
  return best;
}

FluctuationReport omega_report(const DeltaFunction& d, double t, double lambda,
                               const AlphaSpec& alpha, int threads) {
  FluctuationReport r;
  r.t_min = t;
  r.t_max = 2.0 * t;
  r.lambda = lambda;
  r.alpha_value = alpha.value_at(t);
  r.moment2 = moment_integral(d, t, 2, threads);
  r.moment4 = moment_integral(d, t, 4, threads);
  r.measure_plus = measure_above(d, t, lambda, alpha, Side::plus, threads);
  r.measure_minus = measure_above(d, t, lambda, alpha, Side::minus, threads);
  r.measure_abs = measure_above(d, t, lambda, alpha, Side::abs, threads);
  r.sign_changes = sign_changes(d, t, 2.0 * t);
  r.max_scaled = max_scaled_deviation(d, t, r.alpha_value);
  r.threshold_lhs = r.measure_abs;
  r.threshold_rhs = 5.0 * (lambda * std::pow(2.5 * t, r.alpha_value)) *
                    std::pow(t, 1.0 - r.alpha_value);
  return r;
}

std::string FluctuationReport::csv_header() {
  return "T,lambda,alpha,moment2,moment4,measure_plus,measure_minus,measure_abs,"
         "n_sign_changes,max_scaled";
}

std::string FluctuationReport::csv_row() const {
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%zu,%.17g", t_min, lambda,
                alpha_value, moment2, moment4, measure_plus, measure_minus, measure_abs,
                sign_changes.size(), max_scaled);
  return buf;
}

std::string FluctuationReport::to_json() const {
  std::string out = "{";
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "\"T\":%.17g,\"T2\":%.17g,\"lambda\":%.17g,\"alpha\":%.17g,"
                "\"moment2\":%.17g,\"moment4\":%.17g,\"measure_plus\":%.17g,"
                "\"measure_minus\":%.17g,\"measure_abs\":%.17g,\"max_scaled\":%.17g,"
                "\"threshold_lhs\":%.17g,\"threshold_rhs\":%.17g,\"sign_changes\":[",
                t_min, t_max, lambda, alpha_value, moment2, moment4, measure_plus, measure_minus,
                measure_abs, max_scaled, threshold_lhs, threshold_rhs);
  out += buf;
  for (std::size_t i = 0; i < sign_changes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", sign_changes[i]);
    out += buf;
  }
  out += "]}";
  return out;
}

}  // namespace oscillab
