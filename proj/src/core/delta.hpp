#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/main_term.hpp"
#include "core/sequence.hpp"

namespace oscillab {

// Threshold exponent: either a constant alpha0 or the slowly shrinking form
// 3/8 - c / (log T)^{1/8}, frozen per window at its left endpoint.
struct AlphaSpec {
  enum class Mode { constant, shrinking };
  Mode mode = Mode::constant;
  double alpha0 = 0.25;
  double c = 0.1;

  double value_at(double t) const;
  static AlphaSpec constant(double a) { return {Mode::constant, a, 0.0}; }
  static AlphaSpec shrinking(double c) { return {Mode::shrinking, 0.0, c}; }
};

enum class Side { plus, minus, abs };

// Delta(x) = star-sum up to x minus the main term; exact piecewise-smooth
// function of the tabulated prefix sums.
class DeltaFunction {
public:
  DeltaFunction(std::shared_ptr<const PrefixTable> table, MainTermExpr main)
      : table_(std::move(table)), main_(std::move(main)) {}

  double at(double x) const;
  double n_max() const { return static_cast<double>(table_->n_max); }
  const MainTermExpr& main() const { return main_; }
  const PrefixTable& table() const { return *table_; }

  // value on the open interval (n, n+1)
  double piece(std::uint64_t n, double x) const { return table_->prefix[n] - main_eval(x); }
  double main_eval(double x) const;
  double main_deriv(double x) const;

private:
  std::shared_ptr<const PrefixTable> table_;
  MainTermExpr main_;
};

struct FluctuationReport {
  double t_min = 0.0, t_max = 0.0;
  double lambda = 0.0;
  double alpha_value = 0.0;
  double moment2 = 0.0, moment4 = 0.0;
  double measure_plus = 0.0, measure_minus = 0.0, measure_abs = 0.0;
  std::vector<double> sign_changes;
  double max_scaled = 0.0;
  // both sides of the sign-change threshold comparison; interpretation is
  // left to the reader
  double threshold_lhs = 0.0, threshold_rhs = 0.0;

  static std::string csv_header();
  std::string csv_row() const;
  std::string to_json() const;
};

// integral_T^{2T} Delta^k, k in {2, 4}; per-unit-interval 16-node quadrature.
double moment_integral(const DeltaFunction& d, double t, int k, int threads = 0);

// integral_{T}^{X_max} Delta^2 x^{-2 alpha - 1} e^{-2x/y}.
double weighted_moment_integral(const DeltaFunction& d, double t, double alpha, double y,
                                int threads = 0);

struct SmoothedPowerResult {
  cplx value;
  std::optional<cplx> prediction;  // T^{1-z}/(z-1), when |Im z| >= log^2 T
  bool degenerate = false;         // z = 1: no prediction exists
};
SmoothedPowerResult smoothed_power_integral(double t, double y, cplx z);

double measure_above(const DeltaFunction& d, double t, double lambda, const AlphaSpec& alpha,
                     Side side, int threads = 0);

std::vector<double> sign_changes(const DeltaFunction& d, double t1, double t2);

double max_scaled_deviation(const DeltaFunction& d, double t, double alpha);

FluctuationReport omega_report(const DeltaFunction& d, double t, double lambda,
                               const AlphaSpec& alpha, int threads = 0);

}  // namespace oscillab
