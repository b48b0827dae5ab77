#include "oscillab/oscillab.h"

#include <cstring>
#include <memory>
#include <string>

#include "core/delta.hpp"
#include "core/dirichlet.hpp"
#include "core/main_term.hpp"
#include "core/mellin.hpp"
#include "core/sequence.hpp"
#include "core/zeta.hpp"

using namespace oscillab;

struct osc_sequence {
  std::shared_ptr<const PrefixTable> prefix;
  ArithmeticSequence seq;
};
struct osc_app {
  ApplicationSpec spec;
};
struct osc_main_term {
  MainTermExpr expr;
};
struct osc_delta {
  DeltaFunction fn;
};
struct osc_contour {
  Contour contour;
  ApplicationSpec spec;  // the contour is validated against this application
};

namespace {

thread_local std::string t_last_error;

osc_status map_code(errc code) {
  switch (code) {
    case errc::ok: return OSC_OK;
    case errc::argument: return OSC_ERR_ARGUMENT;
    case errc::range: return OSC_ERR_RANGE;
    case errc::pole: return OSC_ERR_POLE;
    case errc::convergence: return OSC_ERR_CONVERGENCE;
    case errc::config: return OSC_ERR_CONFIG;
    case errc::eval: return OSC_ERR_EVAL;
    case errc::consistency: return OSC_ERR_CONSISTENCY;
    case errc::extrapolation: return OSC_ERR_EXTRAPOLATION;
    case errc::degenerate: return OSC_ERR_DEGENERATE;
    case errc::io: return OSC_ERR_IO;
    case errc::bad_magic: return OSC_ERR_BAD_MAGIC;
    case errc::bad_version: return OSC_ERR_BAD_VERSION;
    case errc::truncated: return OSC_ERR_TRUNCATED;
    case errc::mismatch: return OSC_ERR_MISMATCH;
  }
  return OSC_ERR_UNKNOWN;
}

template <typename Fn>
osc_status guarded(Fn&& fn) {
  try {
    fn();
    return OSC_OK;
  } catch (const error& e) {
    t_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return OSC_ERR_UNKNOWN;
  } catch (...) {
    t_last_error = "unknown failure";
    return OSC_ERR_UNKNOWN;
  }
}

osc_status require_handle(const void* p) {
  if (p) return OSC_OK;
  t_last_error = "null handle";
  return OSC_ERR_ARGUMENT;
}

osc_status fill_string(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf) return OSC_OK;
  if (cap < s.size() + 1) {
    t_last_error = "buffer too small";
    return OSC_ERR_RANGE;
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return OSC_OK;
}

AlphaSpec make_alpha(osc_alpha_mode mode, double param) {
  return mode == OSC_ALPHA_CONSTANT ? AlphaSpec::constant(param) : AlphaSpec::shrinking(param);
}

}  // namespace

extern "C" {

const char* osc_version(void) { return "1.0.0"; }

const char* osc_status_name(osc_status status) {
  switch (status) {
    case OSC_OK: return "ok";
    case OSC_ERR_ARGUMENT: return "argument";
    case OSC_ERR_RANGE: return "range";
    case OSC_ERR_POLE: return "pole";
    case OSC_ERR_CONVERGENCE: return "convergence";
    case OSC_ERR_CONFIG: return "config";
    case OSC_ERR_EVAL: return "eval";
    case OSC_ERR_CONSISTENCY: return "consistency";
    case OSC_ERR_EXTRAPOLATION: return "extrapolation";
    case OSC_ERR_DEGENERATE: return "degenerate";
    case OSC_ERR_IO: return "io";
    case OSC_ERR_BAD_MAGIC: return "bad_magic";
    case OSC_ERR_BAD_VERSION: return "bad_version";
    case OSC_ERR_TRUNCATED: return "truncated";
    case OSC_ERR_MISMATCH: return "mismatch";
    default: return "unknown";
  }
}

const char* osc_last_error(void) { return t_last_error.c_str(); }

/* --- sequences ---------------------------------------------------------- */

osc_status osc_sieve(osc_kind kind, double theta, uint64_t n_max, int threads,
                     osc_sequence** out) {
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    auto h = std::make_unique<osc_sequence>();
    h->seq = sieve(static_cast<SequenceKind>(kind), theta, n_max, threads);
    h->prefix = std::make_shared<const PrefixTable>(build_prefix(h->seq));
    *out = h.release();
  });
}

void osc_sequence_free(osc_sequence* seq) { delete seq; }

osc_status osc_sequence_info(const osc_sequence* seq, osc_kind* kind, double* theta,
                             uint64_t* n_max) {
  if (auto st = require_handle(seq)) return st;
  if (kind) *kind = static_cast<osc_kind>(seq->seq.kind);
  if (theta) *theta = seq->seq.theta;
  if (n_max) *n_max = seq->seq.n_max;
  return OSC_OK;
}

osc_status osc_sequence_value(const osc_sequence* seq, uint64_t n, double* out) {
  if (auto st = require_handle(seq)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    require(n >= 1 && n <= seq->seq.n_max, errc::range, "sequence value: n outside [1, n_max]");
    *out = seq->seq.values[n];
  });
}

osc_status osc_prefix_star(const osc_sequence* seq, double x, double* out) {
  if (auto st = require_handle(seq)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = seq->prefix->star(x); });
}

osc_status osc_sequence_save(const osc_sequence* seq, const char* path) {
  if (auto st = require_handle(seq)) return st;
  if (auto st = require_handle(path)) return st;
  return guarded([&] { cache_store(seq->seq, path); });
}

osc_status osc_sequence_load(const char* path, osc_sequence** out) {
  if (auto st = require_handle(path)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    auto h = std::make_unique<osc_sequence>();
    h->seq = cache_load(path);
    h->prefix = std::make_shared<const PrefixTable>(build_prefix(h->seq));
    *out = h.release();
  });
}

osc_status osc_sequence_load_typed(const char* path, osc_kind kind, double theta,
                                   osc_sequence** out) {
  if (auto st = require_handle(path)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    auto h = std::make_unique<osc_sequence>();
    h->seq = cache_load_typed(path, static_cast<SequenceKind>(kind), theta);
    h->prefix = std::make_shared<const PrefixTable>(build_prefix(h->seq));
    *out = h.release();
  });
}

/* --- zeta and Dirichlet series ------------------------------------------ */

osc_status osc_zeta(double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    cplx v = zeta({re, im});
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

osc_status osc_zeta_prime(double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    cplx v = zeta_prime({re, im});
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

osc_status osc_app_create(osc_kind kind, double theta, osc_app** out) {
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    auto h = std::make_unique<osc_app>();
    h->spec = ApplicationSpec::make(static_cast<SequenceKind>(kind), theta);
    *out = h.release();
  });
}

void osc_app_free(osc_app* app) { delete app; }

osc_status osc_app_strip(const osc_app* app, double* sigma1, double* sigma2, double* sigma3) {
  if (auto st = require_handle(app)) return st;
  if (sigma1) *sigma1 = app->spec.sigma1;
  if (sigma2) *sigma2 = app->spec.sigma2;
  if (sigma3) *sigma3 = app->spec.sigma3;
  return OSC_OK;
}

osc_status osc_dirichlet_d(const osc_app* app, double re, double im, double* out_re,
                           double* out_im) {
  if (auto st = require_handle(app)) return st;
  return guarded([&] {
    cplx v = app->spec.dirichlet_d({re, im});
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

/* --- main terms ---------------------------------------------------------- */

osc_status osc_main_term_closed_form(const osc_app* app, osc_main_term** out) {
  if (auto st = require_handle(app)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = new osc_main_term{closed_form_main_term(app->spec)}; });
}

osc_status osc_main_term_from_poles(const osc_app* app, osc_main_term** out) {
  if (auto st = require_handle(app)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = new osc_main_term{main_term_from_poles(app->spec)}; });
}

void osc_main_term_free(osc_main_term* mt) { delete mt; }

osc_status osc_main_term_eval(const osc_main_term* mt, double x, double* out) {
  if (auto st = require_handle(mt)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = mt->expr.eval(x); });
}

osc_status osc_main_term_count(const osc_main_term* mt, size_t* out) {
  if (auto st = require_handle(mt)) return st;
  if (auto st = require_handle(out)) return st;
  *out = mt->expr.terms.size();
  return OSC_OK;
}

osc_status osc_main_term_term(const osc_main_term* mt, size_t index, double* coeff_re,
                              double* coeff_im, double* exp_re, double* exp_im, int* log_power) {
  if (auto st = require_handle(mt)) return st;
  return guarded([&] {
    require(index < mt->expr.terms.size(), errc::range, "main term index out of range");
    const auto& t = mt->expr.terms[index];
    if (coeff_re) *coeff_re = t.coeff.real();
    if (coeff_im) *coeff_im = t.coeff.imag();
    if (exp_re) *exp_re = t.exponent.real();
    if (exp_im) *exp_im = t.exponent.imag();
    if (log_power) *log_power = t.log_power;
  });
}

osc_status osc_main_term_json(const osc_main_term* mt, char* buf, size_t cap, size_t* needed) {
  if (auto st = require_handle(mt)) return st;
  return fill_string(mt->expr.to_json(), buf, cap, needed);
}

osc_status osc_main_term_oscillation(const osc_main_term* mt, double* amplitude, double* phase) {
  if (auto st = require_handle(mt)) return st;
  double amp = 0.0, ph = 0.0;
  if (!mt->expr.oscillatory_part(&amp, &ph)) {
    t_last_error = "expression has no oscillatory pair";
    return OSC_ERR_RANGE;
  }
  if (amplitude) *amplitude = amp;
  if (phase) *phase = ph;
  return OSC_OK;
}

/* --- error term analysis -------------------------------------------------- */

osc_status osc_delta_create(const osc_sequence* seq, const osc_main_term* mt, osc_delta** out) {
  if (auto st = require_handle(seq)) return st;
  if (auto st = require_handle(mt)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = new osc_delta{DeltaFunction(seq->prefix, mt->expr)}; });
}

void osc_delta_free(osc_delta* d) { delete d; }

osc_status osc_delta_at(const osc_delta* d, double x, double* out) {
  if (auto st = require_handle(d)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = d->fn.at(x); });
}

osc_status osc_moment(const osc_delta* d, double t, int k, int threads, double* out) {
  if (auto st = require_handle(d)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = moment_integral(d->fn, t, k, threads); });
}

osc_status osc_weighted_moment(const osc_delta* d, double t, double alpha, double y, int threads,
                               double* out) {
  if (auto st = require_handle(d)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = weighted_moment_integral(d->fn, t, alpha, y, threads); });
}

osc_status osc_smoothed_power_integral(double t, double y, double z_re, double z_im,
                                       double* out_re, double* out_im, double* pred_re,
                                       double* pred_im, int* has_prediction) {
  osc_status st = guarded([&] {
    SmoothedPowerResult r = smoothed_power_integral(t, y, {z_re, z_im});
    if (out_re) *out_re = r.value.real();
    if (out_im) *out_im = r.value.imag();
    if (has_prediction) *has_prediction = r.prediction.has_value() ? 1 : 0;
    if (r.prediction) {
      if (pred_re) *pred_re = r.prediction->real();
      if (pred_im) *pred_im = r.prediction->imag();
    }
    if (r.degenerate) fail(errc::degenerate, "prediction undefined at z = 1");
  });
  return st;
}

osc_status osc_measure_above(const osc_delta* d, double t, double lambda, osc_alpha_mode mode,
                             double alpha_param, osc_side side, int threads, double* out) {
  if (auto st = require_handle(d)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    *out = measure_above(d->fn, t, lambda, make_alpha(mode, alpha_param),
                         static_cast<Side>(side), threads);
  });
}

osc_status osc_sign_changes(const osc_delta* d, double t1, double t2, double* buf, size_t cap,
                            size_t* count) {
  if (auto st = require_handle(d)) return st;
  return guarded([&] {
    std::vector<double> xs = sign_changes(d->fn, t1, t2);
    if (count) *count = xs.size();
    if (buf) {
      require(cap >= xs.size(), errc::range, "sign_changes: buffer too small");
      std::memcpy(buf, xs.data(), xs.size() * sizeof(double));
    }
  });
}

osc_status osc_omega_report(const osc_delta* d, double t, double lambda, osc_alpha_mode mode,
                            double alpha_param, int threads, osc_report* out) {
  if (auto st = require_handle(d)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    FluctuationReport r = omega_report(d->fn, t, lambda, make_alpha(mode, alpha_param), threads);
    out->t_min = r.t_min;
    out->t_max = r.t_max;
    out->lambda = r.lambda;
    out->alpha = r.alpha_value;
    out->moment2 = r.moment2;
    out->moment4 = r.moment4;
    out->measure_plus = r.measure_plus;
    out->measure_minus = r.measure_minus;
    out->measure_abs = r.measure_abs;
    out->n_sign_changes = r.sign_changes.size();
    out->max_scaled = r.max_scaled;
    out->threshold_lhs = r.threshold_lhs;
    out->threshold_rhs = r.threshold_rhs;
  });
}

osc_status osc_report_csv_header(char* buf, size_t cap, size_t* needed) {
  return fill_string(FluctuationReport::csv_header(), buf, cap, needed);
}

osc_status osc_report_csv_row(const osc_report* report, char* buf, size_t cap, size_t* needed) {
  if (auto st = require_handle(report)) return st;
  FluctuationReport r;
  r.t_min = report->t_min;
  r.lambda = report->lambda;
  r.alpha_value = report->alpha;
  r.moment2 = report->moment2;
  r.moment4 = report->moment4;
  r.measure_plus = report->measure_plus;
  r.measure_minus = report->measure_minus;
  r.measure_abs = report->measure_abs;
  r.sign_changes.resize(report->n_sign_changes);
  r.max_scaled = report->max_scaled;
  return fill_string(r.csv_row(), buf, cap, needed);
}

osc_status osc_report_json(const osc_delta* d, const osc_report* report, char* buf, size_t cap,
                           size_t* needed) {
  if (auto st = require_handle(d)) return st;
  if (auto st = require_handle(report)) return st;
  return guarded([&] {
    FluctuationReport r;
    r.t_min = report->t_min;
    r.t_max = report->t_max;
    r.lambda = report->lambda;
    r.alpha_value = report->alpha;
    r.moment2 = report->moment2;
    r.moment4 = report->moment4;
    r.measure_plus = report->measure_plus;
    r.measure_minus = report->measure_minus;
    r.measure_abs = report->measure_abs;
    r.sign_changes = sign_changes(d->fn, report->t_min, report->t_max);
    r.max_scaled = report->max_scaled;
    r.threshold_lhs = report->threshold_lhs;
    r.threshold_rhs = report->threshold_rhs;
    osc_status st = fill_string(r.to_json(), buf, cap, needed);
    if (st != OSC_OK) fail(errc::range, "report json: buffer too small");
  });
}

/* --- Mellin / Perron ------------------------------------------------------ */

osc_status osc_contour_create(const osc_app* app, double sigma3, double t0, double height,
                              osc_contour** out) {
  if (auto st = require_handle(app)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    Contour c = Contour::for_app(app->spec);
    if (sigma3 > 0.0) c.sigma3 = sigma3;
    if (t0 > 0.0) c.t0 = t0;
    if (height > 0.0) c.height = height;
    c.validate(app->spec);
    *out = new osc_contour{c, app->spec};
  });
}

void osc_contour_free(osc_contour* c) { delete c; }

osc_status osc_mellin_direct(const osc_app* app, const osc_delta* d, double s_re, double s_im,
                             double x_max, int threads, double* out_re, double* out_im,
                             double* tail_bound) {
  if (auto st = require_handle(app)) return st;
  if (auto st = require_handle(d)) return st;
  return guarded([&] {
    MellinValue v = mellin_direct(app->spec, d->fn, {s_re, s_im}, x_max, threads);
    if (out_re) *out_re = v.value.real();
    if (out_im) *out_im = v.value.imag();
    if (tail_bound) *tail_bound = v.tail_bound;
  });
}

osc_status osc_mellin_contour(const osc_app* app, const osc_contour* c, double s_re, double s_im,
                              int threads, double* out_re, double* out_im, double* tail_bound) {
  if (auto st = require_handle(app)) return st;
  if (auto st = require_handle(c)) return st;
  return guarded([&] {
    MellinValue v = mellin_contour(app->spec, c->contour, {s_re, s_im}, threads);
    if (out_re) *out_re = v.value.real();
    if (out_im) *out_im = v.value.imag();
    if (tail_bound) *tail_bound = v.tail_bound;
  });
}

osc_status osc_perron(const osc_app* app, double x, double line_sigma, double height, int threads,
                      double* out) {
  if (auto st = require_handle(app)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] { *out = perron_truncated(app->spec, x, line_sigma, height, threads); });
}

osc_status osc_pole_strength(const osc_app* app, const osc_contour* c, double sigma0, double t0,
                             int threads, osc_pole_strength* out) {
  if (auto st = require_handle(app)) return st;
  if (auto st = require_handle(c)) return st;
  if (auto st = require_handle(out)) return st;
  return guarded([&] {
    PoleStrength r = pole_strength(app->spec, c->contour, sigma0, t0, threads);
    out->extrapolated = r.extrapolated;
    out->converged = r.converged ? 1 : 0;
    out->has_residue_estimate = r.residue_estimate.has_value() ? 1 : 0;
    out->residue_estimate = r.residue_estimate.value_or(0.0);
    out->n_probes = static_cast<int>(r.probes.size());
    for (std::size_t i = 0; i < r.probes.size() && i < 16; ++i) {
      out->probe_offset[i] = r.probes[i].sigma_offset;
      out->probe_abs_a[i] = r.probes[i].abs_a;
      out->probe_scaled[i] = r.probes[i].scaled;
    }
    if (!r.converged) fail(errc::extrapolation, "pole_strength: probe sequence did not settle");
  });
}

}  // extern "C"
