#include "stripwin/stripwin.h"

#include <cmath>
#include <new>
#include <string>

#include "stripwin/coefficients.hpp"
#include "stripwin/errors.hpp"
#include "stripwin/fdoracle.hpp"
#include "stripwin/matching.hpp"
#include "stripwin/modal.hpp"
#include "stripwin/resonance.hpp"
#include "stripwin/spectrum.hpp"
#include "stripwin/thresholds.hpp"

using namespace stripwin;

struct stripwin_thresholds {
  std::vector<ThresholdRecord> records;
};
struct stripwin_spectrum {
  SpectrumResult result;
};
struct stripwin_field {
  ResonanceField field;
};
struct stripwin_report {
  FitReport report;
};

namespace {

thread_local std::string last_error;

template <class Fn>
stripwin_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return STRIPWIN_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<stripwin_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return STRIPWIN_ERR_INTERNAL;
}

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::config, std::string(what) + " must not be NULL");
}

Parity parity_arg(int p) {
  if (p != STRIPWIN_EVEN && p != STRIPWIN_ODD) fail(ErrorCode::config, "parity must be 0 or 1");
  return p == STRIPWIN_EVEN ? Parity::even : Parity::odd;
}

int parity_out(Parity p) { return p == Parity::even ? STRIPWIN_EVEN : STRIPWIN_ODD; }

Truncation truncation_arg(stripwin_truncation t) { return {t.modes, t.levels}; }

stripwin_point point_out(const SpectralPoint& p) {
  return {p.index, parity_out(p.parity), p.a, p.eps, p.lambda, p.m};
}

std::vector<double> to_vector(const double* v, size_t count) {
  if (count > 0) require(v, "grid");
  return std::vector<double>(v, v + count);
}

EdgeMethod method_arg(int m) {
  if (m == STRIPWIN_EDGE_ARC) return EdgeMethod::arc;
  if (m == STRIPWIN_EDGE_RAY) return EdgeMethod::ray;
  fail(ErrorCode::config, "unknown corner-fit method");
}

}  // namespace

extern "C" {

const char* stripwin_version(void) { return STRIPWIN_VERSION_STRING; }
const char* stripwin_last_error(void) { return last_error.c_str(); }

const char* stripwin_status_name(stripwin_status status) {
  if (status == STRIPWIN_OK) return "ok";
  if (status == STRIPWIN_ERR_INTERNAL) return "internal";
  return to_string(static_cast<ErrorCode>(status));
}

stripwin_truncation stripwin_default_truncation(void) {
  const Truncation t{};
  return {t.modes, t.levels};
}

stripwin_status stripwin_normalize(double d, double a, double* a_norm, double* scale) {
  return guarded([&] {
    require(a_norm, "a_norm");
    require(scale, "scale");
    const auto n = normalize({d, a});
    *a_norm = n.a;
    *scale = n.scale;
  });
}

stripwin_status stripwin_chi(int j, double x2, double d, double* value) {
  return guarded([&] {
    require(value, "value");
    *value = chi(j, x2, d);
  });
}

stripwin_status stripwin_phi(int k, double x2, double d, double* value) {
  return guarded([&] {
    require(value, "value");
    *value = phi(k, x2, d);
  });
}

stripwin_status stripwin_overlap(int j, int k, double* value) {
  return guarded([&] {
    require(value, "value");
    *value = overlap(j, k);
  });
}

stripwin_status stripwin_regularized_det(double a, double eps, int parity, int modes, int* sign,
                                         double* log_abs) {
  return guarded([&] {
    require(sign, "sign");
    require(log_abs, "log_abs");
    const auto d = regularized_det(a, eps, parity_arg(parity), modes);
    *sign = d.sign;
    *log_abs = d.log_abs;
  });
}

stripwin_status stripwin_smallest_singular(double a, double eps, int parity, int modes,
                                           double* ratio) {
  return guarded([&] {
    require(ratio, "ratio");
    *ratio = MatchingSystem(parity_arg(parity), modes).singular_values(a, eps).ratio();
  });
}

stripwin_threshold_options stripwin_default_threshold_options(void) {
  const ThresholdOptions o{};
  return {o.scan_points, o.tol, o.check_doubling ? 1 : 0, o.stability_tol};
}

stripwin_status stripwin_threshold_table(int n_max, stripwin_truncation t,
                                         const stripwin_threshold_options* options,
                                         stripwin_thresholds** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    ThresholdOptions o{};
    if (options) {
      o.scan_points = options->scan_points;
      o.tol = options->tol;
      o.check_doubling = options->check_doubling != 0;
      o.stability_tol = options->stability_tol;
    }
    if (o.scan_points < 2 || !(o.tol > 0.0)) fail(ErrorCode::config, "invalid threshold options");
    auto table = threshold_table(n_max, truncation_arg(t), o);
    *out = new stripwin_thresholds{std::move(table)};
  });
}

size_t stripwin_thresholds_count(const stripwin_thresholds* table) {
  return table ? table->records.size() : 0;
}

stripwin_status stripwin_thresholds_get(const stripwin_thresholds* table, size_t i,
                                        stripwin_threshold* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    if (i >= table->records.size()) fail(ErrorCode::config, "threshold index out of range");
    const auto& r = table->records[i];
    *out = {r.n, parity_out(r.parity), r.a_n, r.residual, r.bracket_lo, r.bracket_hi, r.modes};
  });
}

void stripwin_thresholds_free(stripwin_thresholds* table) { delete table; }

stripwin_status stripwin_spectrum_compute(double a, stripwin_truncation t,
                                          stripwin_spectrum** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto r = full_spectrum(a, truncation_arg(t));
    *out = new stripwin_spectrum{std::move(r)};
  });
}

size_t stripwin_spectrum_count(const stripwin_spectrum* s) {
  return s ? s->result.points.size() : 0;
}

stripwin_status stripwin_spectrum_get(const stripwin_spectrum* s, size_t i, stripwin_point* out) {
  return guarded([&] {
    require(s, "spectrum");
    require(out, "out");
    if (i >= s->result.points.size()) fail(ErrorCode::config, "spectrum index out of range");
    *out = point_out(s->result.points[i]);
  });
}

void stripwin_spectrum_free(stripwin_spectrum* s) { delete s; }

stripwin_status stripwin_eigenvalue(int n, double a, stripwin_truncation t, stripwin_point* out) {
  return guarded([&] {
    require(out, "out");
    *out = point_out(eigenvalue(n, a, truncation_arg(t)));
  });
}

stripwin_status stripwin_field_threshold(int n, int modes, stripwin_field** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new stripwin_field{threshold_resonance(n, modes)};
  });
}

stripwin_status stripwin_field_bound(int n, double a, int modes, stripwin_field** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new stripwin_field{bound_state_field(n, a, modes)};
  });
}

stripwin_status stripwin_field_info_get(const stripwin_field* f, stripwin_field_info* out) {
  return guarded([&] {
    require(f, "field");
    require(out, "out");
    const auto& x = f->field;
    *out = {x.n,     parity_out(x.parity), x.a_ref, x.eps, x.c1, x.modes, x.kernel_residual,
            accuracy_radius(x.modes)};
  });
}

stripwin_status stripwin_field_window_coefficients(const stripwin_field* f, double* out,
                                                   size_t capacity) {
  return guarded([&] {
    require(f, "field");
    require(out, "out");
    const auto& b = f->field.b;
    if (capacity < static_cast<size_t>(b.size())) fail(ErrorCode::config, "buffer too small");
    for (Eigen::Index i = 0; i < b.size(); ++i) out[i] = b(i);
  });
}

stripwin_status stripwin_field_eval(const stripwin_field* f, double x1, double x2, int side,
                                    double* value, int* warning) {
  return guarded([&] {
    require(f, "field");
    require(value, "value");
    if (side == STRIPWIN_SIDE_AUTO) {
      const auto v = eval_field(f->field, x1, x2);
      *value = v.value;
      if (warning) *warning = v.accuracy_warning ? 1 : 0;
      return;
    }
    if (side != STRIPWIN_SIDE_INSIDE && side != STRIPWIN_SIDE_OUTSIDE)
      fail(ErrorCode::config, "unknown series side");
    *value = side == STRIPWIN_SIDE_INSIDE ? eval_inside(f->field, x1, x2)
                                          : eval_outside(f->field, x1, x2);
    if (warning)
      *warning = std::hypot(x1 - f->field.a_ref, x2) < accuracy_radius(f->field.modes) ? 1 : 0;
  });
}

stripwin_status stripwin_field_edge(const stripwin_field* f, const double* radii, size_t count,
                                    int method, stripwin_edge_fit* out) {
  return guarded([&] {
    require(f, "field");
    require(out, "out");
    const auto fit = edge_coefficient(f->field, to_vector(radii, count), method_arg(method));
    *out = {fit.alpha, fit.stderr_alpha, fit.relative_residual, fit.accuracy_warning ? 1 : 0};
  });
}

stripwin_status stripwin_field_mu(const stripwin_field* f, double* mu) {
  return guarded([&] {
    require(f, "field");
    require(mu, "mu");
    *mu = mu_from_integral(f->field);
  });
}

void stripwin_field_free(stripwin_field* f) { delete f; }

stripwin_mu_options stripwin_default_mu_options(void) {
  const MuOptions o{};
  return {{o.truncation.modes, o.truncation.levels}, o.field_modes, STRIPWIN_EDGE_ARC, 0.02, 0.25,
          static_cast<int>(o.radii.size())};
}

stripwin_status stripwin_mu(int n, const stripwin_mu_options* options, stripwin_mu_report* out) {
  return guarded([&] {
    require(out, "out");
    const stripwin_mu_options o = options ? *options : stripwin_default_mu_options();
    MuOptions m;
    m.truncation = truncation_arg(o.truncation);
    m.field_modes = o.field_modes;
    m.method = method_arg(o.method);
    m.radii = corner_radii(o.radius_lo, o.radius_hi, o.radius_count);
    const auto r = mu_report(n, m);
    *out = {r.n,        r.a_n,      r.mu_integral, r.alpha, r.alpha_stderr,
            r.mu_alpha, r.rel_diff, r.modes,       r.accuracy_warning ? 1 : 0};
  });
}

stripwin_status stripwin_verify_quadratic(int n, double a_n, double mu_ref, const double* eps,
                                          size_t count, stripwin_truncation t,
                                          stripwin_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    LawOptions o;
    o.truncation = truncation_arg(t);
    *out = new stripwin_report{verify_quadratic_law(n, a_n, mu_ref, to_vector(eps, count), o)};
  });
}

stripwin_status stripwin_verify_decay(int n, double a_n, double mu_ref, const double* eps,
                                      size_t count, stripwin_truncation t,
                                      stripwin_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    LawOptions o;
    o.truncation = truncation_arg(t);
    *out = new stripwin_report{verify_decay_law(n, a_n, mu_ref, to_vector(eps, count), o)};
  });
}

stripwin_status stripwin_verify_popov(const double* a, size_t count, stripwin_truncation t,
                                      stripwin_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    PopovOptions o;
    o.truncation = truncation_arg(t);
    *out = new stripwin_report{verify_popov(to_vector(a, count), o)};
  });
}

stripwin_status stripwin_verify_convergence(int n, const double* eps, size_t count, int modes,
                                            stripwin_report** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new stripwin_report{verify_eigenfunction_convergence(n, to_vector(eps, count), modes)};
  });
}

const char* stripwin_report_model(const stripwin_report* r) {
  return r ? r->report.model.c_str() : "";
}
double stripwin_report_residual_norm(const stripwin_report* r) {
  return r ? r->report.residual_norm : NAN;
}
int stripwin_report_passed(const stripwin_report* r) { return r && r->report.passed() ? 1 : 0; }
size_t stripwin_report_coefficient_count(const stripwin_report* r) {
  return r ? r->report.coefficients.size() : 0;
}

stripwin_status stripwin_report_coefficient(const stripwin_report* r, size_t i, const char** name,
                                            double* value) {
  return guarded([&] {
    require(r, "report");
    if (i >= r->report.coefficients.size()) fail(ErrorCode::config, "coefficient out of range");
    if (name) *name = r->report.coefficients[i].first.c_str();
    if (value) *value = r->report.coefficients[i].second;
  });
}

size_t stripwin_report_sample_count(const stripwin_report* r) {
  return r ? r->report.sample.size() : 0;
}

stripwin_status stripwin_report_sample(const stripwin_report* r, size_t i, double* input,
                                       double* observed, double* predicted) {
  return guarded([&] {
    require(r, "report");
    if (i >= r->report.sample.size()) fail(ErrorCode::config, "sample out of range");
    const auto& s = r->report.sample[i];
    if (input) *input = s.input;
    if (observed) *observed = s.observed;
    if (predicted) *predicted = s.predicted;
  });
}

size_t stripwin_report_check_count(const stripwin_report* r) {
  return r ? r->report.checks.size() : 0;
}

stripwin_status stripwin_report_check(const stripwin_report* r, size_t i, stripwin_check* out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    if (i >= r->report.checks.size()) fail(ErrorCode::config, "check out of range");
    const auto& c = r->report.checks[i];
    *out = {c.name.c_str(), c.passed ? 1 : 0, c.value, c.limit, c.detail.c_str()};
  });
}

size_t stripwin_report_note_count(const stripwin_report* r) {
  return r ? r->report.notes.size() : 0;
}

const char* stripwin_report_note(const stripwin_report* r, size_t i) {
  if (!r || i >= r->report.notes.size()) return "";
  return r->report.notes[i].c_str();
}

void stripwin_report_free(stripwin_report* r) { delete r; }

stripwin_status stripwin_fd_eigenvalues(const stripwin_fd_config* cfg, double* out,
                                        size_t capacity, int* truncation_warning) {
  return guarded([&] {
    require(cfg, "cfg");
    require(out, "out");
    const auto r = fd_eigenvalues(
        {cfg->a, parity_arg(cfg->parity), cfg->L, cfg->h, cfg->count, NAN, cfg->estimate});
    for (size_t i = 0; i < r.eigenvalues.size() && i < capacity; ++i) out[i] = r.eigenvalues[i];
    if (truncation_warning) *truncation_warning = r.truncation_warning ? 1 : 0;
  });
}

stripwin_oracle_options stripwin_default_oracle_options(void) {
  const OracleOptions o{};
  return {o.base_cells, o.levels, o.decay_lengths, o.max_length};
}

stripwin_status stripwin_fd_oracle(double a, int parity, int rank,
                                   const stripwin_oracle_options* options,
                                   stripwin_oracle_result* out) {
  return guarded([&] {
    require(out, "out");
    OracleOptions o{};
    if (options) {
      o.base_cells = options->base_cells;
      o.levels = options->levels;
      o.decay_lengths = options->decay_lengths;
      o.max_length = options->max_length;
    }
    if (o.levels > 8) fail(ErrorCode::config, "at most 8 oracle levels");
    const auto e = fd_oracle(a, parity_arg(parity), rank, o);
    *out = {};
    out->a = e.a;
    out->parity = parity_out(e.parity);
    out->rank = e.rank;
    out->L = e.L;
    out->extrapolated = e.extrapolated;
    out->order1 = e.order1;
    out->levels = static_cast<int>(e.lambda.size());
    for (size_t i = 0; i < e.lambda.size(); ++i) {
      out->h[i] = e.h[i];
      out->lambda[i] = e.lambda[i];
    }
    out->truncation_warning = e.truncation_warning ? 1 : 0;
  });
}

double stripwin_richardson(double lam_h, double lam_h2, double order) {
  if (!(order > 0.0)) return NAN;
  return richardson(lam_h, lam_h2, order);
}

}  // extern "C"
