#include "latquant/latquant.h"

#include <cstring>
#include <memory>
#include <string>

#include "core/bounds.hpp"
#include "core/catalog.hpp"
#include "core/compose.hpp"
#include "core/decode.hpp"
#include "core/error.hpp"
#include "core/estimate.hpp"
#include "core/experiments.hpp"
#include "core/matrix.hpp"
#include "core/table_data.hpp"

struct lq_lattice {
  std::shared_ptr<const latq::Lattice> impl;
  std::string decoder_tag;
};

namespace {

thread_local std::string g_last_error;

lq_status map_errc(latq::Errc c) {
  using latq::Errc;
  switch (c) {
    case Errc::invalid_argument: return LQ_ERR_INVALID_ARG;
    case Errc::unknown_lattice: return LQ_ERR_UNKNOWN_LATTICE;
    case Errc::no_generator: return LQ_ERR_NO_GENERATOR;
    case Errc::no_decoder: return LQ_ERR_NO_DECODER;
    case Errc::singular_matrix: return LQ_ERR_SINGULAR;
    case Errc::dimension_mismatch: return LQ_ERR_DIMENSION;
    case Errc::search_budget: return LQ_ERR_SEARCH_BUDGET;
    case Errc::parse_error: return LQ_ERR_PARSE;
    case Errc::io_error: return LQ_ERR_IO;
    case Errc::inconsistent_moments: return LQ_ERR_INCONSISTENT;
  }
  return LQ_ERR_INTERNAL;
}

template <typename F>
lq_status wrap(F&& f) {
  try {
    f();
    return LQ_OK;
  } catch (const latq::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LQ_ERR_INTERNAL;
  }
}

lq_status bad_arg(const char* msg) {
  g_last_error = msg;
  return LQ_ERR_INVALID_ARG;
}

void copy_str(char* dst, std::size_t cap, const std::string& src) {
  std::size_t len = std::min(cap - 1, src.size());
  std::memcpy(dst, src.data(), len);
  dst[len] = '\0';
}

latq::EstimateOptions to_opts(const lq_estimate_opts* o) {
  latq::EstimateOptions opts;
  if (o) {
    opts.samples = o->samples;
    opts.seed = o->seed;
    opts.threads = o->threads;
  }
  return opts;
}

void fill_report(const latq::WhitenessReport& w, lq_moment_report* out, double* r_out,
                 double* r_se_out) {
  const latq::MomentEstimate& est = w.est;
  out->n = est.n;
  out->samples = est.samples;
  out->seed = est.seed;
  out->volume = est.volume;
  out->e = est.e_hat;
  out->g = est.g_hat;
  out->se_e = est.se_e;
  out->se_g = est.se_g;
  out->rho = w.rho;
  out->anisotropy = w.anisotropy;
  out->anisotropy_se = w.anisotropy_se;
  out->eigen_spread = w.eigen_spread;
  out->eigen_spread_se = w.eigen_spread_se;
  if (r_out)
    for (int i = 0; i < est.n; ++i)
      for (int j = 0; j < est.n; ++j) r_out[i * est.n + j] = est.r_hat(i, j);
  if (r_se_out)
    for (int i = 0; i < est.n; ++i)
      for (int j = 0; j < est.n; ++j) r_se_out[i * est.n + j] = est.r_se(i, j);
}

void fill_experiment(const latq::ExperimentReport& r, lq_experiment_report* out) {
  out->parameter = r.parameter;
  out->baseline_g = r.baseline_g;
  out->baseline_se = r.baseline_se;
  out->perturbed_g = r.perturbed_g;
  out->perturbed_se = r.perturbed_se;
  out->verdict = r.verdict == latq::Verdict::improved      ? 1
                 : r.verdict == latq::Verdict::not_improved ? 0
                                                             : -1;
  out->decode_agree = r.decode_agree ? 1 : 0;
  out->max_d2_mismatch = r.max_d2_mismatch;
  out->e_additivity_sigma = r.e_additivity_sigma;
  out->max_offblock_sigma = r.max_offblock_sigma;
  out->max_edim_sigma = r.max_edim_sigma;
}

lq_lattice* make_handle(std::shared_ptr<const latq::Lattice> lat, std::string tag) {
  auto* h = new lq_lattice;
  h->impl = std::move(lat);
  h->decoder_tag = std::move(tag);
  return h;
}

std::vector<std::pair<std::shared_ptr<const latq::Lattice>, double>> parts_from_spec(
    const std::string& spec) {
  auto parts = latq::parse_product_spec(spec);
  auto plan = latq::plan_product(parts);
  std::vector<std::pair<std::shared_ptr<const latq::Lattice>, double>> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    out.emplace_back(parts[i].lattice, plan.parts[i].scale);
  return out;
}

}  // namespace

extern "C" {

const char* lq_status_name(lq_status s) {
  switch (s) {
    case LQ_OK: return "ok";
    case LQ_ERR_INVALID_ARG: return "invalid-argument";
    case LQ_ERR_UNKNOWN_LATTICE: return "unknown-lattice";
    case LQ_ERR_NO_GENERATOR: return "no-generator";
    case LQ_ERR_NO_DECODER: return "no-decoder";
    case LQ_ERR_SINGULAR: return "singular-matrix";
    case LQ_ERR_DIMENSION: return "dimension-mismatch";
    case LQ_ERR_SEARCH_BUDGET: return "search-budget-exceeded";
    case LQ_ERR_PARSE: return "parse-error";
    case LQ_ERR_IO: return "io-error";
    case LQ_ERR_INCONSISTENT: return "inconsistent-moments";
    case LQ_ERR_NO_DATA: return "no-data";
    case LQ_ERR_INTERNAL: return "internal-error";
  }
  return "?";
}

const char* lq_last_error(void) { return g_last_error.c_str(); }

lq_status lq_lattice_from_catalog(const char* name, lq_lattice** out) {
  if (!name || !out) return bad_arg("null argument");
  return wrap([&] {
    auto lat = latq::get_lattice(name);
    *out = make_handle(lat, latq::decoder_kind_name(lat->decoder_kind()));
  });
}

lq_status lq_lattice_from_file(const char* path, lq_lattice** out) {
  if (!path || !out) return bad_arg("null argument");
  return wrap([&] {
    auto b = latq::read_matrix_file(path);
    std::string name = path;
    auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    *out = make_handle(latq::lattice_from_generator(name, std::move(b)), "generic-sphere");
  });
}

lq_status lq_lattice_from_rows(int n, const double* rows, lq_lattice** out) {
  if (!rows || !out || n < 1) return bad_arg("null or invalid argument");
  return wrap([&] {
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = rows[i * n + j];
    *out = make_handle(latq::lattice_from_generator("custom", latq::GeneratorMatrix(std::move(b))),
                       "generic-sphere");
  });
}

lq_status lq_lattice_from_product(const char* spec, lq_lattice** out) {
  if (!spec || !out) return bad_arg("null argument");
  return wrap([&] {
    auto parts = latq::parse_product_spec(spec);
    auto plan = latq::plan_product(parts);
    latq::GeneratorMatrix gen = latq::plan_generator(parts);
    std::vector<std::pair<std::shared_ptr<const latq::PointDecoder>, double>> decs;
    for (std::size_t i = 0; i < parts.size(); ++i)
      decs.emplace_back(parts[i].lattice->decoder_ptr(), plan.parts[i].scale);
    auto dec = latq::make_product_decoder(std::move(decs));
    auto lat = std::make_shared<const latq::Lattice>(
        latq::Lattice(spec, std::move(gen), latq::DecoderKind::product, std::move(dec),
                      std::nullopt));
    *out = make_handle(lat, "product");
  });
}

lq_status lq_lattice_laminate(const lq_lattice* base, const double* h, double a, lq_lattice** out) {
  if (!base || !h || !out) return bad_arg("null argument");
  return wrap([&] {
    const int n1 = base->impl->dim();
    Eigen::RowVectorXd hv(n1);
    for (int i = 0; i < n1; ++i) hv(i) = h[i];
    latq::GeneratorMatrix gen = latq::laminate_generator(base->impl->basis(), hv, a);
    std::string name = "laminate(" + base->impl->name() + ")";
    *out = make_handle(latq::lattice_from_generator(name, std::move(gen)), "generic-sphere");
  });
}

void lq_lattice_free(lq_lattice* lat) { delete lat; }

int lq_lattice_dim(const lq_lattice* lat) { return lat ? lat->impl->dim() : 0; }

const char* lq_lattice_name(const lq_lattice* lat) { return lat ? lat->impl->name().c_str() : ""; }

const char* lq_lattice_decoder(const lq_lattice* lat) { return lat ? lat->decoder_tag.c_str() : ""; }

int lq_lattice_has_generator(const lq_lattice* lat) { return lat && lat->impl->has_basis() ? 1 : 0; }

int lq_lattice_has_decoder(const lq_lattice* lat) { return lat && lat->impl->has_decoder() ? 1 : 0; }

lq_status lq_lattice_volume(const lq_lattice* lat, double* out) {
  if (!lat || !out) return bad_arg("null argument");
  return wrap([&] { *out = lat->impl->volume(); });
}

lq_status lq_lattice_rows(const lq_lattice* lat, double* rows) {
  if (!lat || !rows) return bad_arg("null argument");
  return wrap([&] {
    const auto& b = lat->impl->basis().rows();
    const int n = lat->impl->dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i * n + j] = b(i, j);
  });
}

lq_status lq_lattice_golden_nsm(const lq_lattice* lat, double* nsm, int* digits) {
  if (!lat || !nsm) return bad_arg("null argument");
  if (!lat->impl->golden()) {
    g_last_error = "no golden NSM for " + lat->impl->name();
    return LQ_ERR_NO_DATA;
  }
  *nsm = lat->impl->golden()->value;
  if (digits) *digits = lat->impl->golden()->digits;
  return LQ_OK;
}

lq_status lq_lattice_write_file(const lq_lattice* lat, const char* path) {
  if (!lat || !path) return bad_arg("null argument");
  return wrap([&] { latq::write_matrix_file(path, lat->impl->basis()); });
}

unsigned lq_catalog_count(void) { return static_cast<unsigned>(latq::catalog_names().size()); }

const char* lq_catalog_name(unsigned index) {
  const auto& names = latq::catalog_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

lq_status lq_decode(const lq_lattice* lat, const double* x, long long* u, double* point,
                    double* error, double* d2) {
  if (!lat || !x) return bad_arg("null argument");
  return wrap([&] {
    const int n = lat->impl->dim();
    Eigen::RowVectorXd xv(n);
    for (int i = 0; i < n; ++i) xv(i) = x[i];
    latq::DecodeResult r = latq::closest_point(*lat->impl, xv);
    for (int i = 0; i < n; ++i) {
      if (u) u[i] = r.u[static_cast<std::size_t>(i)];
      if (point) point[i] = r.point(i);
      if (error) error[i] = r.error(i);
    }
    if (d2) *d2 = r.d2;
  });
}

lq_status lq_decode_suboptimal(const lq_lattice* l1, const lq_lattice* l2, const double* h,
                               const double* x, long long* u, double* point, double* error,
                               double* d2) {
  if (!l1 || !l2 || !h || !x) return bad_arg("null argument");
  return wrap([&] {
    const int n1 = l1->impl->dim(), n2 = l2->impl->dim();
    Eigen::MatrixXd hm(n2, n1);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n1; ++j) hm(i, j) = h[i * n1 + j];
    Eigen::RowVectorXd xv(n1 + n2);
    for (int i = 0; i < n1 + n2; ++i) xv(i) = x[i];
    latq::DecodeResult r =
        latq::quantize_suboptimal(l1->impl->basis(), l2->impl->basis(), hm, xv);
    for (int i = 0; i < n1 + n2; ++i) {
      if (u) u[i] = r.u[static_cast<std::size_t>(i)];
      if (point) point[i] = r.point(i);
      if (error) error[i] = r.error(i);
    }
    if (d2) *d2 = r.d2;
  });
}

lq_status lq_estimate(const lq_lattice* lat, const lq_estimate_opts* opts, lq_moment_report* out,
                      double* r_out, double* r_se_out) {
  if (!lat || !out) return bad_arg("null argument");
  return wrap([&] {
    latq::WhitenessReport w = latq::whiteness(*lat->impl, to_opts(opts));
    fill_report(w, out, r_out, r_se_out);
  });
}

lq_status lq_g_of_scale(int n1, double v1, double g1, int n2, double v2, double g2, double a,
                        double* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] { *out = latq::g_of_scale(n1, v1, g1, n2, v2, g2, a); });
}

lq_status lq_optimal_scale(int n1, double v1, double g1, int n2, double v2, double g2, double* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] {
    *out = latq::optimal_scale({n1, v1, std::nullopt, g1}, {n2, v2, std::nullopt, g2});
  });
}

lq_status lq_optimal_product_nsm(int nparts, const int* dims, const double* gs, double* out) {
  if (!dims || !gs || !out || nparts < 1) return bad_arg("null or invalid argument");
  return wrap([&] {
    std::vector<std::pair<int, double>> parts;
    for (int i = 0; i < nparts; ++i) parts.emplace_back(dims[i], gs[i]);
    *out = latq::optimal_product_nsm(parts);
  });
}

lq_status lq_lamination_bound(double g1, int n, double* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] { *out = latq::lamination_bound(g1, n); });
}

lq_status lq_plan_product(const char* spec, lq_product_part* parts, int* nparts, int* total_dim,
                          double* predicted_nsm, double* e_per_dim) {
  if (!spec || !nparts) return bad_arg("null argument");
  return wrap([&] {
    auto parsed = latq::parse_product_spec(spec);
    auto plan = latq::plan_product(parsed);
    int cap = *nparts;
    *nparts = static_cast<int>(plan.parts.size());
    if (parts) {
      for (int i = 0; i < std::min(cap, *nparts); ++i) {
        const auto& p = plan.parts[static_cast<std::size_t>(i)];
        copy_str(parts[i].name, sizeof parts[i].name, p.name);
        parts[i].dim = p.n;
        parts[i].volume = p.volume;
        parts[i].nsm = p.g;
        parts[i].scale = p.scale;
      }
    }
    if (total_dim) *total_dim = plan.total_dim;
    if (predicted_nsm) *predicted_nsm = plan.predicted_g;
    if (e_per_dim) *e_per_dim = plan.predicted_e_per_dim;
  });
}

lq_status lq_zador_upper(int n, double* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] { *out = latq::zador_upper(n); });
}

lq_status lq_cs_lower(int n, double* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] { *out = latq::cs_lower(n); });
}

lq_status lq_table_row_get(int n, lq_table_row* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] {
    static const std::vector<latq::BoundsRow> rows = latq::best_product_table(48);
    if (n < 1 || n > 48) latq::raise(latq::Errc::invalid_argument, "table row: n must be in 1..48");
    const latq::BoundsRow& r = rows[static_cast<std::size_t>(n - 1)];
    out->n = r.n;
    out->reported_nsm = r.best_reported;
    copy_str(out->reported_name, sizeof out->reported_name, r.best_reported_name);
    out->reported_digits = r.reported_digits;
    out->cs_lower = r.cs_lower;
    out->zador_upper = r.zador_upper;
    out->product_nsm = r.best_product;
    copy_str(out->product_name, sizeof out->product_name, r.best_product_name);
    out->beats_reported = r.flag_g ? 1 : 0;
    out->beats_zador = r.flag_u ? 1 : 0;
  });
}

unsigned lq_golden_count(void) {
  static const unsigned count = static_cast<unsigned>(latq::golden_table().size());
  return count;
}

lq_status lq_golden_entry_get(unsigned index, lq_golden_entry* out) {
  if (!out) return bad_arg("null argument");
  return wrap([&] {
    static const std::vector<latq::GoldenConstant> all = latq::golden_table();
    if (index >= all.size()) latq::raise(latq::Errc::invalid_argument, "golden index out of range");
    const auto& g = all[index];
    copy_str(out->name, sizeof out->name, g.name);
    out->dim = g.dim;
    out->nsm = g.nsm;
    out->digits = g.digits;
    copy_str(out->column, sizeof out->column, g.column);
  });
}

lq_status lq_whitening_experiment(const lq_lattice* lat, double beta, const lq_estimate_opts* opts,
                                  lq_experiment_report* out) {
  if (!lat || !out) return bad_arg("null argument");
  return wrap([&] {
    auto rep = latq::whitening_experiment(lat->impl->basis(), beta, to_opts(opts));
    fill_experiment(rep, out);
  });
}

lq_status lq_saddle_experiment(const char* name1, const char* name2, const double* h_direction,
                               double epsilon, const lq_estimate_opts* opts,
                               lq_experiment_report* out) {
  if (!name1 || !name2 || !h_direction || !out) return bad_arg("null argument");
  return wrap([&] {
    auto l1 = latq::get_lattice(name1);
    auto l2 = latq::get_lattice(name2);
    const int n1 = l1->dim(), n2 = l2->dim();
    Eigen::MatrixXd h(n2, n1);
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n1; ++j) h(i, j) = h_direction[i * n1 + j];
    auto rep = latq::saddle_experiment(*l1, *l2, h, epsilon, to_opts(opts));
    fill_experiment(rep, out);
  });
}

lq_status lq_product_check(const char* spec, const lq_estimate_opts* opts,
                           unsigned long long decode_trials, lq_experiment_report* out) {
  if (!spec || !out) return bad_arg("null argument");
  return wrap([&] {
    auto parts = parts_from_spec(spec);
    auto rep = latq::product_factorization_check(parts, to_opts(opts), decode_trials);
    fill_experiment(rep, out);
  });
}

}  // extern "C"
