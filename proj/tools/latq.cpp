// latq: command-line front end over the latquant C API.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latquant/latquant.h"

using nlohmann::json;

namespace {

struct LatticeDeleter {
  void operator()(lq_lattice* p) const { lq_lattice_free(p); }
};
using LatticePtr = std::unique_ptr<lq_lattice, LatticeDeleter>;

[[noreturn]] void die(lq_status s) {
  std::fprintf(stderr, "latq: %s: %s\n", lq_status_name(s), lq_last_error());
  std::exit(1);
}

void check(lq_status s) {
  if (s != LQ_OK) die(s);
}

// Resolves a lattice argument: catalog name, product spec, or matrix file.
LatticePtr resolve_lattice(const std::string& name, const std::string& matrix_file) {
  lq_lattice* lat = nullptr;
  if (!matrix_file.empty()) {
    check(lq_lattice_from_file(matrix_file.c_str(), &lat));
    return LatticePtr(lat);
  }
  lq_status s = lq_lattice_from_catalog(name.c_str(), &lat);
  if (s == LQ_ERR_UNKNOWN_LATTICE && name.find('*') != std::string::npos) {
    check(lq_lattice_from_product(name.c_str(), &lat));
    return LatticePtr(lat);
  }
  check(s);
  return LatticePtr(lat);
}

json estimate_json(const lq_lattice* lat, const lq_moment_report& rep, const std::vector<double>& r) {
  json j;
  j["name"] = lq_lattice_name(lat);
  j["n"] = rep.n;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["V"] = rep.volume;
  j["E"] = rep.e;
  j["G"] = rep.g;
  j["se_E"] = rep.se_e;
  j["se_G"] = rep.se_g;
  j["R"] = r;
  j["rho"] = rep.rho;
  j["anisotropy"] = rep.anisotropy;
  j["anisotropy_se"] = rep.anisotropy_se;
  j["eigen_spread"] = rep.eigen_spread;
  j["eigen_spread_se"] = rep.eigen_spread_se;
  return j;
}

void run_estimate(const lq_lattice* lat, const lq_estimate_opts& opts, lq_moment_report& rep,
                  std::vector<double>& r, std::vector<double>& r_se) {
  const int n = lq_lattice_dim(lat);
  r.assign(static_cast<std::size_t>(n) * n, 0.0);
  r_se.assign(static_cast<std::size_t>(n) * n, 0.0);
  check(lq_estimate(lat, &opts, &rep, r.data(), r_se.data()));
}

void print_matrix_text(int n, const std::vector<double>& rows) {
  std::printf("%d\n", n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      std::printf("%s%.17g", j ? " " : "", rows[static_cast<std::size_t>(i) * n + j]);
    std::printf("\n");
  }
}

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (c == '*')
      out += 's';
    else if (c == '+')
      out += 'p';
    else if (c == '^')
      out += '_';
    else
      out += c;
  }
  return out;
}

int cmd_catalog(const std::vector<std::string>& names, bool as_json, const std::string& export_dir) {
  std::vector<std::string> list = names;
  if (list.empty())
    for (unsigned i = 0; i < lq_catalog_count(); ++i) list.push_back(lq_catalog_name(i));

  if (!export_dir.empty()) {
    for (const auto& name : list) {
      lq_lattice* lat = nullptr;
      check(lq_lattice_from_catalog(name.c_str(), &lat));
      LatticePtr guard(lat);
      if (!lq_lattice_has_generator(lat)) continue;
      std::string path = export_dir + "/" + sanitize_name(name) + ".txt";
      check(lq_lattice_write_file(lat, path.c_str()));
      std::printf("wrote %s\n", path.c_str());
    }
    std::string csv_path = export_dir + "/table1.csv";
    FILE* f = std::fopen(csv_path.c_str(), "w");
    if (!f) {
      std::fprintf(stderr, "latq: cannot write %s\n", csv_path.c_str());
      return 1;
    }
    std::fprintf(f, "name,dim,nsm,precision,column\n");
    for (unsigned i = 0; i < lq_golden_count(); ++i) {
      lq_golden_entry g;
      check(lq_golden_entry_get(i, &g));
      std::fprintf(f, "%s,%d,%.*f,%d,%s\n", g.name, g.dim, g.digits, g.nsm, g.digits, g.column);
    }
    std::fclose(f);
    std::printf("wrote %s\n", csv_path.c_str());
    return 0;
  }

  json out = json::array();
  for (const auto& name : list) {
    lq_lattice* lat = nullptr;
    check(lq_lattice_from_catalog(name.c_str(), &lat));
    LatticePtr guard(lat);
    json j;
    j["name"] = name;
    j["dim"] = lq_lattice_dim(lat);
    j["decoder"] = lq_lattice_decoder(lat);
    if (lq_lattice_has_generator(lat)) {
      double v = 0;
      check(lq_lattice_volume(lat, &v));
      j["volume"] = v;
    }
    double nsm = 0;
    int digits = 0;
    if (lq_lattice_golden_nsm(lat, &nsm, &digits) == LQ_OK) {
      j["golden_nsm"] = nsm;
      j["golden_digits"] = digits;
    }
    out.push_back(j);
  }
  if (as_json) {
    std::printf("%s\n", out.dump(2).c_str());
  } else {
    std::printf("%-8s %4s %-14s %12s  %s\n", "name", "dim", "decoder", "volume", "golden NSM");
    for (const auto& j : out) {
      std::string vol = j.contains("volume") ? json(j["volume"]).dump() : "-";
      std::string gold = "-";
      if (j.contains("golden_nsm")) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.*f", int(j["golden_digits"]), double(j["golden_nsm"]));
        gold = buf;
      }
      std::printf("%-8s %4d %-14s %12s  %s\n", std::string(j["name"]).c_str(), int(j["dim"]),
                  std::string(j["decoder"]).c_str(), vol.c_str(), gold.c_str());
    }
  }
  return 0;
}

int cmd_decode(const std::string& name, const std::string& matrix_file,
               const std::vector<double>& coords, bool as_json) {
  LatticePtr lat = resolve_lattice(name, matrix_file);
  const int n = lq_lattice_dim(lat.get());
  if (static_cast<int>(coords.size()) != n) {
    std::fprintf(stderr, "latq: expected %d coordinates, got %zu\n", n, coords.size());
    return 1;
  }
  std::vector<long long> u(static_cast<std::size_t>(n));
  std::vector<double> point(static_cast<std::size_t>(n)), err(static_cast<std::size_t>(n));
  double d2 = 0;
  check(lq_decode(lat.get(), coords.data(), u.data(), point.data(), err.data(), &d2));
  if (as_json) {
    json j;
    j["name"] = lq_lattice_name(lat.get());
    j["u"] = u;
    j["point"] = point;
    j["error"] = err;
    j["d2"] = d2;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("u      =");
    for (long long v : u) std::printf(" %lld", v);
    std::printf("\npoint  =");
    for (double v : point) std::printf(" %.12g", v);
    std::printf("\nerror  =");
    for (double v : err) std::printf(" %.12g", v);
    std::printf("\nd2     = %.12g\n", d2);
  }
  return 0;
}

int cmd_nsm(const std::string& name, const std::string& matrix_file, const lq_estimate_opts& opts,
            bool as_json, bool whiteness_view) {
  LatticePtr lat = resolve_lattice(name, matrix_file);
  lq_moment_report rep;
  std::vector<double> r, r_se;
  run_estimate(lat.get(), opts, rep, r, r_se);
  if (as_json) {
    std::printf("%s\n", estimate_json(lat.get(), rep, r).dump(2).c_str());
    return 0;
  }
  if (whiteness_view) {
    std::printf("%s: n=%d samples=%llu seed=%llu\n", lq_lattice_name(lat.get()), rep.n,
                rep.samples, rep.seed);
    std::printf("rho          = %.9f\n", rep.rho);
    std::printf("anisotropy   = %.6f (se %.6f)\n", rep.anisotropy, rep.anisotropy_se);
    std::printf("eigen_spread = %.6f (se %.6f)\n", rep.eigen_spread, rep.eigen_spread_se);
    std::printf("R =\n");
    for (int i = 0; i < rep.n; ++i) {
      for (int j = 0; j < rep.n; ++j)
        std::printf(" %11.6f", r[static_cast<std::size_t>(i) * rep.n + j]);
      std::printf("\n");
    }
  } else {
    double golden = 0;
    int digits = 0;
    std::printf("%s: n=%d samples=%llu seed=%llu\n", lq_lattice_name(lat.get()), rep.n,
                rep.samples, rep.seed);
    std::printf("G = %.9f +- %.9f  (E = %.9f, V = %.9g)\n", rep.g, rep.se_g, rep.e, rep.volume);
    if (lq_lattice_golden_nsm(lat.get(), &golden, &digits) == LQ_OK)
      std::printf("golden G = %.*f  (deviation %+.2f se)\n", digits, golden,
                  (rep.g - golden) / (rep.se_g > 0 ? rep.se_g : 1));
  }
  return 0;
}

int cmd_product(const std::string& spec, bool as_json, bool emit_generator) {
  lq_product_part parts[16];
  int nparts = 16, total = 0;
  double g = 0, e_per_dim = 0;
  check(lq_plan_product(spec.c_str(), parts, &nparts, &total, &g, &e_per_dim));
  json j;
  j["spec"] = spec;
  j["n"] = total;
  j["predicted_G"] = g;
  j["E_per_dim"] = e_per_dim;
  j["parts"] = json::array();
  for (int i = 0; i < nparts; ++i) {
    json p;
    p["name"] = parts[i].name;
    p["n"] = parts[i].dim;
    p["V"] = parts[i].volume;
    p["G"] = parts[i].nsm;
    p["scale"] = parts[i].scale;
    j["parts"].push_back(p);
  }
  lq_lattice* lat = nullptr;
  std::vector<double> rows;
  if (lq_lattice_from_product(spec.c_str(), &lat) == LQ_OK) {
    LatticePtr guard(lat);
    const int n = lq_lattice_dim(lat);
    rows.assign(static_cast<std::size_t>(n) * n, 0.0);
    check(lq_lattice_rows(lat, rows.data()));
    double v = 0;
    check(lq_lattice_volume(lat, &v));
    j["V"] = v;
    if (as_json && emit_generator) j["generator"] = rows;
  }
  if (as_json) {
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("%s: n=%d predicted G = %.9f (E/n = %.9g)\n", spec.c_str(), total, g, e_per_dim);
    for (int i = 0; i < nparts; ++i)
      std::printf("  %-8s n=%-3d V=%-12.9g G=%.9f scale=%.9f\n", parts[i].name, parts[i].dim,
                  parts[i].volume, parts[i].nsm, parts[i].scale);
    if (emit_generator && !rows.empty()) print_matrix_text(total, rows);
  }
  return 0;
}

int cmd_laminate(const std::string& name, const std::string& matrix_file, std::vector<double> h,
                 double a, bool as_json) {
  LatticePtr base = resolve_lattice(name, matrix_file);
  const int n1 = lq_lattice_dim(base.get());
  if (h.empty()) h.assign(static_cast<std::size_t>(n1), 0.0);
  if (static_cast<int>(h.size()) != n1) {
    std::fprintf(stderr, "latq: offset must have %d entries\n", n1);
    return 1;
  }
  if (a <= 0) {
    // Default layer separation: optimal scale against Z, which needs the
    // golden NSM of the base lattice.
    double g1 = 0;
    int digits = 0;
    if (lq_lattice_golden_nsm(base.get(), &g1, &digits) != LQ_OK) {
      std::fprintf(stderr, "latq: no golden NSM for %s; pass --a\n", lq_lattice_name(base.get()));
      return 1;
    }
    double v1 = 0;
    check(lq_lattice_volume(base.get(), &v1));
    check(lq_optimal_scale(n1, v1, g1, 1, 1.0, 1.0 / 12.0, &a));
  }
  lq_lattice* lam = nullptr;
  check(lq_lattice_laminate(base.get(), h.data(), a, &lam));
  LatticePtr guard(lam);
  const int n = n1 + 1;
  std::vector<double> rows(static_cast<std::size_t>(n) * n);
  check(lq_lattice_rows(lam, rows.data()));
  double v = 0;
  check(lq_lattice_volume(lam, &v));
  double bound = 0;
  bool have_bound = false;
  double g1 = 0;
  int digits = 0;
  if (lq_lattice_golden_nsm(base.get(), &g1, &digits) == LQ_OK) {
    check(lq_lamination_bound(g1, n, &bound));
    have_bound = true;
  }
  if (as_json) {
    json j;
    j["base"] = lq_lattice_name(base.get());
    j["a"] = a;
    j["h"] = h;
    j["n"] = n;
    j["V"] = v;
    j["generator"] = rows;
    if (have_bound) j["lamination_bound"] = bound;
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("laminate(%s): a = %.9f, V = %.9g\n", lq_lattice_name(base.get()), a, v);
    if (have_bound) std::printf("lamination bound on G: %.9f\n", bound);
    print_matrix_text(n, rows);
  }
  return 0;
}

int cmd_bounds(int n, bool as_json) {
  lq_table_row row;
  check(lq_table_row_get(n, &row));
  if (as_json) {
    json j;
    j["n"] = row.n;
    j["cs_lower"] = row.cs_lower;
    j["zador_upper"] = row.zador_upper;
    j["best_reported"] = row.reported_nsm;
    j["best_reported_name"] = row.reported_name;
    if (row.n > 1) {
      j["best_product"] = row.product_nsm;
      j["best_product_name"] = row.product_name;
      j["beats_reported"] = row.beats_reported != 0;
      j["beats_zador"] = row.beats_zador != 0;
    }
    std::printf("%s\n", j.dump(2).c_str());
  } else {
    std::printf("n=%d lower %.9f upper %.9f\n", row.n, row.cs_lower, row.zador_upper);
    std::printf("best reported: %s %.*f\n", row.reported_name, row.reported_digits,
                row.reported_nsm);
    if (row.n > 1)
      std::printf("best product:  %s %.9f%s%s\n", row.product_name, row.product_nsm,
                  row.beats_reported ? " <G" : "", row.beats_zador ? " <U" : "");
  }
  return 0;
}

int cmd_table(int n_max, bool as_csv, bool as_json) {
  json out = json::array();
  for (int n = 1; n <= n_max; ++n) {
    lq_table_row row;
    check(lq_table_row_get(n, &row));
    json j;
    j["n"] = row.n;
    j["reported_nsm"] = row.reported_nsm;
    j["reported_name"] = row.reported_name;
    j["reported_digits"] = row.reported_digits;
    j["lower"] = row.cs_lower;
    j["upper"] = row.zador_upper;
    j["product_nsm"] = row.product_nsm;
    j["product_name"] = row.product_name;
    j["flags"] = std::string(row.beats_reported ? "G" : "") + (row.beats_zador ? "U" : "");
    out.push_back(j);
  }
  if (as_json) {
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
  }
  if (as_csv) {
    std::printf("n,reported_nsm,reported_name,lower,upper,product_nsm,product_name,flags\n");
    for (const auto& j : out) {
      lq_table_row row;
      check(lq_table_row_get(int(j["n"]), &row));
      std::printf("%d,%.*f,%s,%.9f,%.9f,", row.n, row.reported_digits, row.reported_nsm,
                  row.reported_name, row.cs_lower, row.zador_upper);
      if (row.n > 1)
        std::printf("%.9f,%s,", row.product_nsm, row.product_name);
      else
        std::printf(",,");
      std::printf("%s%s\n", row.beats_reported ? "<G" : "", row.beats_zador ? "<U" : "");
    }
    return 0;
  }
  std::printf("%3s  %-12s %-8s  %-11s %-11s  %-12s %-16s %s\n", "n", "reported", "lattice",
              "lower", "upper", "product", "composition", "flags");
  for (int n = 1; n <= n_max; ++n) {
    lq_table_row row;
    check(lq_table_row_get(n, &row));
    char rep[24], prod[24] = "";
    std::snprintf(rep, sizeof rep, "%.*f", row.reported_digits, row.reported_nsm);
    if (n > 1) std::snprintf(prod, sizeof prod, "%.9f", row.product_nsm);
    std::printf("%3d  %-12s %-8s  %.9f %.9f  %-12s %-16s %s%s\n", row.n, rep, row.reported_name,
                row.cs_lower, row.zador_upper, prod, row.product_name,
                row.beats_reported ? "<G " : "", row.beats_zador ? "<U" : "");
  }
  return 0;
}

int cmd_verify(const lq_estimate_opts& opts, double beta, double epsilon, bool as_json) {
  int failures = 0;
  json out = json::array();
  auto record = [&](const char* name, const lq_experiment_report& rep, bool required_improved) {
    bool ok = required_improved ? rep.verdict == 1 : rep.verdict != 0;
    const char* verdict = rep.verdict == 1 ? "improved" : rep.verdict == 0 ? "not-improved" : "inconclusive";
    if (!ok) ++failures;
    json j;
    j["experiment"] = name;
    j["verdict"] = verdict;
    j["baseline_G"] = rep.baseline_g;
    j["baseline_se"] = rep.baseline_se;
    j["perturbed_G"] = rep.perturbed_g;
    j["perturbed_se"] = rep.perturbed_se;
    j["parameter"] = rep.parameter;
    j["pass"] = ok;
    out.push_back(j);
    if (!as_json)
      std::printf("%-22s %-13s baseline %.9f+-%.2g perturbed %.9f+-%.2g  [%s]\n", name, verdict,
                  rep.baseline_g, rep.baseline_se, rep.perturbed_g, rep.perturbed_se,
                  ok ? "pass" : "FAIL");
  };

  // Whitening on the anisotropic rectangle diag(1,2); the theorem demands an
  // NSM drop for small negative beta.
  const double rect[4] = {1, 0, 0, 2};
  lq_lattice* rect_lat = nullptr;
  check(lq_lattice_from_rows(2, rect, &rect_lat));
  LatticePtr rect_guard(rect_lat);
  lq_experiment_report rep;
  check(lq_whitening_experiment(rect_lat, beta, &opts, &rep));
  record("whitening diag(1,2)", rep, beta < 0);

  // Saddle: Z x Z with an off-diagonal block must beat the product baseline.
  const double hdir[1] = {1.0};
  check(lq_saddle_experiment("Z", "Z", hdir, epsilon, &opts, &rep));
  record("saddle Z,Z", rep, true);

  // Product factorization checks.
  for (const char* spec : {"D4*Z", "A2*Z"}) {
    check(lq_product_check(spec, &opts, 10000, &rep));
    bool ok = rep.decode_agree != 0 && rep.e_additivity_sigma <= 3.0 && rep.max_offblock_sigma <= 3.0;
    if (!ok) ++failures;
    json j;
    j["experiment"] = std::string("product ") + spec;
    j["decode_agree"] = rep.decode_agree != 0;
    j["max_d2_mismatch"] = rep.max_d2_mismatch;
    j["e_additivity_sigma"] = rep.e_additivity_sigma;
    j["max_offblock_sigma"] = rep.max_offblock_sigma;
    j["max_edim_sigma"] = rep.max_edim_sigma;
    j["pass"] = ok;
    out.push_back(j);
    if (!as_json)
      std::printf("%-22s decode_agree=%d d2_mismatch=%.2g E_add=%.2fse offblock=%.2fse  [%s]\n",
                  (std::string("product ") + spec).c_str(), rep.decode_agree, rep.max_d2_mismatch,
                  rep.e_additivity_sigma, rep.max_offblock_sigma, ok ? "pass" : "FAIL");
  }

  if (as_json) std::printf("%s\n", out.dump(2).c_str());
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice quantizer toolkit"};
  app.require_subcommand(1);

  bool as_json = false, as_csv = false;
  app.add_flag("--json", as_json, "emit JSON reports");
  app.add_flag("--csv", as_csv, "emit CSV where supported");

  lq_estimate_opts opts{100000, 0, 0};
  std::string name, matrix_file, export_dir, spec, h_arg;
  std::vector<std::string> names;
  std::vector<double> coords, h;
  double beta = -0.1, epsilon = 0.5, a = 0;
  int n = 1, n_max = 48;
  bool emit_generator = false;

  auto add_estimate_flags = [&](CLI::App* cmd) {
    cmd->add_option("--samples", opts.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", opts.seed, "RNG seed (bit-reproducible payloads)");
    cmd->add_option("--threads", opts.threads, "worker threads (0 = auto)");
  };

  auto* c_catalog = app.add_subcommand("catalog", "list or export the named lattice registry");
  c_catalog->add_option("names", names, "lattice names (default: all)");
  c_catalog->add_option("--export", export_dir, "write matrix files and table1.csv to a directory");

  auto* c_decode = app.add_subcommand("decode", "closest-point quantization");
  c_decode->add_option("lattice", name, "lattice name or product spec");
  c_decode->add_option("x", coords, "coordinates");
  c_decode->add_option("--matrix", matrix_file, "generator matrix file");

  auto* c_nsm = app.add_subcommand("nsm", "Monte Carlo NSM estimate");
  c_nsm->add_option("lattice", name, "lattice name or product spec");
  c_nsm->add_option("--matrix", matrix_file, "generator matrix file");
  add_estimate_flags(c_nsm);

  auto* c_white = app.add_subcommand("whiteness", "error covariance diagnostics");
  c_white->add_option("lattice", name, "lattice name or product spec");
  c_white->add_option("--matrix", matrix_file, "generator matrix file");
  add_estimate_flags(c_white);

  auto* c_product = app.add_subcommand("product", "closed-form optimal product plan");
  c_product->add_option("spec", spec, "composition, e.g. K12*Z or L24*L16*Z or A2@1.5*Z")
      ->required();
  c_product->add_flag("--generator", emit_generator, "print the assembled generator");

  auto* c_lam = app.add_subcommand("laminate", "stack a lattice with offset h and spacing a");
  c_lam->add_option("lattice", name, "base lattice name");
  c_lam->add_option("--matrix", matrix_file, "base generator matrix file");
  c_lam->add_option("--offset", h_arg, "stacking offset h, comma-separated (default 0)");
  c_lam->add_option("--a", a, "layer separation (default: optimal against Z)");

  auto* c_bounds = app.add_subcommand("bounds", "bounds and best-known entries for one dimension");
  c_bounds->add_option("--n", n, "dimension")->required();

  auto* c_table = app.add_subcommand("table", "reproduce the best-quantizer table");
  c_table->add_option("--n-max", n_max, "last dimension (<= 48)");

  auto* c_verify = app.add_subcommand("verify", "run the theorem experiments");
  add_estimate_flags(c_verify);
  c_verify->add_option("--beta", beta, "whitening perturbation (default -0.1)");
  c_verify->add_option("--epsilon", epsilon, "saddle H magnitude (default 0.5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!h_arg.empty()) {
    std::string cur;
    for (char c : h_arg + ",") {
      if (c == ',' || c == ' ') {
        if (!cur.empty()) h.push_back(std::stod(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
  }

  if (c_catalog->parsed()) return cmd_catalog(names, as_json, export_dir);
  if (c_decode->parsed()) return cmd_decode(name, matrix_file, coords, as_json);
  if (c_nsm->parsed()) return cmd_nsm(name, matrix_file, opts, as_json, false);
  if (c_white->parsed()) return cmd_nsm(name, matrix_file, opts, as_json, true);
  if (c_product->parsed()) return cmd_product(spec, as_json, emit_generator);
  if (c_lam->parsed()) return cmd_laminate(name, matrix_file, h, a, as_json);
  if (c_bounds->parsed()) return cmd_bounds(n, as_json);
  if (c_table->parsed()) return cmd_table(n_max, as_csv, as_json);
  if (c_verify->parsed()) return cmd_verify(opts, beta, epsilon, as_json);
  return 2;
}
