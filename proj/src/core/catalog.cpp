#include "core/catalog.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "core/codes.hpp"
#include "core/error.hpp"
#include "core/table_data.hpp"

namespace latq {

const char* decoder_kind_name(DecoderKind k) {
  switch (k) {
    case DecoderKind::none: return "none";
    case DecoderKind::cubic: return "cubic";
    case DecoderKind::d_family: return "d-family";
    case DecoderKind::a_family: return "a-family";
    case DecoderKind::coset_union: return "coset-union";
    case DecoderKind::generic_sphere: return "generic-sphere";
    case DecoderKind::product: return "product";
  }
  return "?";
}

Lattice::Lattice(std::string name, GeneratorMatrix basis, DecoderKind kind,
                 std::shared_ptr<const PointDecoder> dec, std::optional<GoldenNsm> golden)
    : name_(std::move(name)),
      dim_(basis.dim()),
      basis_(std::move(basis)),
      kind_(kind),
      decoder_(std::move(dec)),
      golden_(std::move(golden)) {}

Lattice Lattice::constant_only(std::string name, int dim, GoldenNsm golden) {
  Lattice l;
  l.name_ = std::move(name);
  l.dim_ = dim;
  l.golden_ = std::move(golden);
  return l;
}

const GeneratorMatrix& Lattice::basis() const {
  if (!basis_) raise(Errc::no_generator, "lattice " + name_ + " has no published generator");
  return *basis_;
}

const PointDecoder& Lattice::decoder() const {
  if (!decoder_) raise(Errc::no_decoder, "lattice " + name_ + " has no decoder");
  return *decoder_;
}

std::shared_ptr<const PointDecoder> Lattice::decoder_ptr() const {
  if (!decoder_) raise(Errc::no_decoder, "lattice " + name_ + " has no decoder");
  return decoder_;
}

namespace {

constexpr int kMaxCatalogDim = 48;

std::optional<GoldenNsm> golden_for(const std::string& name) {
  if (auto g = reported_golden(name)) return GoldenNsm{g->value, g->digits, g->source};
  return std::nullopt;
}

std::vector<Rational> identity_exact(int n) {
  std::vector<Rational> e(static_cast<std::size_t>(n) * n, Rational(0));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1;
  return e;
}

Lattice make_zn(int n) {
  GeneratorMatrix b(n, identity_exact(n));
  auto golden = golden_for("Z");
  if (golden) golden->source += " (G(Z^n) = G(Z) for all n)";
  return Lattice(n == 1 ? "Z" : "Z" + std::to_string(n), std::move(b), DecoderKind::cubic,
                 make_cubic_decoder(n), golden);
}

// Cartan matrix of a simply-laced root system given its Dynkin edges.
Eigen::MatrixXd cartan(int n, const std::vector<std::pair<int, int>>& edges) {
  Eigen::MatrixXd a = 2.0 * Eigen::MatrixXd::Identity(n, n);
  for (auto [i, j] : edges) {
    a(i, j) = -1;
    a(j, i) = -1;
  }
  return a;
}

std::vector<std::pair<int, int>> chain_edges(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

GeneratorMatrix cholesky_basis(const Eigen::MatrixXd& gram) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) raise(Errc::invalid_argument, "gram matrix not positive definite");
  return GeneratorMatrix(Eigen::MatrixXd(llt.matrixL()));
}

Lattice make_an(int n) {
  GeneratorMatrix b = cholesky_basis(cartan(n, chain_edges(n)));
  auto dec = make_an_decoder(b);
  return Lattice("A" + std::to_string(n), std::move(b), DecoderKind::a_family, std::move(dec),
                 golden_for("A" + std::to_string(n)));
}

Lattice make_an_dual(int n) {
  GeneratorMatrix b = cholesky_basis(cartan(n, chain_edges(n))).dual();
  auto dec = make_an_dual_decoder(b);
  std::string name = "A" + std::to_string(n) + "*";
  return Lattice(name, std::move(b), DecoderKind::coset_union, std::move(dec), golden_for(name));
}

std::vector<Rational> dn_exact(int n) {
  std::vector<Rational> e(static_cast<std::size_t>(n) * n, Rational(0));
  for (int i = 0; i + 1 < n; ++i) {
    e[static_cast<std::size_t>(i) * n + i] = 1;
    e[static_cast<std::size_t>(i) * n + i + 1] = -1;
  }
  e[static_cast<std::size_t>(n - 1) * n + n - 2] = 1;
  e[static_cast<std::size_t>(n - 1) * n + n - 1] = 1;
  return e;
}

Lattice make_dn(int n) {
  if (n < 2) raise(Errc::unknown_lattice, "D_n requires n >= 2");
  GeneratorMatrix b(n, dn_exact(n));
  auto dec = make_dn_decoder(b);
  return Lattice("D" + std::to_string(n), std::move(b), DecoderKind::d_family, std::move(dec),
                 golden_for("D" + std::to_string(n)));
}

std::vector<Rational> half_glue_row(std::vector<Rational> e, int n) {
  for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(n - 1) * n + j] = Rational(1, 2);
  return e;
}

Lattice make_dn_dual(int n) {
  if (n < 2) raise(Errc::unknown_lattice, "D_n* requires n >= 2");
  // Z^n together with the all-halves coset: rows e_1..e_{n-1}, (1/2,...,1/2).
  std::vector<Rational> e = half_glue_row(identity_exact(n), n);
  GeneratorMatrix b(n, std::move(e));
  std::vector<Eigen::RowVectorXd> offsets{Eigen::RowVectorXd::Zero(n),
                                          Eigen::RowVectorXd::Constant(n, 0.5)};
  auto dec = make_coset_decoder(make_cubic_decoder(n), std::move(offsets), b);
  std::string name = "D" + std::to_string(n) + "*";
  return Lattice(name, std::move(b), DecoderKind::coset_union, std::move(dec), golden_for(name));
}

Lattice make_dn_plus(int n, const std::string& name) {
  if (n < 2 || n % 2 != 0) raise(Errc::unknown_lattice, "D_n+ requires even n >= 2");
  // D_n plus the all-halves glue: rows 2e_1, e_2-e_1, ..., e_{n-1}-e_{n-2},
  // (1/2,...,1/2); unimodular for n = 8 this is E8.
  std::vector<Rational> e(static_cast<std::size_t>(n) * n, Rational(0));
  e[0] = 2;
  for (int i = 1; i + 1 < n; ++i) {
    e[static_cast<std::size_t>(i) * n + i - 1] = -1;
    e[static_cast<std::size_t>(i) * n + i] = 1;
  }
  e = half_glue_row(std::move(e), n);
  GeneratorMatrix b(n, std::move(e));
  std::vector<Eigen::RowVectorXd> offsets{Eigen::RowVectorXd::Zero(n),
                                          Eigen::RowVectorXd::Constant(n, 0.5)};
  auto dec = make_coset_decoder(make_dn_decoder(GeneratorMatrix(n, dn_exact(n))), std::move(offsets), b);
  return Lattice(name, std::move(b), DecoderKind::coset_union, std::move(dec), golden_for(name));
}

Lattice make_e67(int n, bool dual) {
  std::vector<std::pair<int, int>> edges = chain_edges(n - 1);
  edges.emplace_back(2, n - 1);  // branch node on the third node of the chain
  GeneratorMatrix b = cholesky_basis(cartan(n, edges));
  if (dual) b = b.dual();
  std::string name = "E" + std::to_string(n) + (dual ? "*" : "");
  auto dec = make_sphere_decoder(b);
  return Lattice(name, std::move(b), DecoderKind::generic_sphere, std::move(dec), golden_for(name));
}

GeneratorMatrix from_int_rows(const std::vector<std::vector<long long>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Rational> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return GeneratorMatrix(n, std::move(e));
}

Lattice make_k12() {
  // Eisenstein coordinates mapped to the plane: a + b*w -> (a - b/2, b*sqrt(3)/2).
  auto basis = coxeter_todd_eisenstein_basis();
  const int n = 12;
  Eigen::MatrixXd b(n, n);
  const double s = std::sqrt(3.0) / 2.0;
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < 6; ++c) {
      double a = static_cast<double>(basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * c)]);
      double w = static_cast<double>(basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * c + 1)]);
      b(i, 2 * c) = a - 0.5 * w;
      b(i, 2 * c + 1) = s * w;
    }
  GeneratorMatrix g(std::move(b));
  auto dec = make_sphere_decoder(g);
  return Lattice("K12", std::move(g), DecoderKind::generic_sphere, std::move(dec), golden_for("K12"));
}

Lattice make_l16() {
  GeneratorMatrix g = from_int_rows(barnes_wall_16_basis());
  auto dec = make_sphere_decoder(g);
  return Lattice("L16", std::move(g), DecoderKind::generic_sphere, std::move(dec), golden_for("L16"));
}

Lattice make_l24() {
  GeneratorMatrix g = from_int_rows(leech_basis());
  auto dec = make_sphere_decoder(g);
  return Lattice("L24", std::move(g), DecoderKind::generic_sphere, std::move(dec), golden_for("L24"));
}

// AE9 and A11^3 have no generator printed in the paper or its tables; they
// ship as golden constants only.
Lattice make_constant_only(const std::string& name, int dim) {
  auto g = golden_for(name);
  if (!g) raise(Errc::unknown_lattice, "no golden constant for " + name);
  return Lattice::constant_only(name, dim, *g);
}

bool parse_index(const std::string& s, std::size_t pos, std::size_t len, int& out) {
  if (len == 0 || len > 2) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

Lattice build(const std::string& name) {
  if (name == "Z") return make_zn(1);
  if (name == "K12") return make_k12();
  if (name == "L16") return make_l16();
  if (name == "L24") return make_l24();
  if (name == "AE9") return make_constant_only("AE9", 9);
  if (name == "A11^3") return make_constant_only("A11^3", 11);
  if (name == "E8" || name == "E8*") return make_dn_plus(8, "E8");
  if (name.size() >= 2) {
    char fam = name[0];
    bool dual = name.back() == '*';
    bool plus = name.back() == '+';
    std::size_t digits = name.size() - 1 - ((dual || plus) ? 1 : 0);
    int n = 0;
    if (parse_index(name, 1, digits, n) && n >= 1 && n <= kMaxCatalogDim) {
      if (fam == 'Z' && !dual && !plus) return make_zn(n);
      if (fam == 'A' && !plus) return dual ? make_an_dual(n) : make_an(n);
      if (fam == 'D' && plus) return make_dn_plus(n, name);
      if (fam == 'D') return dual ? make_dn_dual(n) : make_dn(n);
      if (fam == 'E' && (n == 6 || n == 7)) return make_e67(n, dual);
    }
  }
  raise(Errc::unknown_lattice, "unknown lattice name: " + name);
}

}  // namespace

std::shared_ptr<const Lattice> get_lattice(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Lattice>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto lat = std::make_shared<const Lattice>(build(name));
  cache[name] = lat;
  if (name == "E8*") cache["E8"] = lat;
  return lat;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"Z",   "A2",  "A3*",   "D4",  "D5*", "E6*", "E7*",
                                                 "E8",  "AE9", "D10+",  "A11^3", "K12", "L16", "L24"};
  return names;
}

std::shared_ptr<const Lattice> lattice_from_generator(std::string name, GeneratorMatrix basis) {
  auto dec = make_sphere_decoder(basis);
  return std::make_shared<const Lattice>(Lattice(std::move(name), std::move(basis),
                                                 DecoderKind::generic_sphere, std::move(dec),
                                                 std::nullopt));
}

}  // namespace latq
