#include "core/compose.hpp"

#include <cctype>
#include <cmath>

#include "core/catalog.hpp"
#include "core/error.hpp"

namespace latq {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0)) raise(Errc::invalid_argument, std::string(what) + " must be positive");
}

double e_from_g(int n, double v, double g) { return g * n * std::pow(v, 2.0 / n); }

// Fills in the missing one of e/g and cross-checks when both are supplied.
ComponentMoments normalize(ComponentMoments c) {
  if (c.n < 1) raise(Errc::invalid_argument, "component dimension must be positive");
  require_positive(c.volume, "component volume");
  if (!c.e && !c.g) raise(Errc::invalid_argument, "component needs E or G");
  if (c.g) require_positive(*c.g, "component NSM");
  if (c.e) require_positive(*c.e, "component mean square error");
  if (c.e && c.g) {
    double g_of_e = *c.e / (c.n * std::pow(c.volume, 2.0 / c.n));
    if (std::abs(g_of_e - *c.g) > 1e-9 * std::abs(*c.g))
      raise(Errc::inconsistent_moments, "component E, G, V violate G = E/(n V^(2/n))");
  }
  if (!c.e) c.e = e_from_g(c.n, c.volume, *c.g);
  if (!c.g) c.g = *c.e / (c.n * std::pow(c.volume, 2.0 / c.n));
  return c;
}

}  // namespace

double g_of_scale(int n1, double v1, double g1, int n2, double v2, double g2, double a) {
  if (n1 < 1 || n2 < 1) raise(Errc::invalid_argument, "dimensions must be positive");
  require_positive(v1, "V1");
  require_positive(v2, "V2");
  require_positive(g1, "G1");
  require_positive(g2, "G2");
  require_positive(a, "scale");
  const double n = n1 + n2;
  double t1 = (n1 / n) * std::pow(a, -2.0 * n2 / n) * std::pow(v1, 2.0 * n2 / (n * n1)) *
              std::pow(v2, -2.0 / n) * g1;
  double t2 = (n2 / n) * std::pow(a, 2.0 * n1 / n) * std::pow(v1, -2.0 / n) *
              std::pow(v2, 2.0 * n1 / (n * n2)) * g2;
  return t1 + t2;
}

double optimal_scale(const ComponentMoments& c1in, const ComponentMoments& c2in) {
  ComponentMoments c1 = normalize(c1in);
  ComponentMoments c2 = normalize(c2in);
  double a_g = (std::pow(c1.volume, 1.0 / c1.n) / std::pow(c2.volume, 1.0 / c2.n)) *
               std::sqrt(*c1.g / *c2.g);
  double a_e = std::sqrt((static_cast<double>(c2.n) * *c1.e) / (static_cast<double>(c1.n) * *c2.e));
  if (std::abs(a_g - a_e) > 1e-9 * a_g)
    raise(Errc::inconsistent_moments, "optimal-scale formulas disagree; inconsistent inputs");
  return a_g;
}

double optimal_product_nsm(const std::vector<std::pair<int, double>>& parts) {
  if (parts.empty()) raise(Errc::invalid_argument, "optimal_product_nsm: empty part list");
  double n = 0, acc = 0;
  for (auto [ni, gi] : parts) {
    if (ni < 1) raise(Errc::invalid_argument, "part dimension must be positive");
    require_positive(gi, "part NSM");
    n += ni;
    acc += ni * std::log(gi);
  }
  return std::exp(acc / n);
}

GeneratorMatrix product_generator(const std::vector<std::pair<const GeneratorMatrix*, double>>& parts) {
  if (parts.empty()) raise(Errc::invalid_argument, "product_generator: empty part list");
  int n = 0;
  for (const auto& [b, a] : parts) {
    if (!b) raise(Errc::invalid_argument, "product_generator: null part");
    require_positive(a, "part scale");
    n += b->dim();
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  int off = 0;
  for (const auto& [b, a] : parts) {
    const int d = b->dim();
    out.block(off, off, d, d) = a * b->rows();
    off += d;
  }
  return GeneratorMatrix(std::move(out));
}

GeneratorMatrix laminate_generator(const GeneratorMatrix& b1, const Eigen::RowVectorXd& h, double a) {
  const int n1 = b1.dim();
  if (h.size() != n1) raise(Errc::dimension_mismatch, "lamination offset must have the base dimension");
  require_positive(a, "layer separation");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n1 + 1, n1 + 1);
  out.topLeftCorner(n1, n1) = b1.rows();
  out.bottomLeftCorner(1, n1) = h;
  out(n1, n1) = a;
  return GeneratorMatrix(std::move(out));
}

double lamination_bound(double g1, int n) {
  require_positive(g1, "G1");
  if (n < 2) raise(Errc::invalid_argument, "lamination bound needs n >= 2");
  return std::pow(g1, 1.0 - 1.0 / n) / std::pow(12.0, 1.0 / n);
}

ProductPlan plan_product(const std::vector<ProductPart>& parts) {
  if (parts.empty()) raise(Errc::invalid_argument, "product plan: empty part list");
  ProductPlan plan;
  double agg_n = 0, agg_v = 0, agg_e = 0;
  for (const ProductPart& p : parts) {
    if (!p.lattice) raise(Errc::invalid_argument, "product plan: null lattice");
    const Lattice& lat = *p.lattice;
    if (!lat.golden() && !lat.has_basis())
      raise(Errc::no_generator, "product plan: " + lat.name() + " has neither golden NSM nor basis");
    if (!lat.golden())
      raise(Errc::invalid_argument, "product plan: no golden NSM for " + lat.name());
    ProductPlan::Part part;
    part.name = lat.name();
    part.n = lat.dim();
    part.volume = lat.has_basis() ? lat.volume() : 1.0;
    part.g = lat.golden()->value;
    part.e = e_from_g(part.n, part.volume, part.g);
    if (plan.parts.empty()) {
      part.scale = p.explicit_scale.value_or(1.0);
      if (p.explicit_scale) require_positive(*p.explicit_scale, "scale");
      agg_n = part.n;
      agg_v = std::pow(part.scale, part.n) * part.volume;
      agg_e = part.scale * part.scale * part.e;
    } else {
      double a;
      if (p.explicit_scale) {
        require_positive(*p.explicit_scale, "scale");
        a = *p.explicit_scale;
      } else {
        // a_opt = sqrt(n2 E1 / (n1 E2)) against the aggregate built so far.
        ComponentMoments agg{static_cast<int>(agg_n), agg_v, agg_e, std::nullopt};
        ComponentMoments nxt{part.n, part.volume, part.e, std::nullopt};
        a = optimal_scale(agg, nxt);
      }
      part.scale = a;
      agg_n += part.n;
      agg_v *= std::pow(a, part.n) * part.volume;
      agg_e += a * a * part.e;
    }
    plan.parts.push_back(std::move(part));
  }
  plan.total_dim = static_cast<int>(agg_n);
  plan.volume = agg_v;
  plan.predicted_e_per_dim = agg_e / agg_n;
  plan.predicted_g = agg_e / (agg_n * std::pow(agg_v, 2.0 / agg_n));
  return plan;
}

std::vector<ProductPart> parse_product_spec(const std::string& spec) {
  // Split on '*', then fold empty segments (and '@'-only tails) back into the
  // preceding name as a dual suffix.
  std::vector<std::string> tokens;
  std::string cur;
  for (std::size_t i = 0;; ++i) {
    if (i == spec.size() || spec[i] == '*') {
      tokens.push_back(cur);
      cur.clear();
      if (i == spec.size()) break;
    } else if (!std::isspace(static_cast<unsigned char>(spec[i]))) {
      cur += spec[i];
    }
  }
  std::vector<std::string> names;
  for (const std::string& t : tokens) {
    if (t.empty() || t[0] == '@') {
      if (names.empty()) raise(Errc::parse_error, "product spec: dangling '*' in '" + spec + "'");
      std::size_t at = names.back().find('@');
      if (at == std::string::npos) {
        names.back() += "*" + t;
      } else {
        raise(Errc::parse_error, "product spec: misplaced '*' after scale in '" + spec + "'");
      }
    } else {
      names.push_back(t);
    }
  }
  if (names.empty()) raise(Errc::parse_error, "product spec: empty specification");
  std::vector<ProductPart> parts;
  for (const std::string& tok : names) {
    ProductPart part;
    std::string name = tok;
    std::size_t at = tok.find('@');
    if (at != std::string::npos) {
      name = tok.substr(0, at);
      std::string sv = tok.substr(at + 1);
      try {
        std::size_t pos = 0;
        double a = std::stod(sv, &pos);
        if (pos != sv.size() || !(a > 0)) throw std::invalid_argument("scale");
        part.explicit_scale = a;
      } catch (const std::exception&) {
        raise(Errc::parse_error, "product spec: bad scale '" + sv + "'");
      }
    }
    if (name.empty()) raise(Errc::parse_error, "product spec: empty lattice name");
    part.lattice = get_lattice(name);
    parts.push_back(std::move(part));
  }
  return parts;
}

GeneratorMatrix plan_generator(const std::vector<ProductPart>& parts) {
  ProductPlan plan = plan_product(parts);
  std::vector<std::pair<const GeneratorMatrix*, double>> blocks;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Lattice& lat = *parts[i].lattice;
    blocks.emplace_back(&lat.basis(), plan.parts[i].scale);
  }
  return product_generator(blocks);
}

}  // namespace latq
