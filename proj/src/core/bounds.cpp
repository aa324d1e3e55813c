#include "core/bounds.hpp"

#include <cmath>

#include "core/compose.hpp"
#include "core/error.hpp"
#include "core/table_data.hpp"

namespace latq {

double zador_upper(int n) {
  if (n < 1) raise(Errc::invalid_argument, "zador_upper: n must be positive");
  const double nd = n;
  double lg = (2.0 / nd) * std::lgamma(1.0 + nd / 2.0) + std::lgamma(1.0 + 2.0 / nd) -
              std::log(nd * M_PI);
  return std::exp(lg);
}

double cs_lower(int n) {
  if (n < 1 || n > 48)
    raise(Errc::invalid_argument, "cs_lower: only tabulated for 1 <= n <= 48");
  return table1()[static_cast<std::size_t>(n - 1)].lower;
}

namespace {

struct Best {
  double g = 0;
  std::vector<int> leaf_rows;  // indices into table1(), sorted by descending dimension
};

std::vector<int> merge_leaves(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto dim_of = [](int row) { return table1()[static_cast<std::size_t>(row)].n; };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && dim_of(a[i]) >= dim_of(b[j])))
      out.push_back(a[i++]);
    else
      out.push_back(b[j++]);
  }
  return out;
}

double leaves_nsm(const std::vector<int>& leaves) {
  std::vector<std::pair<int, double>> parts;
  parts.reserve(leaves.size());
  for (int row : leaves) {
    const TableRow& r = table1()[static_cast<std::size_t>(row)];
    parts.emplace_back(r.n, reported_seed(r.n));
  }
  return optimal_product_nsm(parts);
}

}  // namespace

std::vector<BoundsRow> best_product_table(int n_max) {
  if (n_max < 1 || n_max > 48)
    raise(Errc::invalid_argument, "best_product_table: n_max must be in 1..48");
  std::vector<Best> best(static_cast<std::size_t>(n_max) + 1);
  std::vector<BoundsRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const TableRow& t = table1()[static_cast<std::size_t>(n - 1)];
    BoundsRow row;
    row.n = n;
    row.zador_upper = zador_upper(n);
    row.cs_lower = t.lower;
    row.best_reported = t.reported;
    row.best_reported_name = t.reported_name;
    row.reported_digits = t.reported_digits;

    double prod_g = 0;
    std::vector<int> prod_leaves;
    for (int n1 = 1; 2 * n1 <= n; ++n1) {
      const int n2 = n - n1;
      std::vector<int> leaves = merge_leaves(best[static_cast<std::size_t>(n1)].leaf_rows,
                                             best[static_cast<std::size_t>(n2)].leaf_rows);
      double g = leaves_nsm(leaves);
      bool better = prod_leaves.empty() || g < prod_g * (1.0 - 1e-15);
      bool tie = !prod_leaves.empty() && std::abs(g - prod_g) <= prod_g * 1e-15;
      if (better || (tie && leaves.size() < prod_leaves.size())) {
        prod_g = g;
        prod_leaves = std::move(leaves);
      }
    }
    if (n >= 2) {
      row.best_product = prod_g;
      for (int leaf : prod_leaves)
        row.product_leaves.push_back(table1()[static_cast<std::size_t>(leaf)].reported_name);
      std::string comp;
      for (std::size_t i = 0; i < row.product_leaves.size(); ++i) {
        if (i) comp += "*";
        comp += row.product_leaves[i];
      }
      row.best_product_name = comp;
      row.flag_g = prod_g < row.best_reported;
      row.flag_u = prod_g < row.zador_upper;
    }

    Best b;
    if (n >= 2 && prod_g < t.reported) {
      b.g = prod_g;
      b.leaf_rows = prod_leaves;
    } else {
      b.g = t.reported;
      b.leaf_rows = {n - 1};
    }
    best[static_cast<std::size_t>(n)] = std::move(b);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace latq
