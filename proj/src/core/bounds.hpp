#pragma once

#include <string>
#include <vector>

namespace latq {

struct BoundsRow {
  int n = 0;
  double zador_upper = 0;
  double cs_lower = 0;
  double best_reported = 0;
  std::string best_reported_name;
  int reported_digits = 9;
  double best_product = 0;                  // 0 for n = 1
  std::string best_product_name;            // composition string, factors by descending dimension
  std::vector<std::string> product_leaves;  // flattened factor names
  bool flag_g = false;                      // product beats the best reported lattice
  bool flag_u = false;                      // product lies below the Zador bound
};

// Gamma(1+n/2)^(2/n) * Gamma(1+2/n) / (n*pi).
double zador_upper(int n);

// Conjectured lower bound, tabulated to printed precision for n = 1..48.
double cs_lower(int n);

// Dynamic program over best-known NSMs: best[n] is the smaller of the
// reported lattice and the best split product; compositions are flattened
// factor multisets.
std::vector<BoundsRow> best_product_table(int n_max);

}  // namespace latq
