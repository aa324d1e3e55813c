#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace latq {

// One row of the best-known-quantizers table: previously reported NSM,
// conjectured lower bound, Zador upper bound, and the best product lattice
// with its improvement flags.
struct TableRow {
  int n;
  double reported;
  const char* reported_name;
  int reported_digits;  // 9 = exact to printed precision, 5 = numerical estimate
  double lower;
  double upper;
  double product;  // 0 when no product column exists (n = 1)
  const char* product_name;
  int product_digits;
  bool flag_g;  // product beats the best previously reported NSM
  bool flag_u;  // product lies below the Zador upper bound
};

const std::array<TableRow, 48>& table1();

// Best-known-precision NSM for the reported lattice in dimension n. Where a
// published closed form exists (Z, A2, A3*, D4, the D_n* family, E8) this is
// the exact value, which agrees with the printed table to all printed digits;
// otherwise it is the printed constant. Product compositions are computed
// from these seeds.
double reported_seed(int n);

// Exact NSM of D_n*, integrated in closed form over the cube split by the
// coset decision boundary sum|x_i| = n/4.
double dn_star_nsm(int n);

struct GoldenConstant {
  std::string name;  // lattice or composition; empty for anonymous bounds
  int dim;
  double nsm;
  int digits;
  std::string column;  // best-reported | cs-lower | zador-upper | best-product
};

// All tabulated constants, tagged with printed precision and source column.
std::vector<GoldenConstant> golden_table();

std::string golden_table_csv();

// Reported-column NSM for a named lattice, if the name appears in the table.
struct GoldenLookup {
  double value;
  int digits;
  std::string source;
};
std::optional<GoldenLookup> reported_golden(const std::string& name);

}  // namespace latq
