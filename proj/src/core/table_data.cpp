#include "core/table_data.hpp"

#include <cmath>
#include <cstdio>

#include "core/error.hpp"
#include "core/rational.hpp"

namespace latq {

namespace {

Rational pow_rat(const Rational& b, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Rational factorial_rat(int k) {
  Rational r(1);
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// int over [0,1]^n cap {sum u <= t} of u1^2, by inclusion-exclusion over
// corner shifts of the positive-orthant simplex.
Rational cube_simplex_m2(int n, const Rational& t) {
  Rational total(0);
  for (int k = 0; k <= n; ++k) {
    Rational s = t - k;
    if (s <= 0) continue;
    Rational m2 = 2 * pow_rat(s, n + 2) / factorial_rat(n + 2);
    Rational m1 = pow_rat(s, n + 1) / factorial_rat(n + 1);
    Rational m0 = pow_rat(s, n) / factorial_rat(n);
    Rational term = Rational(binom(n - 1, k)) * m2 +
                    Rational(binom(n - 1, k - 1)) * (m2 + 2 * m1 + m0);
    if (k % 2)
      total -= term;
    else
      total += term;
  }
  return total;
}

}  // namespace

double dn_star_nsm(int n) {
  if (n < 2 || n > 24) raise(Errc::invalid_argument, "dn_star_nsm: n out of range");
  // E = (n/2) * integral; the two cosets of Z^n split the unit cube at the
  // L1 decision boundary, and V(D_n*) = 1/2.
  Rational e = Rational(n) * cube_simplex_m2(n, Rational(n, 2)) / 2;
  return to_double(e) / (n * std::pow(0.5, 2.0 / n));
}

double reported_seed(int n) {
  switch (n) {
    case 1: return 1.0 / 12.0;
    case 2: return 5.0 / (36.0 * std::sqrt(3.0));          // A2
    case 3: return 19.0 * std::cbrt(4.0) / 384.0;          // A3*
    case 4: return 13.0 / (120.0 * std::sqrt(2.0));        // D4
    case 5: return dn_star_nsm(5);                         // D5*
    case 8: return 929.0 / 12960.0;                        // E8
    case 13: case 14: case 15: case 17: case 18: case 19: case 20:
      return dn_star_nsm(n);
    default:
      if (n < 1 || n > 48) raise(Errc::invalid_argument, "reported_seed: n out of range");
      return table1()[static_cast<std::size_t>(n - 1)].reported;
  }
}

const std::array<TableRow, 48>& table1() {
  static const std::array<TableRow, 48> rows = {{
      {1, 0.083333333, "Z", 9, 0.083333333, 0.500000000, 0.0, "", 0, false, false},
      {2, 0.080187537, "A2", 9, 0.080187537, 0.159154943, 0.083333333, "Z*Z", 9, false, true},
      {3, 0.078543281, "A3*", 9, 0.077874985, 0.115802581, 0.081222715, "A2*Z", 9, false, true},
      {4, 0.076603235, "D4", 9, 0.076087080, 0.099735570, 0.079714343, "A3**Z", 9, false, true},
      {5, 0.075625443, "D5*", 9, 0.074654327, 0.091319469, 0.077904301, "D4*Z", 9, false, true},
      {6, 0.074243697, "E6*", 9, 0.073474906, 0.086084334, 0.076858706, "D5**Z", 9, false, true},
      {7, 0.073116493, "E7*", 9, 0.072483503, 0.082478806, 0.075478834, "E6**Z", 9, false, true},
      {8, 0.071682099, "E8", 9, 0.071636064, 0.079824101, 0.074321725, "E7**Z", 9, false, true},
      {9, 0.071622594, "AE9", 9, 0.070901661, 0.077775626, 0.072891732, "E8*Z", 9, false, true},
      {10, 0.070813818, "D10+", 9, 0.070257874, 0.076139300, 0.072715487, "AE9*Z", 9, false, true},
      {11, 0.070426259, "A11^3", 9, 0.069688002, 0.074797093, 0.071869620, "D10+*Z", 9, false, true},
      {12, 0.070095600, "K12", 9, 0.069179323, 0.073672867, 0.071420842, "A11^3*Z", 9, false, true},
      {13, 0.074873919, "D13*", 9, 0.068721956, 0.072715163, 0.071034583, "K12*Z", 9, true, true},
      {14, 0.074954492, "D14*", 9, 0.068308096, 0.071887858, 0.071455542, "K12*A2", 9, true, true},
      {15, 0.075039738, "D15*", 9, 0.067931488, 0.071164794, 0.071709124, "K12*A3*", 9, true, false},
      {16, 0.06830, "L16", 5, 0.067587055, 0.070526523, 0.071668753, "K12*D4", 9, false, false},
      {17, 0.075216213, "D17*", 9, 0.067270625, 0.069958259, 0.06910, "L16*Z", 5, true, true},
      {18, 0.075304924, "D18*", 9, 0.066978741, 0.069448546, 0.06953, "L16*A2", 5, true, false},
      {19, 0.075392902, "D19*", 9, 0.066708503, 0.068988355, 0.06982, "L16*A3*", 5, true, false},
      {20, 0.075479665, "D20*", 9, 0.066457468, 0.068570467, 0.06988, "L16*D4", 5, true, false},
      {21, 0.075554858, "A21*", 9, 0.066223553, 0.068189035, 0.06998, "L16*D5*", 5, true, false},
      {22, 0.075577414, "A22*", 9, 0.066004976, 0.067839266, 0.06987, "L16*E6*", 5, true, false},
      {23, 0.075601888, "A23*", 9, 0.065800200, 0.067517194, 0.06973, "L16*E7*", 5, true, false},
      {24, 0.06577, "L24", 5, 0.065607893, 0.067219503, 0.06941, "L16*E8", 5, false, false},
      {25, 0.075655156, "A25*", 9, 0.065426891, 0.066943400, 0.06640, "L24*Z", 5, true, true},
      {26, 0.075683386, "A26*", 9, 0.065256179, 0.066686513, 0.06678, "L24*A2", 5, true, false},
      {27, 0.075712385, "A27*", 9, 0.065094858, 0.066446812, 0.06708, "L24*A3*", 5, true, false},
      {28, 0.075741975, "A28*", 9, 0.064942137, 0.066222551, 0.06722, "L24*D4", 5, true, false},
      {29, 0.075772009, "A29*", 9, 0.064797312, 0.066012219, 0.06737, "L24*D5*", 5, true, false},
      {30, 0.075802366, "A30*", 9, 0.064659756, 0.065814499, 0.06738, "L24*E6*", 5, true, false},
      {31, 0.075832940, "A31*", 9, 0.064528911, 0.065628241, 0.06736, "L24*E7*", 5, true, false},
      {32, 0.075863646, "A32*", 9, 0.064404271, 0.065452432, 0.06720, "L24*E8", 5, true, false},
      {33, 0.075894409, "A33*", 9, 0.064285386, 0.065286178, 0.06732, "L24*AE9", 5, true, false},
      {34, 0.075925169, "A34*", 9, 0.064171846, 0.065128688, 0.06722, "L24*D10+", 5, true, false},
      {35, 0.075955874, "A35*", 9, 0.064063282, 0.064979257, 0.06720, "L24*A11^3", 5, true, false},
      {36, 0.075986480, "A36*", 9, 0.063959359, 0.064837254, 0.06718, "L24*K12", 5, true, false},
      {37, 0.076016949, "A37*", 9, 0.063859771, 0.064702116, 0.06757, "L24*K12*Z", 5, true, false},
      {38, 0.076047252, "A38*", 9, 0.063764240, 0.064573336, 0.06781, "L24*K12*A2", 5, true, false},
      {39, 0.076077363, "A39*", 9, 0.063672511, 0.064450456, 0.06799, "L24*K12*A3*", 5, true, false},
      {40, 0.076107259, "A40*", 9, 0.063584352, 0.064333062, 0.06677, "L24*L16", 5, true, false},
      {41, 0.076136923, "A41*", 9, 0.063499548, 0.064220781, 0.06713, "L24*L16*Z", 5, true, false},
      {42, 0.076166341, "A42*", 9, 0.063417902, 0.064113272, 0.06736, "L24*L16*A2", 5, true, false},
      {43, 0.076195500, "A43*", 9, 0.063339234, 0.064010223, 0.06753, "L24*L16*A3*", 5, true, false},
      {44, 0.076224390, "A44*", 9, 0.063263376, 0.063911352, 0.06761, "L24*L16*D4", 5, true, false},
      {45, 0.076253004, "A45*", 9, 0.063190174, 0.063816399, 0.06770, "L24*L16*D5*", 5, true, false},
      {46, 0.076281336, "A46*", 9, 0.063119483, 0.063725126, 0.06770, "L24*L16*E6*", 5, true, false},
      {47, 0.076309381, "A47*", 9, 0.063051171, 0.063637315, 0.06768, "L24*L16*E7*", 5, true, false},
      {48, 0.076337136, "A48*", 9, 0.062985115, 0.063552764, 0.06577, "L24*L24", 5, true, false},
  }};
  return rows;
}

std::vector<GoldenConstant> golden_table() {
  std::vector<GoldenConstant> out;
  out.reserve(48 * 4);
  for (const TableRow& r : table1()) {
    out.push_back({r.reported_name, r.n, r.reported, r.reported_digits, "best-reported"});
    out.push_back({"", r.n, r.lower, 9, "cs-lower"});
    out.push_back({"", r.n, r.upper, 9, "zador-upper"});
    if (r.n > 1) out.push_back({r.product_name, r.n, r.product, r.product_digits, "best-product"});
  }
  return out;
}

std::string golden_table_csv() {
  std::string out = "name,dim,nsm,precision,column\n";
  char buf[128];
  for (const GoldenConstant& g : golden_table()) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.*f,%d,%s\n", g.name.c_str(), g.dim, g.digits, g.nsm,
                  g.digits, g.column.c_str());
    out += buf;
  }
  return out;
}

std::optional<GoldenLookup> reported_golden(const std::string& name) {
  for (const TableRow& r : table1()) {
    if (name == r.reported_name)
      return GoldenLookup{reported_seed(r.n), r.reported_digits,
                          "table row n=" + std::to_string(r.n)};
  }
  return std::nullopt;
}

}  // namespace latq
