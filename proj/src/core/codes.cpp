#include "core/codes.hpp"

#include <bit>
#include <cstdlib>

#include "core/error.hpp"

namespace latq {

std::vector<std::uint32_t> golay24_generator() {
  // [I12 | A] with A the bordered circulant on the quadratic residues mod 11.
  static const int qr[5] = {1, 3, 4, 5, 9};
  std::vector<std::uint32_t> rows(12, 0);
  for (int i = 0; i < 12; ++i) rows[i] |= 1u << i;
  // Row 0 borders the circulant: parity with all 11 cyclic positions.
  for (int j = 1; j < 12; ++j) rows[0] |= 1u << (12 + j);
  for (int i = 1; i < 12; ++i) {
    rows[i] |= 1u << 12;  // border column
    rows[i] |= 1u << (12 + i);  // difference 0 counts as a residue
    for (int q : qr) rows[i] |= 1u << (12 + 1 + (i - 1 + q) % 11);
  }
  return rows;
}

std::vector<std::uint32_t> reed_muller_1_4_generator() {
  std::vector<std::uint32_t> rows;
  rows.push_back(0xFFFFu);  // constant function
  for (int a = 0; a < 4; ++a) {
    std::uint32_t r = 0;
    for (int p = 0; p < 16; ++p)
      if (p & (1 << a)) r |= 1u << p;
    rows.push_back(r);
  }
  return rows;
}

CodeStats analyze_code(const std::vector<std::uint32_t>& gen, int length) {
  CodeStats s;
  s.length = length;
  s.dimension = static_cast<int>(gen.size());
  s.min_weight = length;
  s.doubly_even = true;
  const std::uint32_t mask = length == 32 ? 0xFFFFFFFFu : ((1u << length) - 1);
  for (std::uint32_t m = 1; m < (1u << gen.size()); ++m) {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < gen.size(); ++i)
      if (m & (1u << i)) w ^= gen[i];
    int wt = std::popcount(w & mask);
    if (wt < s.min_weight) s.min_weight = wt;
    if (wt % 4 != 0) s.doubly_even = false;
  }
  s.self_dual = true;
  if (2 * s.dimension != length) s.self_dual = false;
  for (std::size_t i = 0; s.self_dual && i < gen.size(); ++i)
    for (std::size_t j = i; s.self_dual && j < gen.size(); ++j)
      if (std::popcount(gen[i] & gen[j]) % 2 != 0) s.self_dual = false;
  return s;
}

std::vector<std::vector<long long>> hnf_basis(std::vector<std::vector<long long>> rows, int n,
                                              long long modulus) {
  if (modulus < 1) raise(Errc::invalid_argument, "hnf_basis: modulus must be positive");
  // Entries stay in [0, modulus): reducing a row modulo the modulus only
  // subtracts multiples of modulus*e_i, which the lattice contains.
  auto reduce_mod = [&](std::vector<long long>& r) {
    for (auto& v : r) {
      v %= modulus;
      if (v < 0) v += modulus;
    }
  };
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != n) raise(Errc::dimension_mismatch, "hnf_basis: row size");
    reduce_mod(r);
  }

  std::vector<std::vector<long long>> basis;
  std::size_t lo = 0;
  for (int col = 0; col < n; ++col) {
    // modulus*e_col keeps the column nonempty and caps the pivot.
    std::vector<long long> mrow(static_cast<std::size_t>(n), 0);
    mrow[static_cast<std::size_t>(col)] = modulus;
    rows.push_back(std::move(mrow));
    // Euclidean elimination in this column over the remaining rows.
    while (true) {
      std::size_t p = rows.size();
      for (std::size_t i = lo; i < rows.size(); ++i)
        if (rows[i][static_cast<std::size_t>(col)] != 0 &&
            (p == rows.size() ||
             std::llabs(rows[i][static_cast<std::size_t>(col)]) <
                 std::llabs(rows[p][static_cast<std::size_t>(col)])))
          p = i;
      if (p == rows.size()) raise(Errc::singular_matrix, "hnf_basis: lattice is not full rank");
      bool done = true;
      long long pv = rows[p][static_cast<std::size_t>(col)];
      for (std::size_t i = lo; i < rows.size(); ++i) {
        if (i == p || rows[i][static_cast<std::size_t>(col)] == 0) continue;
        long long q = rows[i][static_cast<std::size_t>(col)] / pv;
        for (int j = 0; j < n; ++j)
          rows[i][static_cast<std::size_t>(j)] -= q * rows[p][static_cast<std::size_t>(j)];
        reduce_mod(rows[i]);
        if (rows[i][static_cast<std::size_t>(col)] != 0) done = false;
      }
      if (done) {
        std::swap(rows[lo], rows[p]);
        break;
      }
    }
    basis.push_back(rows[lo]);
    ++lo;
  }
  return basis;
}

std::vector<std::vector<long long>> coxeter_todd_eisenstein_basis() {
  // K12 over the Eisenstein integers: six coordinates x_i = a_i + b_i*w with
  // x_1 = ... = x_6 (mod theta), theta = 1 + 2w, and sum x_i = 0 (mod 3).
  // In (a1,b1,...,a6,b6) coordinates those are congruences mod 3.
  const int n = 12;
  std::vector<std::vector<long long>> gens;
  auto vec = [&]() { return std::vector<long long>(n, 0); };
  for (int i = 1; i < 6; ++i) {
    auto g = vec();  // theta*(e_1 - e_i): theta = (a,b) = (1,2)
    g[0] = 1;
    g[1] = 2;
    g[2 * i] = -1;
    g[2 * i + 1] = -2;
    gens.push_back(g);
    auto h = vec();  // w*theta*(e_1 - e_i): w*theta = (-2,-1)
    h[0] = -2;
    h[1] = -1;
    h[2 * i] = 2;
    h[2 * i + 1] = 1;
    gens.push_back(h);
  }
  auto c = vec();  // (1,1,1,1,1,1)
  for (int i = 0; i < 6; ++i) c[2 * i] = 1;
  gens.push_back(c);
  auto wc = vec();  // w*(1,1,1,1,1,1)
  for (int i = 0; i < 6; ++i) wc[2 * i + 1] = 1;
  gens.push_back(wc);
  return hnf_basis(std::move(gens), n, 3);
}

std::vector<std::vector<long long>> barnes_wall_16_basis() {
  // Construction B on RM(1,4): b mod 2 in the code and sum(b) = 0 mod 4.
  const int n = 16;
  std::vector<std::vector<long long>> gens;
  for (std::uint32_t row : reed_muller_1_4_generator()) {
    std::vector<long long> g(n, 0);
    for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(j)] = (row >> j) & 1u;
    gens.push_back(std::move(g));
  }
  for (int i = 1; i < n; ++i) {
    std::vector<long long> g(n, 0);
    g[0] = 2;
    g[static_cast<std::size_t>(i)] = 2;
    gens.push_back(std::move(g));
  }
  return hnf_basis(std::move(gens), n, 4);
}

std::vector<std::vector<long long>> leech_basis() {
  // Integer model of the Leech lattice (the usual coordinates times sqrt(8)):
  // a = m (mod 2) componentwise, ((a - m)/2 mod 2) in the Golay code, and
  // sum(a) = 4m (mod 8), for m in {0,1}.
  const int n = 24;
  std::vector<std::vector<long long>> gens;
  for (std::uint32_t row : golay24_generator()) {
    std::vector<long long> g(n, 0);
    for (int j = 0; j < n; ++j) g[static_cast<std::size_t>(j)] = 2 * ((row >> j) & 1u);
    gens.push_back(std::move(g));
  }
  for (int i = 1; i < n; ++i) {
    std::vector<long long> g(n, 0);
    g[0] = 4;
    g[static_cast<std::size_t>(i)] = 4;
    gens.push_back(std::move(g));
  }
  std::vector<long long> s(n, 1);
  s[0] = -3;
  gens.push_back(std::move(s));
  return hnf_basis(std::move(gens), n, 8);
}

}  // namespace latq
