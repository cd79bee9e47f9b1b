#pragma once

// Test-side oracles that share as little as possible with the library.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "prymcheck/dihedral.hpp"
#include "prymcheck/lattice.hpp"

namespace testing_support {

using namespace prymcheck;

inline IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

/// Determinant by cofactor-free fraction arithmetic on mpq, independent of
/// the Bareiss code in the library.
inline Integer rational_det(const IntegerMatrix& m) {
  const auto n = m.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det.get_num();
}

/// [sup : sub] from Gram determinants: index^2 = det G(sub) / det G(sup).
/// Requires sub to be a subgroup of sup of the same rank.
inline Integer gram_index(const IntegerMatrix& sub, const IntegerMatrix& sup) {
  const auto gs = rational_det(sub * sub.transpose());
  const auto gp = rational_det(sup * sup.transpose());
  const Integer sq = gs / gp;
  Integer root = sqrt(sq);
  if (root * root != sq || sq * gp != gs) return -1;
  return root;
}

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Valid datum with prescribed s1 for even n: first the even pairs, then the
/// odd pairs, so the product condition holds pairwise.
inline MonodromyDatum paired_datum(std::int64_t n, std::int64_t genus, std::int64_t s1) {
  MonodromyDatum d{n, genus, {}};
  for (std::int64_t i = 0; i < (2 * genus + 2 - s1) / 2; ++i) d.exponents.insert(d.exponents.end(), {0, 0});
  for (std::int64_t i = 0; i < s1 / 2; ++i) d.exponents.insert(d.exponents.end(), {1, 1});
  return d;
}

/// H_1 of the cover from its cellular chain complex: vertices are the 2n
/// sheets, edge (c, i) runs from c to c*g_i, and the 2-cells are one product
/// relator per sheet plus one disk per 2-cycle of each g_i. Deck
/// transformations act by left multiplication on cells.
struct CellularHomology {
  std::size_t rank = 0;
  std::map<std::size_t, IntegerMatrix> deck;  // by element id

  const IntegerMatrix& of(DihedralElement e, std::int64_t n) const { return deck.at(element_id(e, n)); }
};

inline CellularHomology cellular_homology(const MonodromyDatum& d) {
  const auto n = d.n;
  const std::size_t sheets = static_cast<std::size_t>(2 * n);
  const std::size_t b = d.branch_count();
  const std::size_t edges = sheets * b;
  auto right = [&](std::size_t c, DihedralElement g) { return element_id(dn_mul(element_from_id(c, n), g, n), n); };

  IntegerMatrix d1(sheets, edges);
  for (std::size_t c = 0; c < sheets; ++c) {
    for (std::size_t i = 0; i < b; ++i) {
      d1(right(c, d.local_monodromy(i)), c * b + i) += 1;
      d1(c, c * b + i) -= 1;
    }
  }
  std::vector<std::vector<Integer>> faces;
  for (std::size_t c = 0; c < sheets; ++c) {
    std::vector<Integer> f(edges);
    auto at = c;
    for (std::size_t i = 0; i < b; ++i) {
      f[at * b + i] += 1;
      at = right(at, d.local_monodromy(i));
    }
    faces.push_back(std::move(f));
  }
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t c = 0; c < sheets; ++c) {
      const auto c2 = right(c, d.local_monodromy(i));
      if (c < c2) {
        std::vector<Integer> f(edges);
        f[c * b + i] += 1;
        f[c2 * b + i] += 1;
        faces.push_back(std::move(f));
      }
    }
  }
  const auto cycles = kernel_lattice(d1);
  const auto z = cycles.rank();
  std::vector<std::vector<Integer>> rows;
  for (const auto& f : faces) {
    bool ok = false;
    rows.push_back(cycles.coordinates(f, ok));
    if (!ok) throw std::runtime_error("2-cell boundary is not a cycle");
  }
  const auto boundaries = IntegerMatrix::from_rows(rows, z);
  // Functionals on Z_1 vanishing on B_1 give coordinates on H_1 = Z_1 / B_1
  // when the quotient is free.
  const auto phi = kernel_lattice(boundaries).basis();
  const auto s = snf(phi);
  for (const auto& f : s.factors)
    if (f != 1) throw std::runtime_error("torsion in cellular H_1");
  const auto q = phi.rows();
  IntegerMatrix pick(z, q);
  for (std::size_t j = 0; j < q; ++j) pick(j, j) = 1;
  const auto section = s.right * pick * s.left;

  CellularHomology out;
  out.rank = q;
  for (std::size_t id = 0; id < sheets; ++id) {
    const auto g = element_from_id(id, n);
    IntegerMatrix a(z, z);
    for (std::size_t k = 0; k < z; ++k) {
      std::vector<Integer> v(edges);
      const auto zr = cycles.basis().row(k);
      for (std::size_t c = 0; c < sheets; ++c)
        for (std::size_t i = 0; i < b; ++i) v[element_id(dn_mul(g, element_from_id(c, n), n), n) * b + i] += zr[c * b + i];
      bool ok = false;
      const auto co = cycles.coordinates(v, ok);
      if (!ok) throw std::runtime_error("deck image is not a cycle");
      for (std::size_t j = 0; j < z; ++j) a(j, k) = co[j];
    }
    out.deck[id] = phi * a * section;
  }
  return out;
}

}  // namespace testing_support
