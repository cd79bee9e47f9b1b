#pragma once

// Exact integer lattice toolkit: dense arbitrary-precision matrices, Hermite
// and Smith normal forms, kernels, saturation and finite indices. Matrices
// act on column vectors; sublattice bases are stored as rows.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace prymcheck {

using Integer = mpz_class;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);
  /// Rows of `top` followed by rows of `bottom`; column counts must agree.
  static IntegerMatrix vstack(const IntegerMatrix& top, const IntegerMatrix& bottom);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Integer> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<const Integer> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  [[nodiscard]] IntegerMatrix transpose() const;
  /// Rows [first, first + count).
  [[nodiscard]] IntegerMatrix row_block(std::size_t first, std::size_t count) const;
  /// Columns [first, first + count).
  [[nodiscard]] IntegerMatrix col_block(std::size_t first, std::size_t count) const;
  [[nodiscard]] Integer trace() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
  friend IntegerMatrix operator-(const IntegerMatrix& a);
  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

[[nodiscard]] IntegerMatrix power(const IntegerMatrix& m, unsigned exponent);

struct HermiteForm {
  IntegerMatrix form;       // H = U * M, row Hermite normal form
  IntegerMatrix transform;  // U, unimodular
  std::size_t rank = 0;     // number of nonzero rows of H
};

/// Row Hermite normal form: echelon, positive pivots, entries above each
/// pivot reduced into [0, pivot). Zero rows sink to the bottom.
[[nodiscard]] HermiteForm hnf(const IntegerMatrix& m);

struct SmithForm {
  std::vector<Integer> factors;  // nonzero invariant factors d1 | d2 | ...
  IntegerMatrix left;            // U
  IntegerMatrix right;           // V, with U * M * V diagonal
  IntegerMatrix right_inverse;   // V^{-1}
};

[[nodiscard]] SmithForm snf(const IntegerMatrix& m);

/// Fraction-free (Bareiss) determinant of a square matrix.
[[nodiscard]] Integer determinant(const IntegerMatrix& m);

/// Coefficients c0, c1, ..., cN of det(x I - M), lowest degree first.
using Polynomial = std::vector<Integer>;
[[nodiscard]] Polynomial characteristic_polynomial(const IntegerMatrix& m);
[[nodiscard]] Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// A subgroup of Z^N given by independent row vectors kept in Hermite
/// normal form, so equal lattices have identical bases.
class Sublattice {
 public:
  /// Lattice spanned by the rows of `generators` (dependent rows allowed).
  Sublattice(std::size_t ambient_rank, const IntegerMatrix& generators);

  static Sublattice full(std::size_t ambient_rank);
  static Sublattice zero(std::size_t ambient_rank);

  [[nodiscard]] std::size_t ambient_rank() const noexcept { return ambient_; }
  [[nodiscard]] std::size_t rank() const noexcept { return basis_.rows(); }
  [[nodiscard]] const IntegerMatrix& basis() const noexcept { return basis_; }
  [[nodiscard]] bool contains(std::span<const Integer> v) const;
  [[nodiscard]] bool contains(const Sublattice& other) const;

  /// Coordinates of v in the basis, or empty if v is not in the lattice.
  [[nodiscard]] std::vector<Integer> coordinates(std::span<const Integer> v, bool& ok) const;

  friend bool operator==(const Sublattice& a, const Sublattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  IntegerMatrix basis_;
};

/// Saturated integer kernel {v in Z^cols : M v = 0}.
[[nodiscard]] Sublattice kernel_lattice(const IntegerMatrix& m);
/// Z^N intersected with the rational span of L.
[[nodiscard]] Sublattice saturate(const Sublattice& l);
[[nodiscard]] Sublattice intersect(const Sublattice& a, const Sublattice& b);
[[nodiscard]] Sublattice lattice_sum(const Sublattice& a, const Sublattice& b);
/// Image M * L (not saturated).
[[nodiscard]] Sublattice apply(const IntegerMatrix& m, const Sublattice& l);
/// [sup : sub]. Throws LatticeError when sub is not contained in sup or the
/// ranks differ.
[[nodiscard]] Integer index(const Sublattice& sub, const Sublattice& sup);

/// Number of classes z in L/2L (L = Z^rank) with A z = z for every A, i.e.
/// the fixed points of the group generated by `matrices` on the 2-torsion of
/// the torus R^rank / Z^rank.
[[nodiscard]] Integer fixed_two_torsion_count(std::size_t rank,
                                              std::span<const IntegerMatrix> matrices);

[[nodiscard]] std::string to_string(const Integer& v);

}  // namespace prymcheck
