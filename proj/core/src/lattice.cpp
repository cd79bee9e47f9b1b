#include "prymcheck/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <utility>

#include "prymcheck/error.hpp"

namespace prymcheck {

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

}  // namespace

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw LatticeError(LatticeError::Kind::dimension_mismatch, "ragged matrix literal");
    }
    for (long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<Integer>>& rows,
                                       std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw LatticeError(LatticeError::Kind::dimension_mismatch, "row length mismatch");
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

IntegerMatrix IntegerMatrix::vstack(const IntegerMatrix& top, const IntegerMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "vstack: column counts differ");
  }
  IntegerMatrix m(top.rows() + bottom.rows(), top.cols());
  std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(),
            m.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
  return m;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntegerMatrix IntegerMatrix::row_block(std::size_t first, std::size_t count) const {
  IntegerMatrix b(count, cols_);
  for (std::size_t i = 0; i < count; ++i)
    std::copy(row(first + i).begin(), row(first + i).end(), b.row(i).begin());
  return b;
}

IntegerMatrix IntegerMatrix::col_block(std::size_t first, std::size_t count) const {
  IntegerMatrix b(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
  return b;
}

Integer IntegerMatrix::trace() const {
  Integer t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return sgn(v) == 0; });
}

bool IntegerMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) mpz_swap((*this)(a, j).get_mpz_t(), (*this)(b, j).get_mpz_t());
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) mpz_swap((*this)(i, a).get_mpz_t(), (*this)(i, b).get_mpz_t());
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (auto& v : row(i)) mpz_neg(v.get_mpz_t(), v.get_mpz_t());
}

void IntegerMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) {
    auto& v = (*this)(i, j);
    mpz_neg(v.get_mpz_t(), v.get_mpz_t());
  }
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  auto d = row(dst);
  auto s = row(src);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (sgn(s[j]) != 0) mpz_addmul(d[j].get_mpz_t(), s[j].get_mpz_t(), factor.get_mpz_t());
  }
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const auto& s = (*this)(i, src);
    if (sgn(s) != 0) mpz_addmul((*this)(i, dst).get_mpz_t(), s.get_mpz_t(), factor.get_mpz_t());
  }
}

bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "matrix product: inner dimensions differ");
  }
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(brow[j]) != 0) mpz_addmul(out[j].get_mpz_t(), aik.get_mpz_t(), brow[j].get_mpz_t());
      }
    }
  }
  return c;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "matrix sum: shapes differ");
  }
  IntegerMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "matrix difference: shapes differ");
  }
  IntegerMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

IntegerMatrix operator-(const IntegerMatrix& a) {
  IntegerMatrix c = a;
  for (auto& v : c.data_) v = -v;
  return c;
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

IntegerMatrix power(const IntegerMatrix& m, unsigned exponent) {
  IntegerMatrix result = IntegerMatrix::identity(m.rows());
  IntegerMatrix base = m;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

namespace {

// Reduces h in place to row Hermite normal form, mirroring every row
// operation on u when given. Returns the rank.
std::size_t hermite_reduce(IntegerMatrix& h, IntegerMatrix* u) {
  const std::size_t rows = h.rows();
  std::size_t pivot = 0;
  Integer q;
  for (std::size_t col = 0; col < h.cols() && pivot < rows; ++col) {
    bool found = false;
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = pivot; i < rows; ++i) {
        if (sgn(h(i, col)) == 0) continue;
        if (best == rows || cmpabs(h(i, col), h(best, col)) < 0) best = i;
      }
      if (best == rows) break;
      found = true;
      h.swap_rows(pivot, best);
      if (u) u->swap_rows(pivot, best);
      bool clean = true;
      for (std::size_t i = pivot + 1; i < rows; ++i) {
        if (sgn(h(i, col)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(pivot, col).get_mpz_t());
        q = -q;
        h.add_row_multiple(i, pivot, q);
        if (u) u->add_row_multiple(i, pivot, q);
        if (sgn(h(i, col)) != 0) clean = false;
      }
      if (clean) break;
    }
    if (!found) continue;
    if (sgn(h(pivot, col)) < 0) {
      h.negate_row(pivot);
      if (u) u->negate_row(pivot);
    }
    for (std::size_t i = 0; i < pivot; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(pivot, col).get_mpz_t());
      q = -q;
      h.add_row_multiple(i, pivot, q);
      if (u) u->add_row_multiple(i, pivot, q);
    }
    ++pivot;
  }
  return pivot;
}

}  // namespace

HermiteForm hnf(const IntegerMatrix& m) {
  HermiteForm out{m, IntegerMatrix::identity(m.rows()), 0};
  out.rank = hermite_reduce(out.form, &out.transform);
  return out;
}

SmithForm snf(const IntegerMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntegerMatrix d = m;
  SmithForm out{{}, IntegerMatrix::identity(rows), IntegerMatrix::identity(cols),
                IntegerMatrix::identity(cols)};
  auto& u = out.left;
  auto& v = out.right;
  auto& vinv = out.right_inverse;
  Integer q;

  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& factor) {
    // col[dst] += factor * col[src]; inverse acts on rows: row[src] -= factor * row[dst]
    d.add_col_multiple(dst, src, factor);
    v.add_col_multiple(dst, src, factor);
    vinv.add_row_multiple(src, dst, -factor);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    v.swap_cols(a, b);
    vinv.swap_rows(a, b);
  };
  auto row_op = [&](std::size_t dst, std::size_t src, const Integer& factor) {
    d.add_row_multiple(dst, src, factor);
    u.add_row_multiple(dst, src, factor);
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t bi = rows, bj = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (sgn(d(i, j)) != 0 && (bi == rows || cmpabs(d(i, j), d(bi, bj)) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;
    d.swap_rows(t, bi);
    u.swap_rows(t, bi);
    col_swap(t, bj);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        row_op(i, t, -q);
        if (sgn(d(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        col_op(j, t, -q);
        if (sgn(d(t, j)) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest leftover in row t / column t onto the diagonal.
        std::size_t bi2 = t, bj2 = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (sgn(d(i, t)) != 0 && cmpabs(d(i, t), d(bi2, bj2)) < 0) {
            bi2 = i;
            bj2 = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(d(t, j)) != 0 && cmpabs(d(t, j), d(bi2, bj2)) < 0) {
            bi2 = t;
            bj2 = j;
          }
        if (bi2 != t) {
          d.swap_rows(t, bi2);
          u.swap_rows(t, bi2);
        }
        if (bj2 != t) col_swap(t, bj2);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row and retry.
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_op(t, bad, Integer(1));
    }
    if (sgn(d(t, t)) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
    out.factors.push_back(d(t, t));
  }
  return out;
}

Integer determinant(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "determinant of non-square matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Polynomial characteristic_polynomial(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch,
                       "characteristic polynomial of non-square matrix");
  }
  // Faddeev-LeVerrier; every division by k is exact over Z.
  const std::size_t n = m.rows();
  Polynomial c(n + 1);
  c[n] = 1;
  IntegerMatrix am(n, n);  // A * M_{k-1}, with M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    IntegerMatrix mk = am;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    am = m * mk;
    Integer t = am.trace();
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), k);
    c[n - k] = -t;
  }
  return c;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Sublattice::Sublattice(std::size_t ambient_rank, const IntegerMatrix& generators)
    : ambient_(ambient_rank) {
  if (generators.rows() == 0) {
    basis_ = IntegerMatrix(0, ambient_rank);
    return;
  }
  if (generators.cols() != ambient_rank) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch,
                       "generator length differs from ambient rank");
  }
  IntegerMatrix h = generators;
  const std::size_t rank = hermite_reduce(h, nullptr);
  basis_ = h.row_block(0, rank);
}

Sublattice Sublattice::full(std::size_t ambient_rank) {
  return {ambient_rank, IntegerMatrix::identity(ambient_rank)};
}

Sublattice Sublattice::zero(std::size_t ambient_rank) {
  return {ambient_rank, IntegerMatrix(0, ambient_rank)};
}

std::vector<Integer> Sublattice::coordinates(std::span<const Integer> v, bool& ok) const {
  ok = false;
  if (v.size() != ambient_) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "vector length differs from ambient rank");
  }
  std::vector<Integer> rest(v.begin(), v.end());
  std::vector<Integer> coords(rank());
  std::size_t col = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    while (sgn(basis_(i, col)) == 0) {
      if (sgn(rest[col]) != 0) return {};
      ++col;
    }
    if (!mpz_divisible_p(rest[col].get_mpz_t(), basis_(i, col).get_mpz_t())) return {};
    mpz_divexact(coords[i].get_mpz_t(), rest[col].get_mpz_t(), basis_(i, col).get_mpz_t());
    auto b = basis_.row(i);
    for (std::size_t j = col; j < ambient_; ++j)
      if (sgn(b[j]) != 0) mpz_submul(rest[j].get_mpz_t(), coords[i].get_mpz_t(), b[j].get_mpz_t());
    ++col;
  }
  for (const auto& r : rest)
    if (sgn(r) != 0) return {};
  ok = true;
  return coords;
}

bool Sublattice::contains(std::span<const Integer> v) const {
  bool ok = false;
  (void)coordinates(v, ok);
  return ok;
}

bool Sublattice::contains(const Sublattice& other) const {
  if (other.ambient_ != ambient_) return false;
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Sublattice kernel_lattice(const IntegerMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return Sublattice::full(n);
  IntegerMatrix h = m.transpose();
  IntegerMatrix u = IntegerMatrix::identity(n);
  const std::size_t rank = hermite_reduce(h, &u);
  return {n, u.row_block(rank, n - rank)};
}

Sublattice saturate(const Sublattice& l) {
  const std::size_t n = l.ambient_rank();
  if (l.rank() == 0) return l;
  if (l.rank() == n) return Sublattice::full(n);
  const Sublattice complement = kernel_lattice(l.basis());
  return kernel_lattice(complement.basis());
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "intersect: ambient ranks differ");
  }
  const std::size_t n = a.ambient_rank();
  if (a.rank() == 0 || b.rank() == 0) return Sublattice::zero(n);
  // Integer relations x * [A; B] = 0 give the common vectors x_A * A.
  const IntegerMatrix stacked = IntegerMatrix::vstack(a.basis(), b.basis());
  const Sublattice relations = kernel_lattice(stacked.transpose());
  const IntegerMatrix coeffs = relations.basis().col_block(0, a.rank());
  return {n, coeffs * a.basis()};
}

Sublattice lattice_sum(const Sublattice& a, const Sublattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "lattice_sum: ambient ranks differ");
  }
  return {a.ambient_rank(), IntegerMatrix::vstack(a.basis(), b.basis())};
}

Sublattice apply(const IntegerMatrix& m, const Sublattice& l) {
  if (m.cols() != l.ambient_rank()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "apply: operator width differs");
  }
  if (l.rank() == 0) return Sublattice::zero(m.rows());
  return {m.rows(), l.basis() * m.transpose()};
}

Integer index(const Sublattice& sub, const Sublattice& sup) {
  if (sub.ambient_rank() != sup.ambient_rank()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch, "index: ambient ranks differ");
  }
  IntegerMatrix coords(sub.rank(), sup.rank());
  for (std::size_t i = 0; i < sub.rank(); ++i) {
    bool ok = false;
    auto c = sup.coordinates(sub.basis().row(i), ok);
    if (!ok) throw LatticeError(LatticeError::Kind::not_subgroup, "index: lattice is not a subgroup");
    std::copy(c.begin(), c.end(), coords.row(i).begin());
  }
  if (sub.rank() != sup.rank()) {
    throw LatticeError(LatticeError::Kind::infinite_index,
                       "index: ranks differ (" + std::to_string(sub.rank()) + " vs " +
                           std::to_string(sup.rank()) + ")");
  }
  return abs(determinant(coords));
}

Integer fixed_two_torsion_count(std::size_t rank, std::span<const IntegerMatrix> matrices) {
  const std::size_t words = (rank + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& a : matrices) {
    if (a.rows() != rank || a.cols() != rank) {
      throw LatticeError(LatticeError::Kind::dimension_mismatch, "fixed_two_torsion_count: shape");
    }
    for (std::size_t i = 0; i < rank; ++i) {
      std::vector<std::uint64_t> bits(words, 0);
      for (std::size_t j = 0; j < rank; ++j) {
        Integer e = a(i, j) - (i == j ? 1 : 0);
        if (mpz_odd_p(e.get_mpz_t())) bits[j / 64] |= std::uint64_t{1} << (j % 64);
      }
      rows.push_back(std::move(bits));
    }
  }
  std::size_t r = 0;
  for (std::size_t col = 0; col < rank && r < rows.size(); ++col) {
    const std::uint64_t mask = std::uint64_t{1} << (col % 64);
    std::size_t p = r;
    while (p < rows.size() && !(rows[p][col / 64] & mask)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && (rows[i][col / 64] & mask)) {
        for (std::size_t w = 0; w < words; ++w) rows[i][w] ^= rows[r][w];
      }
    }
    ++r;
  }
  Integer count;
  mpz_ui_pow_ui(count.get_mpz_t(), 2, rank - r);
  return count;
}

std::string to_string(const Integer& v) { return v.get_str(); }

}  // namespace prymcheck
