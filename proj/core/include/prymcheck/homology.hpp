#pragma once

// Integral first homology of the regular D_n-cover X -> P^1 together with the
// deck action, computed by abelianized Reidemeister-Schreier rewriting on the
// punctured sphere and then filling the punctures.
//
// The punctured sphere has fundamental group free on x_1 .. x_{B-1}; the last
// loop is x_B := (x_1 ... x_{B-1})^{-1} and is expanded whenever it occurs in
// a word, so the product relation is never stored.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prymcheck/dihedral.hpp"
#include "prymcheck/lattice.hpp"

namespace prymcheck {

/// Letter +(i+1) is the loop x_i around branch point i, -(i+1) its inverse.
using Word = std::vector<int>;

[[nodiscard]] Word inverse(const Word& w);
[[nodiscard]] Word concat(const Word& a, const Word& b);

/// One word per sheet, taking the base sheet 0 to that sheet. Built by
/// breadth-first search, so it is prefix-closed and words[0] is empty.
struct SchreierTransversal {
  std::vector<Word> words;
};

[[nodiscard]] SchreierTransversal schreier_transversal(const PermutationAction& a);

/// Rewrites words of the punctured sphere group that fix the base sheet as
/// vectors over the (abelianized) Schreier generators of the cover.
class SchreierRewriter {
 public:
  explicit SchreierRewriter(PermutationAction action);

  [[nodiscard]] const PermutationAction& action() const noexcept { return action_; }
  [[nodiscard]] const SchreierTransversal& transversal() const noexcept { return transversal_; }
  /// N(B - 2) + 1 for a connected cover of index N.
  [[nodiscard]] std::size_t generator_count() const noexcept { return generator_words_.size(); }
  /// t_c x_j t_{c.x_j}^{-1} for the k-th non-tree edge (c, j).
  [[nodiscard]] const Word& generator_word(std::size_t k) const { return generator_words_[k]; }

  /// Sheet reached by lifting w from `start`.
  [[nodiscard]] std::uint32_t endpoint(const Word& w, std::uint32_t start = 0) const;
  /// Abelianized coordinates of w; throws InputError unless w returns to the
  /// base sheet.
  [[nodiscard]] std::vector<Integer> rewrite(const Word& w) const;

 private:
  template <class Visit>
  std::uint32_t walk(const Word& w, std::uint32_t start, Visit&& visit) const;

  PermutationAction action_;
  std::vector<std::vector<std::uint32_t>> inverses_;
  SchreierTransversal transversal_;
  std::size_t free_rank_ = 0;                 // B - 1
  std::vector<std::ptrdiff_t> edge_index_;    // (sheet, j) -> generator or -1 for tree edges
  std::vector<Word> generator_words_;
};

[[nodiscard]] std::vector<Integer> rewrite_word(const Word& w, const SchreierTransversal& t,
                                                const PermutationAction& a);

struct HomologyPresentation {
  std::size_t generator_count = 0;
  /// One row per puncture: rewrite of t * x_i^l * t^{-1} for each cycle of x_i.
  IntegerMatrix relations;
};

[[nodiscard]] HomologyPresentation homology_presentation(const SchreierRewriter& rewriter);

/// H_1(X, Z) ~ Z^R, R = 2 g_X, with exact deck matrices acting on columns.
class EquivariantLattice {
 public:
  [[nodiscard]] const MonodromyDatum& datum() const noexcept { return datum_; }
  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] const SchreierRewriter& rewriter() const noexcept { return rewriter_; }
  [[nodiscard]] const HomologyPresentation& presentation() const noexcept { return presentation_; }
  /// G x R: Schreier coordinates (row vector) -> homology coordinates.
  [[nodiscard]] const IntegerMatrix& projection() const noexcept { return projection_; }
  /// R x G: a right inverse of the projection.
  [[nodiscard]] const IntegerMatrix& section() const noexcept { return section_; }
  [[nodiscard]] const IntegerMatrix& deck(DihedralElement e) const {
    return deck_[element_id(e, datum_.n)];
  }
  [[nodiscard]] const IntegerMatrix& sigma() const { return deck(rotation(1, datum_.n)); }
  [[nodiscard]] const IntegerMatrix& tau() const { return deck(reflection(0, datum_.n)); }
  /// Sum of deck(s) over the listed elements.
  [[nodiscard]] IntegerMatrix norm(const std::vector<DihedralElement>& elements) const;

  /// Deck matrix of e computed afresh by conjugating every Schreier
  /// generator with `lift`, a word whose monodromy is e.
  [[nodiscard]] IntegerMatrix deck_via_lift(DihedralElement e, const Word& lift) const;

 private:
  friend EquivariantLattice homology_lattice(const MonodromyDatum& d, bool verify);
  explicit EquivariantLattice(const MonodromyDatum& d);

  MonodromyDatum datum_;
  SchreierRewriter rewriter_;
  HomologyPresentation presentation_;
  std::size_t rank_ = 0;
  IntegerMatrix projection_;
  IntegerMatrix section_;
  std::vector<IntegerMatrix> deck_;
};

/// Builds H_1 of the full regular cover of a valid datum. With `verify`, all
/// lattice invariants (rank, dihedral relations, unimodularity, characteristic
/// polynomial of sigma, Lefschetz traces) are checked and a failure throws
/// InvariantError.
[[nodiscard]] EquivariantLattice homology_lattice(const MonodromyDatum& d, bool verify = true);

/// Deck matrix of e, recomputed from the transversal word of sheet e.
[[nodiscard]] IntegerMatrix deck_matrix(const EquivariantLattice& lattice, DihedralElement e);

/// Number of points of X fixed by the deck transformation e != 1, counted on
/// the branch fibres: a point over branch i is fixed iff h^{-1} e h lies in
/// <g_i> for its sheets h.
[[nodiscard]] std::int64_t deck_fixed_points(const MonodromyDatum& d, DihedralElement e);

/// (x^n - 1)^{2(g-1)} (x - 1)^2
[[nodiscard]] Polynomial expected_sigma_charpoly(std::int64_t n, std::int64_t genus);

/// Throws InvariantError describing the first failed lattice invariant.
void verify_invariants(const EquivariantLattice& lattice);

}  // namespace prymcheck
