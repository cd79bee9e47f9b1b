#include "prymcheck/homology.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "prymcheck/error.hpp"

namespace prymcheck {

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

SchreierTransversal schreier_transversal(const PermutationAction& a) {
  if (a.degree == 0) throw InputError("schreier_transversal: empty action");
  const std::size_t free_rank = a.generators.empty() ? 0 : a.generators.size() - 1;
  SchreierTransversal t;
  t.words.resize(a.degree);
  std::vector<bool> seen(a.degree, false);
  seen[0] = true;
  std::deque<std::uint32_t> queue{0};
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto c = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < free_rank; ++j) {
      const auto next = a.generators[j][c];
      if (seen[next]) continue;
      seen[next] = true;
      ++reached;
      t.words[next] = t.words[c];
      t.words[next].push_back(static_cast<int>(j) + 1);
      queue.push_back(next);
    }
  }
  if (reached != a.degree) throw InputError("schreier_transversal: action is not transitive");
  return t;
}

SchreierRewriter::SchreierRewriter(PermutationAction action) : action_(std::move(action)) {
  if (action_.generators.size() < 2) throw InputError("cover needs at least two branch points");
  free_rank_ = action_.generators.size() - 1;
  for (const auto& p : action_.generators) {
    std::vector<std::uint32_t> inv(p.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
    inverses_.push_back(std::move(inv));
  }
  transversal_ = schreier_transversal(action_);

  const std::size_t degree = action_.degree;
  edge_index_.assign(degree * free_rank_, -1);
  std::vector<bool> tree(degree * free_rank_, false);
  for (std::uint32_t c = 0; c < degree; ++c) {
    const auto& w = transversal_.words[c];
    if (w.empty()) continue;
    // The last letter of a BFS word is the tree edge into c.
    const auto parent = endpoint(Word(w.begin(), w.end() - 1));
    tree[parent * free_rank_ + static_cast<std::size_t>(w.back() - 1)] = true;
  }
  for (std::uint32_t c = 0; c < degree; ++c) {
    for (std::size_t j = 0; j < free_rank_; ++j) {
      if (tree[c * free_rank_ + j]) continue;
      edge_index_[c * free_rank_ + j] = static_cast<std::ptrdiff_t>(generator_words_.size());
      const auto next = action_.generators[j][c];
      Word g = transversal_.words[c];
      g.push_back(static_cast<int>(j) + 1);
      generator_words_.push_back(concat(g, inverse(transversal_.words[next])));
    }
  }
}

template <class Visit>
std::uint32_t SchreierRewriter::walk(const Word& w, std::uint32_t start, Visit&& visit) const {
  std::uint32_t c = start;
  auto step = [&](std::size_t j, bool inverted) {
    if (!inverted) {
      visit(c, j, 1);
      c = action_.generators[j][c];
    } else {
      c = inverses_[j][c];
      visit(c, j, -1);
    }
  };
  const auto last = free_rank_;  // index of x_B
  for (int letter : w) {
    const auto j = static_cast<std::size_t>(std::abs(letter) - 1);
    if (j > last) throw InputError("word letter out of range");
    const bool inverted = letter < 0;
    if (j < last) {
      step(j, inverted);
    } else if (!inverted) {
      // x_B = x_{B-1}^{-1} ... x_1^{-1}
      for (std::size_t k = last; k-- > 0;) step(k, true);
    } else {
      for (std::size_t k = 0; k < last; ++k) step(k, false);
    }
  }
  return c;
}

std::uint32_t SchreierRewriter::endpoint(const Word& w, std::uint32_t start) const {
  return walk(w, start, [](std::uint32_t, std::size_t, int) {});
}

std::vector<Integer> SchreierRewriter::rewrite(const Word& w) const {
  std::vector<Integer> out(generator_count());
  const auto end = walk(w, 0, [&](std::uint32_t c, std::size_t j, int sign) {
    const auto k = edge_index_[c * free_rank_ + j];
    if (k >= 0) out[static_cast<std::size_t>(k)] += sign;
  });
  if (end != 0) throw InputError("rewrite: word does not fix the base sheet");
  return out;
}

std::vector<Integer> rewrite_word(const Word& w, const SchreierTransversal& t, const PermutationAction& a) {
  SchreierRewriter r(a);
  if (r.transversal().words != t.words) {
    throw InputError("rewrite_word: transversal was not built from this action");
  }
  return r.rewrite(w);
}

HomologyPresentation homology_presentation(const SchreierRewriter& rewriter) {
  const auto& a = rewriter.action();
  const auto& t = rewriter.transversal();
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < a.generators.size(); ++i) {
    std::vector<bool> seen(a.degree, false);
    for (std::uint32_t c = 0; c < a.degree; ++c) {
      if (seen[c]) continue;
      std::size_t length = 0;
      for (auto j = c; !seen[j]; j = a.generators[i][j]) {
        seen[j] = true;
        ++length;
      }
      Word w = t.words[c];
      w.insert(w.end(), length, static_cast<int>(i) + 1);
      rows.push_back(rewriter.rewrite(concat(w, inverse(t.words[c]))));
    }
  }
  return {rewriter.generator_count(), IntegerMatrix::from_rows(rows, rewriter.generator_count())};
}

EquivariantLattice::EquivariantLattice(const MonodromyDatum& d)
    : datum_(d),
      rewriter_(coset_action(d, SubgroupSpec::trivial())),
      presentation_(homology_presentation(rewriter_)) {
  const auto smith = snf(presentation_.relations);
  for (const auto& f : smith.factors) {
    if (f != 1) throw InvariantError("torsion in H_1: invariant factor " + to_string(f));
  }
  const std::size_t killed = smith.factors.size();
  const std::size_t g_count = presentation_.generator_count;
  rank_ = g_count - killed;
  const auto g_x = quotient_genus(d, SubgroupSpec::trivial());
  if (static_cast<std::int64_t>(rank_) != 2 * g_x) {
    throw InvariantError("H_1 rank " + std::to_string(rank_) + " differs from 2 g_X = " +
                         std::to_string(2 * g_x));
  }
  projection_ = smith.right.col_block(killed, rank_);
  section_ = smith.right_inverse.row_block(killed, rank_);

  const auto& words = rewriter_.transversal().words;
  deck_.reserve(static_cast<std::size_t>(2 * d.n));
  for (std::size_t id = 0; id < static_cast<std::size_t>(2 * d.n); ++id) {
    deck_.push_back(deck_via_lift(element_from_id(id, d.n), words[id]));
  }
}

IntegerMatrix EquivariantLattice::deck_via_lift(DihedralElement e, const Word& lift) const {
  if (rewriter_.endpoint(lift) != element_id(e, datum_.n)) {
    throw InputError("deck_via_lift: lift word does not map to " + to_string(e));
  }
  const Word back = inverse(lift);
  const std::size_t g_count = rewriter_.generator_count();
  // Row k: image of generator k in homology coordinates.
  IntegerMatrix images(g_count, rank_);
  for (std::size_t k = 0; k < g_count; ++k) {
    const auto v = rewriter_.rewrite(concat(concat(lift, rewriter_.generator_word(k)), back));
    auto out = images.row(k);
    for (std::size_t j = 0; j < g_count; ++j) {
      if (sgn(v[j]) == 0) continue;
      auto p = projection_.row(j);
      for (std::size_t c = 0; c < rank_; ++c)
        if (sgn(p[c]) != 0) mpz_addmul(out[c].get_mpz_t(), v[j].get_mpz_t(), p[c].get_mpz_t());
    }
  }
  return (section_ * images).transpose();
}

IntegerMatrix EquivariantLattice::norm(const std::vector<DihedralElement>& elements) const {
  IntegerMatrix sum(rank_, rank_);
  for (const auto& e : elements) sum = sum + deck(e);
  return sum;
}

EquivariantLattice homology_lattice(const MonodromyDatum& d, bool verify) {
  require_valid(d);
  EquivariantLattice lattice(d);
  if (verify) verify_invariants(lattice);
  return lattice;
}

IntegerMatrix deck_matrix(const EquivariantLattice& lattice, DihedralElement e) {
  const auto& words = lattice.rewriter().transversal().words;
  return lattice.deck_via_lift(e, words[element_id(e, lattice.datum().n)]);
}

std::int64_t deck_fixed_points(const MonodromyDatum& d, DihedralElement e) {
  if (!e.reflected && e.exponent == 0) throw InputError("deck_fixed_points: identity fixes everything");
  std::int64_t total = 0;
  for (std::size_t i = 0; i < d.branch_count(); ++i) {
    const auto g = d.local_monodromy(i);
    std::vector<DihedralElement> cyclic{rotation(0, d.n)};
    for (auto p = g; !(p == rotation(0, d.n)); p = dn_mul(p, g, d.n)) cyclic.push_back(p);
    std::int64_t sheets = 0;
    for (std::size_t id = 0; id < static_cast<std::size_t>(2 * d.n); ++id) {
      const auto h = element_from_id(id, d.n);
      const auto conj = dn_mul(dn_mul(dn_inverse(h, d.n), e, d.n), h, d.n);
      if (std::find(cyclic.begin(), cyclic.end(), conj) != cyclic.end()) ++sheets;
    }
    total += sheets / static_cast<std::int64_t>(cyclic.size());
  }
  return total;
}

Polynomial expected_sigma_charpoly(std::int64_t n, std::int64_t genus) {
  Polynomial cyc(static_cast<std::size_t>(n) + 1);
  cyc.front() = -1;
  cyc.back() = 1;
  Polynomial out{Integer(1)};
  for (std::int64_t i = 0; i < 2 * (genus - 1); ++i) out = multiply(out, cyc);
  const Polynomial linear{Integer(-1), Integer(1)};
  return multiply(multiply(out, linear), linear);
}

void verify_invariants(const EquivariantLattice& lattice) {
  const auto& d = lattice.datum();
  const auto n = d.n;
  const auto expected_rank = 2 * (n * (d.genus - 1) + 1);
  if (static_cast<std::int64_t>(lattice.rank()) != expected_rank) {
    throw InvariantError("rank " + std::to_string(lattice.rank()) + " != " + std::to_string(expected_rank));
  }
  const auto& s = lattice.sigma();
  const auto& t = lattice.tau();
  const auto id = IntegerMatrix::identity(lattice.rank());
  if (!power(s, static_cast<unsigned>(n)).is_identity()) throw InvariantError("sigma^n != I");
  for (std::int64_t p = 2; p <= n; ++p) {
    bool prime = true;
    for (std::int64_t q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
    if (prime && n % p == 0 && power(s, static_cast<unsigned>(n / p)).is_identity()) {
      throw InvariantError("sigma has order dividing " + std::to_string(n / p));
    }
  }
  if (!(t * t).is_identity()) throw InvariantError("tau^2 != I");
  if (!(t * s * t * s).is_identity()) throw InvariantError("tau sigma tau sigma != I");
  for (const auto* m : {&s, &t}) {
    if (abs(determinant(*m)) != 1) throw InvariantError("deck matrix is not unimodular");
  }
  if (characteristic_polynomial(s) != expected_sigma_charpoly(n, d.genus)) {
    throw InvariantError("characteristic polynomial of sigma differs from (x^n-1)^{2(g-1)}(x-1)^2");
  }
  for (std::size_t k = 0; k < static_cast<std::size_t>(2 * n); ++k) {
    const auto e = element_from_id(k, n);
    const auto& m = lattice.deck(e);
    if (k == 0) {
      if (!(m == id)) throw InvariantError("deck(1) != I");
      continue;
    }
    const Integer expected = 2 - deck_fixed_points(d, e);
    if (m.trace() != expected) {
      throw InvariantError("Lefschetz trace of " + to_string(e) + " is " + to_string(m.trace()) +
                           ", expected " + to_string(expected));
    }
  }
}

}  // namespace prymcheck
