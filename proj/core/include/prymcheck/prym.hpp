#pragma once

// Abelian subvarieties of JX as saturated sublattices of H_1(X, Z), and
// isogeny degrees as exact lattice indices.
//
// Every subvariety used here is the identity component of the common kernel
// of integral operators built from deck matrices, so its lattice is
// Lambda intersected with a rational kernel. Pullbacks of Jacobians and Pryms
// of ramified quotients are injective, hence identified with their images.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prymcheck/dihedral.hpp"
#include "prymcheck/formulas.hpp"
#include "prymcheck/homology.hpp"
#include "prymcheck/lattice.hpp"

namespace prymcheck {

struct AbelianSubvariety {
  std::string name;
  std::vector<IntegerMatrix> operators;
  Sublattice lattice;

  [[nodiscard]] std::size_t dimension() const noexcept { return lattice.rank() / 2; }
};

/// Identity component of the common kernel of `operators`.
[[nodiscard]] AbelianSubvariety subvariety(const EquivariantLattice& lat, std::string name,
                                           std::vector<IntegerMatrix> operators);

/// The named subvarieties of the tower, realized inside JX.
namespace tower {
[[nodiscard]] AbelianSubvariety jacobian(const EquivariantLattice& lat);
/// f^* JH: fixed part of sigma.
[[nodiscard]] AbelianSubvariety hyperelliptic_pullback(const EquivariantLattice& lat);
/// Image of JX_S: fixed part of the subgroup S.
[[nodiscard]] AbelianSubvariety quotient_jacobian(const EquivariantLattice& lat, const SubgroupSpec& s);
/// P(f): kernel of the norm of <sigma>.
[[nodiscard]] AbelianSubvariety prym(const EquivariantLattice& lat);
/// P(b_tau): tau-fixed, sigma^{n/2}-anti-invariant.
[[nodiscard]] AbelianSubvariety prym_b_tau(const EquivariantLattice& lat);
/// A = image of P(b_{tau sigma^{n/2}}): tau sigma^{n/2}-fixed, tau-anti-invariant.
[[nodiscard]] AbelianSubvariety subvariety_a(const EquivariantLattice& lat);
/// B = image of P(b_{tau sigma^m}): tau sigma^m-fixed, sigma^{n/2}-anti-invariant.
[[nodiscard]] AbelianSubvariety subvariety_b(const EquivariantLattice& lat);
/// Same with tau sigma^k (k odd) in place of tau sigma^m.
[[nodiscard]] AbelianSubvariety subvariety_b(const EquivariantLattice& lat, std::int64_t k);
/// P(f_1) for the etale double cover X -> X_{sigma^{n/2}}.
[[nodiscard]] AbelianSubvariety prym_f1(const EquivariantLattice& lat);
/// Image of P(f_3 f_2) for X_{sigma^{n/2}} -> H.
[[nodiscard]] AbelianSubvariety prym_f3f2(const EquivariantLattice& lat);
}  // namespace tower

struct Summand {
  const AbelianSubvariety* part = nullptr;
  std::optional<IntegerMatrix> twist;  // x -> twist * x before adding
};

/// The lattice sum twist_1 L_1 + ... + twist_k L_k, after checking that the
/// summands are independent and of total dimension dim(target).
[[nodiscard]] Sublattice addition_image(const std::vector<Summand>& summands, const AbelianSubvariety& target);

/// Degree of (x_1, ..., x_k) -> sum twist_i(x_i) onto `target`, i.e.
/// [L_target : sum twist_i L_i]. Throws LatticeError(dimension_mismatch) when
/// the dimensions do not add up and LatticeError(dependent) when the summands
/// are not independent.
[[nodiscard]] Integer addition_degree(const std::vector<Summand>& summands, const AbelianSubvariety& target);

/// Degree of the isogeny src -> dst induced by the integral operator m:
/// [L_dst : m L_src].
[[nodiscard]] Integer operator_isogeny_degree(const IntegerMatrix& m, const AbelianSubvariety& src,
                                              const AbelianSubvariety& dst);

struct Lemma31Diagnostic {
  Integer kernel_order;       // |ker h| = [L_B : (1 + tau sigma^m) L_A]
  Integer fixed_two_torsion;  // |JX[2]^{<tau, sigma^m>}|
};

[[nodiscard]] Lemma31Diagnostic lemma31_diagnostic(const EquivariantLattice& lat);

enum class ClaimId { thm21a, thm21b, lem26, prop27, prop32, prop42, cor43, cor44, thm41, genus, combinatorics };

[[nodiscard]] std::string_view to_string(ClaimId c);
[[nodiscard]] std::optional<ClaimId> parse_claim(std::string_view s);
[[nodiscard]] const std::vector<ClaimId>& all_claims();

enum class Verdict { pass, fail, skip };
[[nodiscard]] std::string_view to_string(Verdict v);

struct Witness {
  std::string sub_label;
  IntegerMatrix sub_basis;
  std::string sup_label;
  IntegerMatrix sup_basis;
};

/// A secondary comparison attached to a record.
struct Check {
  enum class Role {
    factor,      // a stated intermediate value; mismatch fails the record
    chain,       // an identity forced by composition; mismatch marks a fault
    variant,     // an alternative printed reading; reported only
    diagnostic,  // values shown side by side without a comparison
  };
  std::string label;
  std::string anchor;
  Role role = Role::factor;
  std::string expected;  // decimal; empty for diagnostics
  std::string observed;
  std::optional<Witness> witness;  // on mismatch

  [[nodiscard]] bool agrees() const { return expected.empty() || expected == observed; }
};

[[nodiscard]] std::string_view to_string(Check::Role r);

struct IsogenyReport {
  ClaimId claim = ClaimId::thm41;
  std::string item;    // sub-item within the claim (curve name, map name)
  std::string anchor;  // the formula being compared
  std::string method;  // how the oracle value was obtained
  MonodromyDatum datum;
  BranchCounts counts;
  std::string formula;  // decimal
  std::string oracle;   // decimal
  Verdict verdict = Verdict::skip;
  /// agreement | finding (formula mismatch, chains hold) | fault (a chain
  /// identity failed) | skipped: <reason>
  std::string classification;
  std::vector<Check> checks;
  std::optional<Witness> witness;
  std::vector<std::string> assumptions;
};

/// Verifies claims against one datum, building H_1 once. Not thread-safe;
/// use one instance per thread.
class ClaimVerifier {
 public:
  explicit ClaimVerifier(const MonodromyDatum& d);

  [[nodiscard]] const MonodromyDatum& datum() const noexcept { return lattice_.datum(); }
  [[nodiscard]] const EquivariantLattice& lattice() const noexcept { return lattice_; }
  [[nodiscard]] const BranchCounts& counts() const noexcept { return counts_; }
  [[nodiscard]] const TwoAdicSplit& split() const noexcept { return split_; }

  /// Empty when the claim applies to this datum, else the reason it does not.
  [[nodiscard]] std::optional<std::string> inapplicable(ClaimId c) const;
  /// Records for the claim; a single skip record when inapplicable.
  [[nodiscard]] std::vector<IsogenyReport> verify(ClaimId c);

 private:
  struct Measured {
    Integer value;
    std::string method;
    Witness witness;
  };

  const AbelianSubvariety& get(const std::string& key, const std::function<AbelianSubvariety()>& make);
  const AbelianSubvariety& named(std::string_view key);
  const AbelianSubvariety& quotient(const SubgroupSpec& s);
  Measured add_degree(const std::vector<std::pair<const AbelianSubvariety*, const IntegerMatrix*>>& parts,
                      const AbelianSubvariety& target);
  Measured add_degree(std::initializer_list<const AbelianSubvariety*> parts, const AbelianSubvariety& target);
  IsogenyReport make_record(ClaimId c, std::string item, std::string anchor) const;
  static Check compare(std::string label, std::string anchor, Check::Role role, const Integer& expected,
                       const Measured& observed);
  static void finish(IsogenyReport& rec, const Integer& formula, const Measured& oracle);
  [[nodiscard]] FormulaParams params() const;
  /// Exponent of the odd reflection used in addition maps (see odd_reflection).
  [[nodiscard]] std::int64_t odd() const noexcept { return 1; }
  void note_odd_reflection(IsogenyReport& rec) const;
  void require_ramified_identifications() const;
  std::vector<IsogenyReport> dispatch(ClaimId c);

  std::vector<IsogenyReport> thm21a();
  std::vector<IsogenyReport> thm21b();
  std::vector<IsogenyReport> lem26();
  std::vector<IsogenyReport> prop27();
  std::vector<IsogenyReport> prop32();
  std::vector<IsogenyReport> prop42();
  std::vector<IsogenyReport> cor43();
  std::vector<IsogenyReport> cor44();
  std::vector<IsogenyReport> thm41();
  std::vector<IsogenyReport> genus();
  std::vector<IsogenyReport> combinatorics();

  EquivariantLattice lattice_;
  BranchCounts counts_;
  TwoAdicSplit split_;
  std::map<std::string, AbelianSubvariety, std::less<>> cache_;
};

/// One-shot convenience wrapper around ClaimVerifier.
[[nodiscard]] std::vector<IsogenyReport> verify_claim(const MonodromyDatum& d, ClaimId c);

/// Assumption flags attached to records that rely on them.
namespace assumption {
inline constexpr std::string_view etale_kernel =
    "|ker f^*| = n for the etale cyclic cover f: X -> H";
inline constexpr std::string_view ramified_kernel =
    "pullbacks along ramified covers are injective (s0, s1 >= 2 checked)";
inline constexpr std::string_view odd_reflection =
    "odd reflection realized as tau*sigma (conjugate to tau*sigma^m); tau and tau*sigma^m alone generate a proper "
    "subgroup when m > 1";
}  // namespace assumption

}  // namespace prymcheck
