#pragma once

// Combinatorics of the dihedral group D_n = <s, t | s^n = t^2 = (st)^2 = 1>
// and of the D_n-covers of the projective line it classifies.
//
// Conventions: an element is t^reflected * s^exponent. Sheets of the regular
// cover are group elements; a branch loop with local monodromy g moves sheet h
// to h*g (right action), deck transformations act by left multiplication, and
// the quotient X/S has the right cosets S\D_n as its sheets.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prymcheck {

struct DihedralElement {
  std::int64_t exponent = 0;  // power of sigma, reduced mod n
  bool reflected = false;     // leading tau factor

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

[[nodiscard]] DihedralElement rotation(std::int64_t exponent, std::int64_t n);
/// tau * sigma^exponent
[[nodiscard]] DihedralElement reflection(std::int64_t exponent, std::int64_t n);
[[nodiscard]] DihedralElement dn_mul(DihedralElement a, DihedralElement b, std::int64_t n);
[[nodiscard]] DihedralElement dn_inverse(DihedralElement a, std::int64_t n);
[[nodiscard]] std::int64_t dn_order(DihedralElement a, std::int64_t n);
/// Dense id in [0, 2n): reflected * n + exponent.
[[nodiscard]] std::size_t element_id(DihedralElement a, std::int64_t n);
[[nodiscard]] DihedralElement element_from_id(std::size_t id, std::int64_t n);
[[nodiscard]] std::string to_string(DihedralElement a);

struct ConjugacyClass {
  enum class Kind { identity, rotation, reflection };
  Kind kind = Kind::identity;
  /// rotation: min(e, n - e); reflection: exponent parity for even n, 0 for odd n
  std::int64_t label = 0;

  friend bool operator==(const ConjugacyClass&, const ConjugacyClass&) = default;
};

[[nodiscard]] ConjugacyClass dn_class(DihedralElement e, std::int64_t n);

class SubgroupSpec {
 public:
  enum class Tag { trivial, rotation, reflection, klein, dihedral8, full };

  static SubgroupSpec trivial() { return {Tag::trivial, 0}; }
  /// <sigma^d>, d | n
  static SubgroupSpec rotation(std::int64_t d) { return {Tag::rotation, d}; }
  /// <tau sigma^k>
  static SubgroupSpec reflection(std::int64_t k) { return {Tag::reflection, k}; }
  /// <sigma^{n/2}, tau sigma^k>
  static SubgroupSpec klein(std::int64_t k) { return {Tag::klein, k}; }
  /// <tau sigma^k, sigma^{n/4}>
  static SubgroupSpec dihedral8(std::int64_t k) { return {Tag::dihedral8, k}; }
  static SubgroupSpec full() { return {Tag::full, 0}; }

  [[nodiscard]] Tag tag() const noexcept { return tag_; }
  [[nodiscard]] std::int64_t parameter() const noexcept { return parameter_; }

  /// Generators inside D_n; throws InputError when the tag needs a
  /// divisibility n does not have.
  [[nodiscard]] std::vector<DihedralElement> generators(std::int64_t n) const;
  [[nodiscard]] std::int64_t nominal_order(std::int64_t n) const;
  /// Closure of the generators, checked against the nominal order.
  [[nodiscard]] std::vector<DihedralElement> elements(std::int64_t n) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;

 private:
  SubgroupSpec(Tag tag, std::int64_t parameter) : tag_(tag), parameter_(parameter) {}
  Tag tag_;
  std::int64_t parameter_;
};

/// Local monodromy at branch point i is tau * sigma^{exponents[i]}.
struct MonodromyDatum {
  std::int64_t n = 0;
  std::int64_t genus = 0;
  std::vector<std::int64_t> exponents;

  [[nodiscard]] std::size_t branch_count() const noexcept { return exponents.size(); }
  [[nodiscard]] DihedralElement local_monodromy(std::size_t i) const {
    return reflection(exponents[i], n);
  }

  friend bool operator==(const MonodromyDatum&, const MonodromyDatum&) = default;
};

enum class DatumStatus { valid, bad_parameters, length, generation, product };

[[nodiscard]] std::string_view to_string(DatumStatus s);

/// Checks n >= 2, g >= 2, then length, generation and product in that order
/// and names the first failure.
[[nodiscard]] DatumStatus validate_datum(const MonodromyDatum& d);

/// Throws InputError naming the violation unless the datum is valid.
void require_valid(const MonodromyDatum& d);

struct BranchCounts {
  std::int64_t s0 = 0;  // branch points over which tau has a fixed point
  std::int64_t s1 = 0;  // ... over which tau sigma^m has a fixed point
};

[[nodiscard]] BranchCounts branch_parity_counts(const MonodromyDatum& d);

/// One permutation of {0..degree-1} per branch point (image of the loop
/// generator x_i acting on sheets).
struct PermutationAction {
  std::size_t degree = 0;
  std::vector<std::vector<std::uint32_t>> generators;

  [[nodiscard]] bool is_transitive() const;
  /// Composite of the generators in branch order (x_1 first).
  [[nodiscard]] bool product_is_identity() const;
  [[nodiscard]] std::size_t cycle_count(std::size_t generator) const;
};

/// Right cosets S\D_n with D_n acting by right multiplication.
class CosetSpace {
 public:
  CosetSpace(std::int64_t n, const SubgroupSpec& subgroup);

  [[nodiscard]] std::size_t size() const noexcept { return representatives_.size(); }
  [[nodiscard]] std::size_t coset_of(DihedralElement e) const { return coset_of_id_[element_id(e, n_)]; }
  [[nodiscard]] DihedralElement representative(std::size_t coset) const { return representatives_[coset]; }
  /// Permutation Sh -> Shg.
  [[nodiscard]] std::vector<std::uint32_t> right_translation(DihedralElement g) const;

 private:
  std::int64_t n_;
  std::vector<std::size_t> coset_of_id_;
  std::vector<DihedralElement> representatives_;
};

[[nodiscard]] PermutationAction coset_action(const MonodromyDatum& d, const SubgroupSpec& s);

[[nodiscard]] std::size_t fixed_point_count(const std::vector<std::uint32_t>& permutation);
/// Fixed cosets of e acting on S\D_n by right translation.
[[nodiscard]] std::size_t fixed_point_count(std::int64_t n, const SubgroupSpec& s, DihedralElement e);

/// Genus of X/S from Riemann-Hurwitz on the coset action:
/// 2 - 2g = N(2 - B) + sum of cycle counts.
[[nodiscard]] std::int64_t quotient_genus(const MonodromyDatum& d, const SubgroupSpec& s);

struct SampledDatum {
  MonodromyDatum datum;
  std::uint64_t attempts = 0;  // candidates drawn, including the accepted one
};

/// Uniform rejection sampling over (Z/n)^{2g+2}; deterministic in seed.
[[nodiscard]] SampledDatum sample_datum(std::int64_t n, std::int64_t genus, std::uint64_t seed,
                                       std::uint64_t budget = 1'000'000);

}  // namespace prymcheck
