#include "prymcheck/dihedral.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "prymcheck/error.hpp"

namespace prymcheck {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

DihedralElement rotation(std::int64_t exponent, std::int64_t n) { return {mod(exponent, n), false}; }

DihedralElement reflection(std::int64_t exponent, std::int64_t n) { return {mod(exponent, n), true}; }

DihedralElement dn_mul(DihedralElement a, DihedralElement b, std::int64_t n) {
  // (t^a s^b)(t^c s^d) = t^{a+c} s^{(-1)^c b + d}
  const std::int64_t moved = b.reflected ? -a.exponent : a.exponent;
  return {mod(moved + b.exponent, n), a.reflected != b.reflected};
}

DihedralElement dn_inverse(DihedralElement a, std::int64_t n) {
  if (a.reflected) return a;
  return {mod(-a.exponent, n), false};
}

std::int64_t dn_order(DihedralElement a, std::int64_t n) {
  if (a.reflected) return 2;
  return n / std::gcd(n, a.exponent == 0 ? n : a.exponent);
}

std::size_t element_id(DihedralElement a, std::int64_t n) {
  return static_cast<std::size_t>((a.reflected ? n : 0) + a.exponent);
}

DihedralElement element_from_id(std::size_t id, std::int64_t n) {
  const auto i = static_cast<std::int64_t>(id);
  return {i % n, i >= n};
}

std::string to_string(DihedralElement a) {
  std::ostringstream os;
  if (a.reflected) os << "tau";
  if (a.exponent != 0) os << (a.reflected ? "*" : "") << "sigma^" << a.exponent;
  if (!a.reflected && a.exponent == 0) os << "1";
  return os.str();
}

ConjugacyClass dn_class(DihedralElement e, std::int64_t n) {
  if (e.reflected) {
    // s^j t s^k s^-j = t s^{k-2j}: parity is the only invariant for even n.
    return {ConjugacyClass::Kind::reflection, n % 2 == 0 ? e.exponent % 2 : 0};
  }
  if (e.exponent == 0) return {ConjugacyClass::Kind::identity, 0};
  return {ConjugacyClass::Kind::rotation, std::min(e.exponent, n - e.exponent)};
}

std::vector<DihedralElement> SubgroupSpec::generators(std::int64_t n) const {
  if (n < 1) throw InputError("subgroup: n must be positive");
  switch (tag_) {
    case Tag::trivial:
      return {};
    case Tag::rotation:
      if (parameter_ < 1 || n % parameter_ != 0) {
        throw InputError("Rot(" + std::to_string(parameter_) + ") needs a divisor of n = " +
                         std::to_string(n));
      }
      return {prymcheck::rotation(parameter_, n)};
    case Tag::reflection:
      return {prymcheck::reflection(parameter_, n)};
    case Tag::klein:
      if (n % 2 != 0) throw InputError("Klein subgroup needs even n, got " + std::to_string(n));
      return {prymcheck::rotation(n / 2, n), prymcheck::reflection(parameter_, n)};
    case Tag::dihedral8:
      if (n % 4 != 0) throw InputError("order-8 dihedral subgroup needs 4 | n, got " + std::to_string(n));
      return {prymcheck::reflection(parameter_, n), prymcheck::rotation(n / 4, n)};
    case Tag::full:
      return {prymcheck::rotation(1, n), prymcheck::reflection(0, n)};
  }
  return {};
}

std::int64_t SubgroupSpec::nominal_order(std::int64_t n) const {
  switch (tag_) {
    case Tag::trivial: return 1;
    case Tag::rotation: return n / parameter_;
    case Tag::reflection: return 2;
    case Tag::klein: return 4;
    case Tag::dihedral8: return 8;
    case Tag::full: return 2 * n;
  }
  return 0;
}

std::vector<DihedralElement> SubgroupSpec::elements(std::int64_t n) const {
  const auto gens = generators(n);
  std::vector<DihedralElement> out{prymcheck::rotation(0, n)};
  std::vector<bool> seen(static_cast<std::size_t>(2 * n), false);
  seen[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      const auto next = dn_mul(out[i], g, n);
      if (!seen[element_id(next, n)]) {
        seen[element_id(next, n)] = true;
        out.push_back(next);
      }
    }
  }
  if (static_cast<std::int64_t>(out.size()) != nominal_order(n)) {
    throw InvariantError(to_string() + " generated " + std::to_string(out.size()) +
                         " elements, expected " + std::to_string(nominal_order(n)));
  }
  return out;
}

std::string SubgroupSpec::to_string() const {
  switch (tag_) {
    case Tag::trivial: return "Trivial";
    case Tag::rotation: return "Rot(" + std::to_string(parameter_) + ")";
    case Tag::reflection: return "Refl(" + std::to_string(parameter_) + ")";
    case Tag::klein: return "Klein(" + std::to_string(parameter_) + ")";
    case Tag::dihedral8: return "Dih8(" + std::to_string(parameter_) + ")";
    case Tag::full: return "Full";
  }
  return "?";
}

std::string_view to_string(DatumStatus s) {
  switch (s) {
    case DatumStatus::valid: return "valid";
    case DatumStatus::bad_parameters: return "parameters";
    case DatumStatus::length: return "length";
    case DatumStatus::generation: return "generation";
    case DatumStatus::product: return "product";
  }
  return "?";
}

DatumStatus validate_datum(const MonodromyDatum& d) {
  if (d.n < 2 || d.genus < 2) return DatumStatus::bad_parameters;
  if (static_cast<std::int64_t>(d.exponents.size()) != 2 * d.genus + 2) return DatumStatus::length;
  std::int64_t g = d.n;
  for (auto k : d.exponents) g = std::gcd(g, mod(k - d.exponents.front(), d.n));
  if (g != 1) return DatumStatus::generation;
  std::int64_t total = 0;
  for (std::size_t j = 0; j + 1 < d.exponents.size(); j += 2) {
    total = mod(total + d.exponents[j + 1] - d.exponents[j], d.n);
  }
  if (total != 0) return DatumStatus::product;
  return DatumStatus::valid;
}

void require_valid(const MonodromyDatum& d) {
  const auto status = validate_datum(d);
  if (status != DatumStatus::valid) {
    throw InputError("invalid monodromy datum: violation(" + std::string(to_string(status)) + ")");
  }
}

BranchCounts branch_parity_counts(const MonodromyDatum& d) {
  const auto b = static_cast<std::int64_t>(d.exponents.size());
  if (d.n % 2 != 0) return {b, 0};
  BranchCounts c;
  for (auto k : d.exponents) (mod(k, d.n) % 2 == 0 ? c.s0 : c.s1) += 1;
  return c;
}

bool PermutationAction::is_transitive() const {
  if (degree == 0) return false;
  std::vector<bool> seen(degree, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    for (const auto& p : generators) {
      if (!seen[p[c]]) {
        seen[p[c]] = true;
        ++count;
        stack.push_back(p[c]);
      }
    }
  }
  return count == degree;
}

bool PermutationAction::product_is_identity() const {
  std::vector<std::uint32_t> at(degree);
  std::iota(at.begin(), at.end(), 0U);
  for (const auto& p : generators)
    for (auto& v : at) v = p[v];
  for (std::size_t i = 0; i < degree; ++i)
    if (at[i] != i) return false;
  return true;
}

std::size_t PermutationAction::cycle_count(std::size_t generator) const {
  const auto& p = generators.at(generator);
  std::vector<bool> seen(degree, false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < degree; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (auto j = static_cast<std::uint32_t>(i); !seen[j]; j = p[j]) seen[j] = true;
  }
  return cycles;
}

CosetSpace::CosetSpace(std::int64_t n, const SubgroupSpec& subgroup)
    : n_(n), coset_of_id_(static_cast<std::size_t>(2 * n), std::numeric_limits<std::size_t>::max()) {
  const auto members = subgroup.elements(n);
  for (std::size_t id = 0; id < coset_of_id_.size(); ++id) {
    if (coset_of_id_[id] != std::numeric_limits<std::size_t>::max()) continue;
    const auto h = element_from_id(id, n);
    for (const auto& s : members) coset_of_id_[element_id(dn_mul(s, h, n), n)] = representatives_.size();
    representatives_.push_back(h);
  }
}

std::vector<std::uint32_t> CosetSpace::right_translation(DihedralElement g) const {
  std::vector<std::uint32_t> p(size());
  for (std::size_t c = 0; c < size(); ++c) {
    p[c] = static_cast<std::uint32_t>(coset_of(dn_mul(representatives_[c], g, n_)));
  }
  return p;
}

PermutationAction coset_action(const MonodromyDatum& d, const SubgroupSpec& s) {
  const CosetSpace cosets(d.n, s);
  PermutationAction a;
  a.degree = cosets.size();
  for (std::size_t i = 0; i < d.branch_count(); ++i) {
    a.generators.push_back(cosets.right_translation(d.local_monodromy(i)));
  }
  return a;
}

std::size_t fixed_point_count(const std::vector<std::uint32_t>& permutation) {
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < permutation.size(); ++i)
    if (permutation[i] == i) ++fixed;
  return fixed;
}

std::size_t fixed_point_count(std::int64_t n, const SubgroupSpec& s, DihedralElement e) {
  return fixed_point_count(CosetSpace(n, s).right_translation(e));
}

std::int64_t quotient_genus(const MonodromyDatum& d, const SubgroupSpec& s) {
  const auto a = coset_action(d, s);
  if (!a.is_transitive()) {
    throw InputError("quotient " + s.to_string() + " is disconnected; datum does not generate D_n");
  }
  const auto sheets = static_cast<std::int64_t>(a.degree);
  const auto branch = static_cast<std::int64_t>(d.branch_count());
  std::int64_t cycles = 0;
  for (std::size_t i = 0; i < a.generators.size(); ++i) cycles += static_cast<std::int64_t>(a.cycle_count(i));
  const std::int64_t twice = 2 - sheets * (2 - branch) - cycles;
  if (twice < 0 || twice % 2 != 0) {
    throw InvariantError("Riemann-Hurwitz produced a non-integral genus for " + s.to_string());
  }
  return twice / 2;
}

SampledDatum sample_datum(std::int64_t n, std::int64_t genus, std::uint64_t seed, std::uint64_t budget) {
  if (n < 2 || genus < 2) throw InputError("sample_datum needs n >= 2 and genus >= 2");
  std::mt19937_64 rng(seed);
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % un;
  auto draw = [&] {
    std::uint64_t v = 0;
    do v = rng(); while (v >= limit);
    return static_cast<std::int64_t>(v % un);
  };
  SampledDatum out;
  out.datum.n = n;
  out.datum.genus = genus;
  out.datum.exponents.resize(static_cast<std::size_t>(2 * genus + 2));
  while (out.attempts < budget) {
    ++out.attempts;
    for (auto& k : out.datum.exponents) k = draw();
    if (validate_datum(out.datum) == DatumStatus::valid) return out;
  }
  throw InputError("sample_datum: budget of " + std::to_string(budget) + " candidates exhausted");
}

}  // namespace prymcheck
