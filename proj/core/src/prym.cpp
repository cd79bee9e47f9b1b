#include "prymcheck/prym.hpp"

#include <algorithm>
#include <cctype>

#include "prymcheck/error.hpp"

namespace prymcheck {

namespace {

IntegerMatrix stack(const std::vector<IntegerMatrix>& ops, std::size_t rank) {
  IntegerMatrix out(0, rank);
  for (const auto& op : ops) {
    if (op.rows() != rank || op.cols() != rank) {
      throw InputError("subvariety: operator is " + std::to_string(op.rows()) + "x" +
                       std::to_string(op.cols()) + ", ambient rank is " + std::to_string(rank));
    }
    out = IntegerMatrix::vstack(out, op);
  }
  return out;
}

IntegerMatrix id(const EquivariantLattice& lat) { return IntegerMatrix::identity(lat.rank()); }

const IntegerMatrix& sigma_pow(const EquivariantLattice& lat, std::int64_t e) {
  return lat.deck(rotation(e, lat.datum().n));
}

const IntegerMatrix& tau_sigma_pow(const EquivariantLattice& lat, std::int64_t e) {
  return lat.deck(reflection(e, lat.datum().n));
}

void require_even(const EquivariantLattice& lat, std::string_view what) {
  if (lat.datum().n % 2 != 0) throw RegimeError(std::string(what) + " needs even n");
}

std::int64_t genus_of(const std::map<std::string, std::int64_t, std::less<>>& table, std::string_view key) {
  const auto it = table.find(key);
  if (it == table.end()) throw InvariantError("genus table lacks " + std::string(key));
  return it->second;
}

Integer dec(std::int64_t v) { return Integer(static_cast<long>(v)); }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

AbelianSubvariety subvariety(const EquivariantLattice& lat, std::string name, std::vector<IntegerMatrix> operators) {
  AbelianSubvariety out{std::move(name), std::move(operators), Sublattice::full(lat.rank())};
  if (!out.operators.empty()) out.lattice = kernel_lattice(stack(out.operators, lat.rank()));
  if (out.lattice.rank() % 2 != 0) {
    throw InvariantError("subvariety " + out.name + " has odd lattice rank " + std::to_string(out.lattice.rank()));
  }
  return out;
}

namespace tower {

AbelianSubvariety jacobian(const EquivariantLattice& lat) { return subvariety(lat, "JX", {}); }

AbelianSubvariety hyperelliptic_pullback(const EquivariantLattice& lat) {
  return subvariety(lat, "f*JH", {lat.sigma() - id(lat)});
}

AbelianSubvariety quotient_jacobian(const EquivariantLattice& lat, const SubgroupSpec& s) {
  std::vector<IntegerMatrix> ops;
  for (const auto& g : s.generators(lat.datum().n)) ops.push_back(lat.deck(g) - id(lat));
  return subvariety(lat, "JX[" + s.to_string() + "]", std::move(ops));
}

AbelianSubvariety prym(const EquivariantLattice& lat) {
  return subvariety(lat, "P(f)", {lat.norm(SubgroupSpec::rotation(1).elements(lat.datum().n))});
}

AbelianSubvariety prym_b_tau(const EquivariantLattice& lat) {
  require_even(lat, "P(b_tau)");
  const auto half = lat.datum().n / 2;
  return subvariety(lat, "P(b_tau)", {lat.tau() - id(lat), id(lat) + sigma_pow(lat, half)});
}

AbelianSubvariety subvariety_a(const EquivariantLattice& lat) {
  require_even(lat, "A");
  const auto half = lat.datum().n / 2;
  return subvariety(lat, "A", {tau_sigma_pow(lat, half) - id(lat), id(lat) + lat.tau()});
}

AbelianSubvariety subvariety_b(const EquivariantLattice& lat) {
  return subvariety_b(lat, two_adic_split(lat.datum().n).m);
}

AbelianSubvariety subvariety_b(const EquivariantLattice& lat, std::int64_t k) {
  require_even(lat, "B");
  const auto n = lat.datum().n;
  if (k % 2 == 0) throw InputError("subvariety_b needs an odd reflection exponent");
  return subvariety(lat, "B", {tau_sigma_pow(lat, k) - id(lat), id(lat) + sigma_pow(lat, n / 2)});
}

AbelianSubvariety prym_f1(const EquivariantLattice& lat) {
  require_even(lat, "P(f1)");
  return subvariety(lat, "P(f1)", {id(lat) + sigma_pow(lat, lat.datum().n / 2)});
}

AbelianSubvariety prym_f3f2(const EquivariantLattice& lat) {
  require_even(lat, "P(f3f2)");
  const auto n = lat.datum().n;
  return subvariety(lat, "P(f3f2)",
                    {sigma_pow(lat, n / 2) - id(lat), lat.norm(SubgroupSpec::rotation(1).elements(n))});
}

}  // namespace tower

Sublattice addition_image(const std::vector<Summand>& summands, const AbelianSubvariety& target) {
  const auto ambient = target.lattice.ambient_rank();
  std::size_t total = 0;
  Sublattice sum = Sublattice::zero(ambient);
  for (const auto& s : summands) {
    total += s.part->lattice.rank();
    sum = lattice_sum(sum, s.twist ? apply(*s.twist, s.part->lattice) : s.part->lattice);
  }
  if (total != target.lattice.rank()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch,
                       "summands have total dimension " + std::to_string(total / 2) + ", target " +
                           target.name + " has dimension " + std::to_string(target.dimension()));
  }
  if (sum.rank() != total) {
    throw LatticeError(LatticeError::Kind::dependent,
                       "summands onto " + target.name + " are dependent (infinite kernel)");
  }
  return sum;
}

Integer addition_degree(const std::vector<Summand>& summands, const AbelianSubvariety& target) {
  return index(addition_image(summands, target), target.lattice);
}

Integer operator_isogeny_degree(const IntegerMatrix& m, const AbelianSubvariety& src, const AbelianSubvariety& dst) {
  if (src.lattice.rank() != dst.lattice.rank()) {
    throw LatticeError(LatticeError::Kind::dimension_mismatch,
                       src.name + " and " + dst.name + " have different dimensions");
  }
  const auto image = apply(m, src.lattice);
  if (image.rank() != src.lattice.rank()) {
    throw LatticeError(LatticeError::Kind::infinite_index, "operator is not injective on " + src.name);
  }
  return index(image, dst.lattice);
}

Lemma31Diagnostic lemma31_diagnostic(const EquivariantLattice& lat) {
  const auto split = two_adic_split(lat.datum().n);
  if (split.r < 2) throw RegimeError("lemma31_diagnostic needs 4 | n");
  const auto a = tower::subvariety_a(lat);
  const auto b = tower::subvariety_b(lat);
  Lemma31Diagnostic out;
  out.kernel_order = operator_isogeny_degree(id(lat) + tau_sigma_pow(lat, split.m), a, b);
  const std::vector<IntegerMatrix> group{lat.tau(), sigma_pow(lat, split.m)};
  out.fixed_two_torsion = fixed_two_torsion_count(lat.rank(), group);
  return out;
}

std::string_view to_string(ClaimId c) {
  switch (c) {
    case ClaimId::thm21a: return "THM21a";
    case ClaimId::thm21b: return "THM21b";
    case ClaimId::lem26: return "LEM26";
    case ClaimId::prop27: return "PROP27";
    case ClaimId::prop32: return "PROP32";
    case ClaimId::prop42: return "PROP42";
    case ClaimId::cor43: return "COR43";
    case ClaimId::cor44: return "COR44";
    case ClaimId::thm41: return "THM41";
    case ClaimId::genus: return "GENUS";
    case ClaimId::combinatorics: return "COMBINATORICS";
  }
  return "?";
}

const std::vector<ClaimId>& all_claims() {
  static const std::vector<ClaimId> all{ClaimId::thm21a, ClaimId::thm21b, ClaimId::lem26, ClaimId::prop27,
                                        ClaimId::prop32, ClaimId::prop42, ClaimId::cor43, ClaimId::cor44,
                                        ClaimId::thm41,  ClaimId::genus,  ClaimId::combinatorics};
  return all;
}

std::optional<ClaimId> parse_claim(std::string_view s) {
  auto upper = [](std::string_view v) {
    std::string out(v);
    for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
  };
  for (auto c : all_claims())
    if (upper(to_string(c)) == upper(s)) return c;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skip: return "skip";
  }
  return "?";
}

std::string_view to_string(Check::Role r) {
  switch (r) {
    case Check::Role::factor: return "factor";
    case Check::Role::chain: return "chain";
    case Check::Role::variant: return "variant";
    case Check::Role::diagnostic: return "diagnostic";
  }
  return "?";
}

// ---------------------------------------------------------------------------

ClaimVerifier::ClaimVerifier(const MonodromyDatum& d)
    : lattice_(homology_lattice(d)), counts_(branch_parity_counts(d)), split_(two_adic_split(d.n)) {}

const AbelianSubvariety& ClaimVerifier::get(const std::string& key,
                                            const std::function<AbelianSubvariety()>& make) {
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, make()).first;
  return it->second;
}

const AbelianSubvariety& ClaimVerifier::named(std::string_view key) {
  const std::string k(key);
  const auto& lat = lattice_;
  if (k == "JX") return get(k, [&] { return tower::jacobian(lat); });
  if (k == "f*JH") return get(k, [&] { return tower::hyperelliptic_pullback(lat); });
  if (k == "P(f)") return get(k, [&] { return tower::prym(lat); });
  if (k == "P(b_tau)") return get(k, [&] { return tower::prym_b_tau(lat); });
  if (k == "A") return get(k, [&] { return tower::subvariety_a(lat); });
  if (k == "B") return get(k, [&] { return tower::subvariety_b(lat); });
  if (k == "B1") return get(k, [&] { return tower::subvariety_b(lat, odd()); });
  if (k == "P(f1)") return get(k, [&] { return tower::prym_f1(lat); });
  if (k == "P(f3f2)") return get(k, [&] { return tower::prym_f3f2(lat); });
  throw InvariantError("unknown subvariety key " + k);
}

const AbelianSubvariety& ClaimVerifier::quotient(const SubgroupSpec& s) {
  return get("JX[" + s.to_string() + "]", [&] { return tower::quotient_jacobian(lattice_, s); });
}

ClaimVerifier::Measured ClaimVerifier::add_degree(
    const std::vector<std::pair<const AbelianSubvariety*, const IntegerMatrix*>>& parts,
    const AbelianSubvariety& target) {
  std::vector<Summand> summands;
  std::vector<std::string> labels;
  for (const auto& [part, twist] : parts) {
    Summand s{part, std::nullopt};
    std::string label = "L(" + part->name + ")";
    if (twist != nullptr) {
      s.twist = *twist;
      label = "sigma*" + label;
    }
    summands.push_back(std::move(s));
    labels.push_back(std::move(label));
  }
  const auto sum = addition_image(summands, target);
  Measured out;
  out.value = index(sum, target.lattice);
  out.method = "lattice index [L(" + target.name + ") : " + join(labels, " + ") + "]";
  out.witness = {join(labels, " + "), sum.basis(), "L(" + target.name + ")", target.lattice.basis()};
  return out;
}

ClaimVerifier::Measured ClaimVerifier::add_degree(std::initializer_list<const AbelianSubvariety*> parts,
                                                  const AbelianSubvariety& target) {
  std::vector<std::pair<const AbelianSubvariety*, const IntegerMatrix*>> v;
  for (const auto* p : parts) v.emplace_back(p, nullptr);
  return add_degree(v, target);
}

IsogenyReport ClaimVerifier::make_record(ClaimId c, std::string item, std::string anchor) const {
  IsogenyReport rec;
  rec.claim = c;
  rec.item = std::move(item);
  rec.anchor = std::move(anchor);
  rec.datum = datum();
  rec.counts = counts_;
  return rec;
}

Check ClaimVerifier::compare(std::string label, std::string anchor, Check::Role role, const Integer& expected,
                             const Measured& observed) {
  Check c;
  c.label = std::move(label);
  c.anchor = std::move(anchor);
  c.role = role;
  c.observed = to_string(observed.value);
  if (role != Check::Role::diagnostic) c.expected = to_string(expected);
  if (!c.agrees() && !observed.witness.sub_label.empty()) c.witness = observed.witness;
  return c;
}

void ClaimVerifier::finish(IsogenyReport& rec, const Integer& formula, const Measured& oracle) {
  rec.formula = to_string(formula);
  rec.oracle = to_string(oracle.value);
  if (rec.method.empty()) rec.method = oracle.method;
  bool chains = true;
  bool factors = true;
  bool variants = true;
  for (const auto& c : rec.checks) {
    if (c.agrees()) continue;
    switch (c.role) {
      case Check::Role::chain: chains = false; break;
      case Check::Role::factor: factors = false; break;
      case Check::Role::variant: variants = false; break;
      case Check::Role::diagnostic: break;
    }
  }
  const bool main = formula == oracle.value;
  rec.verdict = main && factors && chains ? Verdict::pass : Verdict::fail;
  if (!chains) {
    rec.classification = "fault";
  } else if (!main || !factors) {
    rec.classification = "finding";
  } else {
    rec.classification = variants ? "agreement" : "agreement; printed-variant finding";
  }
  if (!main && !oracle.witness.sub_label.empty()) rec.witness = oracle.witness;
}

FormulaParams ClaimVerifier::params() const {
  return {datum().n, datum().genus, counts_.s0, counts_.s1, 0};
}

void ClaimVerifier::note_odd_reflection(IsogenyReport& rec) const {
  if (split_.m > 1) rec.assumptions.emplace_back(assumption::odd_reflection);
}

void ClaimVerifier::require_ramified_identifications() const {
  if (datum().n % 2 == 0 && (counts_.s0 < 2 || counts_.s1 < 2)) {
    throw InvariantError("even n with s0 = " + std::to_string(counts_.s0) + ", s1 = " +
                         std::to_string(counts_.s1) + "; pullback identifications need both >= 2");
  }
}

std::optional<std::string> ClaimVerifier::inapplicable(ClaimId c) const {
  const auto n = datum().n;
  switch (c) {
    case ClaimId::thm21a:
      if (n % 2 == 0) return "needs odd n";
      break;
    case ClaimId::thm21b:
      if (split_.r != 1) return "needs n = 2 mod 4";
      break;
    case ClaimId::prop27:
      if (n % 2 != 0) return "needs even n";
      break;
    case ClaimId::prop32:
    case ClaimId::prop42:
    case ClaimId::cor43:
    case ClaimId::cor44:
    case ClaimId::thm41:
      if (split_.r < 2) return "needs 4 | n";
      break;
    case ClaimId::lem26:
    case ClaimId::genus:
    case ClaimId::combinatorics:
      break;
  }
  return std::nullopt;
}

std::vector<IsogenyReport> ClaimVerifier::verify(ClaimId c) {
  if (auto reason = inapplicable(c)) {
    auto rec = make_record(c, "", "");
    rec.verdict = Verdict::skip;
    rec.classification = "skipped: " + *reason;
    return {rec};
  }
  try {
    return dispatch(c);
  } catch (const LatticeError& e) {
    // A structural premise of the claim failed (dimensions, independence).
    auto rec = make_record(c, "", "");
    rec.verdict = Verdict::fail;
    rec.classification = std::string("fault: ") + e.what();
    return {rec};
  }
}

std::vector<IsogenyReport> ClaimVerifier::dispatch(ClaimId c) {
  switch (c) {
    case ClaimId::thm21a: return thm21a();
    case ClaimId::thm21b: return thm21b();
    case ClaimId::lem26: return lem26();
    case ClaimId::prop27: return prop27();
    case ClaimId::prop32: return prop32();
    case ClaimId::prop42: return prop42();
    case ClaimId::cor43: return cor43();
    case ClaimId::cor44: return cor44();
    case ClaimId::thm41: return thm41();
    case ClaimId::genus: return genus();
    case ClaimId::combinatorics: return combinatorics();
  }
  return {};
}

std::vector<IsogenyReport> ClaimVerifier::thm21a() {
  const auto& jt = quotient(SubgroupSpec::reflection(0));
  const auto& p = named("P(f)");
  const auto m = add_degree({{&jt, nullptr}, {&jt, &lattice_.sigma()}}, p);
  auto rec = make_record(ClaimId::thm21a, "JX_tau x JX_tau -> P(f), (x, y) -> x + sigma(y)",
                         std::string(formula_anchor(DegreeFormula::thm21)));
  const Measured dim{dec(static_cast<std::int64_t>(2 * jt.dimension())), "2 dim JX_tau", {}};
  rec.checks.push_back(compare("2 dim JX_tau = dim P(f)", std::string(formula_anchor(DegreeFormula::dim_prym)),
                               Check::Role::factor, degree_closed_form(DegreeFormula::dim_prym, params()), dim));
  finish(rec, degree_closed_form(DegreeFormula::thm21, params()), m);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::thm21b() {
  require_ramified_identifications();
  const auto& d = datum();
  const auto& jt = quotient(SubgroupSpec::reflection(0));
  const auto& jts = quotient(SubgroupSpec::reflection(odd()));
  const auto mdeg = add_degree({&jt, &jts}, named("P(f)"));
  auto rec = make_record(ClaimId::thm21b, "JX_tau x JX_tau*sigma^m -> P(f)",
                         std::string(formula_anchor(DegreeFormula::thm21)));
  rec.assumptions.emplace_back(assumption::ramified_kernel);
  note_odd_reflection(rec);
  const auto table = genus_closed_forms(d.n, d.genus, counts_.s0, counts_.s1);
  for (const auto& [key, spec] : {std::pair{curve::X_tau, SubgroupSpec::reflection(0)},
                                  std::pair{curve::X_tau_sigma_m, SubgroupSpec::reflection(odd())}}) {
    const auto rh = quotient_genus(d, spec);
    const auto& sub = quotient(spec);
    rec.checks.push_back(compare("g(" + std::string(key) + ") by Riemann-Hurwitz",
                                 key == curve::X_tau ? "m(g-1)+1-s_0/2" : "m(g-1)+1-s_1/2", Check::Role::factor,
                                 dec(genus_of(table, key)), {dec(rh), "Riemann-Hurwitz", {}}));
    rec.checks.push_back(compare("dim " + sub.name + " = g(" + std::string(key) + ")", "fixed lattice rank / 2",
                                 Check::Role::chain, dec(rh),
                                 {dec(static_cast<std::int64_t>(sub.dimension())), "", {}}));
  }
  finish(rec, degree_closed_form(DegreeFormula::thm21, params()), mdeg);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::lem26() {
  const auto& e = named("f*JH");
  const auto& p = named("P(f)");
  const auto mdeg = add_degree({&e, &p}, named("JX"));
  auto rec = make_record(ClaimId::lem26, "f*JH x P(f) -> JX", std::string(formula_anchor(DegreeFormula::lem26)));
  rec.assumptions.emplace_back(assumption::etale_kernel);
  rec.checks.push_back(compare("dim f*JH = g", "g", Check::Role::factor, dec(datum().genus),
                               {dec(static_cast<std::int64_t>(e.dimension())), "", {}}));
  rec.checks.push_back(compare("dim P(f)", std::string(formula_anchor(DegreeFormula::dim_prym)),
                               Check::Role::factor, degree_closed_form(DegreeFormula::dim_prym, params()),
                               {dec(static_cast<std::int64_t>(p.dimension())), "", {}}));
  finish(rec, degree_closed_form(DegreeFormula::lem26, params()), mdeg);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::prop27() {
  require_ramified_identifications();
  const auto& d = datum();
  const auto gz = quotient_genus(d, SubgroupSpec::klein(0));
  const auto mdeg = add_degree({&named("P(b_tau)"), &named("A")}, named("P(f1)"));
  auto rec = make_record(ClaimId::prop27, "P(b_tau) x P(b_tau*sigma^{n/2}) -> P(f1), Z = X_K_tau",
                         std::string(formula_anchor(DegreeFormula::prop27)));
  rec.assumptions.emplace_back(assumption::ramified_kernel);
  if (split_.r >= 2) {
    const auto table = genus_closed_forms(d.n, d.genus, counts_.s0, counts_.s1);
    rec.checks.push_back(compare("g(Z) by Riemann-Hurwitz", "n/4(g-1)+1-s_0/2", Check::Role::factor,
                                 dec(genus_of(table, curve::X_K_tau)), {dec(gz), "Riemann-Hurwitz", {}}));
  }
  auto p = params();
  p.genus_z = gz;
  finish(rec, degree_closed_form(DegreeFormula::prop27, p), mdeg);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::prop32() {
  require_ramified_identifications();
  const auto& d = datum();
  const auto& a = named("A");
  const auto& b = named("B");
  const auto op = id(lattice_) + tau_sigma_pow(lattice_, split_.m);
  Measured h;
  h.value = operator_isogeny_degree(op, a, b);
  const auto image = apply(op, a.lattice);
  h.method = "lattice index [L(B) : (1 + tau*sigma^m) L(A)]";
  h.witness = {"(1 + tau*sigma^m) L(A)", image.basis(), "L(B)", b.lattice.basis()};

  auto rec = make_record(ClaimId::prop32, "deg h: A -> B", std::string(formula_anchor(DegreeFormula::prop32)));
  rec.assumptions.emplace_back(assumption::ramified_kernel);
  const auto table = genus_closed_forms(d.n, d.genus, counts_.s0, counts_.s1);
  rec.checks.push_back(compare("dim A = g(X_tau*sigma^{n/2}) - g(X_K_tau)", "genus table", Check::Role::factor,
                               dec(genus_of(table, curve::X_tau_sigma_half) - genus_of(table, curve::X_K_tau)),
                               {dec(static_cast<std::int64_t>(a.dimension())), "", {}}));
  rec.checks.push_back(compare("dim B = g(X_tau*sigma^m) - g(X_K_tau*sigma^m)", "genus table",
                               Check::Role::factor,
                               dec(genus_of(table, curve::X_tau_sigma_m) - genus_of(table, curve::X_K_tau_sigma_m)),
                               {dec(static_cast<std::int64_t>(b.dimension())), "", {}}));
  const std::vector<IntegerMatrix> group{lattice_.tau(), sigma_pow(lattice_, split_.m)};
  rec.checks.push_back(compare("|JX[2] fixed by <tau, sigma^m>|", "Ker(1+tau sigma^m)|_A vs (JX[2])^<tau, sigma^m>",
                               Check::Role::diagnostic, 0,
                               {fixed_two_torsion_count(lattice_.rank(), group), "GF(2) rank", {}}));
  finish(rec, degree_closed_form(DegreeFormula::prop32, params()), h);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::prop42() {
  require_ramified_identifications();
  const auto n = datum().n;
  const auto& e = named("f*JH");
  const auto& kt = quotient(SubgroupSpec::klein(0));
  const auto& ktm = quotient(SubgroupSpec::klein(odd()));
  const auto& pb = named("P(b_tau)");
  const auto& a = named("A");
  const auto& half = quotient(SubgroupSpec::rotation(n / 2));
  const auto& f32 = named("P(f3f2)");
  const auto& f1 = named("P(f1)");
  const auto& jx = named("JX");
  const auto p = params();

  const auto phi = add_degree({&e, &kt, &ktm, &pb, &a}, jx);
  const auto alpha = add_degree({&kt, &ktm}, f32);
  const auto psi_half = add_degree({&e, &f32}, half);
  const auto alpha1 = add_degree({&e, &kt, &ktm}, half);
  const auto alpha2 = add_degree({&pb, &a}, f1);
  const auto alpha3 = add_degree({&half, &f1}, jx);

  auto rec = make_record(ClaimId::prop42, "deg phi~_n: f*JH x JX_K_tau x JX_K_tau*sigma^m x P(b_tau) x A -> JX",
                         std::string(formula_anchor(DegreeFormula::prop42)));
  rec.assumptions.emplace_back(assumption::ramified_kernel);
  note_odd_reflection(rec);
  rec.assumptions.emplace_back(assumption::etale_kernel);
  auto factor = [&](DegreeFormula f, std::string label, const Measured& m) {
    rec.checks.push_back(compare(std::move(label), std::string(formula_anchor(f)), Check::Role::factor,
                                 degree_closed_form(f, p), m));
  };
  factor(DegreeFormula::prop42_alpha, "alpha: JX_K_tau x JX_K_tau*sigma^m -> P(f3f2)", alpha);
  factor(DegreeFormula::prop42_psi_half, "psi_{n/2}: f*JH x P(f3f2) -> JX_sigma^{n/2}", psi_half);
  factor(DegreeFormula::prop42_alpha1, "alpha_1: f*JH x JX_K_tau x JX_K_tau*sigma^m -> JX_sigma^{n/2}", alpha1);
  factor(DegreeFormula::prop42_alpha2, "alpha_2: P(b_tau) x A -> P(f1)", alpha2);
  factor(DegreeFormula::prop42_alpha3, "alpha_3: JX_sigma^{n/2} x P(f1) -> JX", alpha3);
  rec.checks.push_back(compare("deg alpha_1 = deg alpha * deg psi_{n/2}", "composition", Check::Role::chain,
                               alpha.value * psi_half.value, alpha1));
  rec.checks.push_back(compare("deg phi~_n = deg alpha_1 * deg alpha_2 * deg alpha_3", "composition",
                               Check::Role::chain, alpha1.value * alpha2.value * alpha3.value, phi));
  finish(rec, degree_closed_form(DegreeFormula::prop42, p), phi);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::cor43() {
  require_ramified_identifications();
  const auto& e = named("f*JH");
  const auto& kt = quotient(SubgroupSpec::klein(0));
  const auto& ktm = quotient(SubgroupSpec::klein(odd()));
  const auto& pb = named("P(b_tau)");
  const auto& a = named("A");
  const auto& b = named("B1");
  const auto& jx = named("JX");

  const auto phi_n = add_degree({&e, &kt, &ktm, &pb, &b}, jx);
  const auto phi_tilde = add_degree({&e, &kt, &ktm, &pb, &a}, jx);
  const auto op = id(lattice_) + tau_sigma_pow(lattice_, odd());
  const Measured h{operator_isogeny_degree(op, a, b), "", {}};

  // phi_n o (1 x h), measured directly.
  Sublattice sum = apply(op, a.lattice);
  for (const auto* part : {&e, &kt, &ktm, &pb}) sum = lattice_sum(sum, part->lattice);
  const Measured composite{index(sum, jx.lattice), "", {}};

  auto rec = make_record(ClaimId::cor43, "deg phi_n: f*JH x JX_K_tau x JX_K_tau*sigma^m x P(b_tau) x B -> JX",
                         std::string(formula_anchor(DegreeFormula::cor43)));
  rec.assumptions.emplace_back(assumption::ramified_kernel);
  note_odd_reflection(rec);
  rec.checks.push_back(compare("deg phi_n o (1 x h) = deg phi_n * deg h", "composition", Check::Role::chain,
                               phi_n.value * h.value, composite));
  rec.checks.push_back(compare("deg phi~_n = deg phi_n * deg h", "diagram phi~_n = phi_n o (1 x h)",
                               Check::Role::factor, phi_n.value * h.value, phi_tilde));
  finish(rec, degree_closed_form(DegreeFormula::cor43, params()), phi_n);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::cor44() {
  require_ramified_identifications();
  const auto& e = named("f*JH");
  const auto& kt = quotient(SubgroupSpec::klein(0));
  const auto& ktm = quotient(SubgroupSpec::klein(odd()));
  const auto& pb = named("P(b_tau)");
  const auto& b = named("B1");
  const auto& p = named("P(f)");
  const auto& jx = named("JX");
  const auto fp = params();

  const auto psi_n = add_degree({&kt, &ktm, &pb, &b}, p);
  const auto phi = add_degree({&e, &p}, jx);
  const auto phi_n = add_degree({&e, &kt, &ktm, &pb, &b}, jx);

  auto rec = make_record(ClaimId::cor44, "deg psi_n: JX_K_tau x JX_K_tau*sigma^m x P(b_tau) x B -> P(f)",
                         std::string(formula_anchor(DegreeFormula::cor44)));
  rec.assumptions.emplace_back(assumption::ramified_kernel);
  note_odd_reflection(rec);
  rec.assumptions.emplace_back(assumption::etale_kernel);
  rec.checks.push_back(compare("phi: f*JH x P(f) -> JX", std::string(formula_anchor(DegreeFormula::cor44_phi)),
                               Check::Role::factor, degree_closed_form(DegreeFormula::cor44_phi, fp), phi));
  rec.checks.push_back(compare("phi: f*JH x P(f) -> JX, printed value",
                               std::string(formula_anchor(DegreeFormula::cor44_phi_printed)), Check::Role::variant,
                               degree_closed_form(DegreeFormula::cor44_phi_printed, fp), phi));
  rec.checks.push_back(compare("deg phi_n = deg psi_n * deg phi", "composition", Check::Role::chain,
                               psi_n.value * phi.value, phi_n));
  finish(rec, degree_closed_form(DegreeFormula::cor44, fp), psi_n);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::thm41() {
  require_ramified_identifications();
  const auto& jt = quotient(SubgroupSpec::reflection(0));
  const auto& jtm = quotient(SubgroupSpec::reflection(odd()));
  const auto& kt = quotient(SubgroupSpec::klein(0));
  const auto& ktm = quotient(SubgroupSpec::klein(odd()));
  const auto& pb = named("P(b_tau)");
  const auto& b = named("B1");
  const auto& p = named("P(f)");
  const auto fp = params();

  const auto a = add_degree({&jt, &jtm}, p);
  const auto phi1 = add_degree({&kt, &pb}, jt);
  const auto phi2 = add_degree({&ktm, &b}, jtm);
  const auto psi_n = add_degree({&kt, &ktm, &pb, &b}, p);

  auto rec = make_record(ClaimId::thm41, "deg a: JX_tau x JX_tau*sigma^m -> P(f)",
                         std::string(formula_anchor(DegreeFormula::thm41)));
  rec.assumptions.emplace_back(assumption::ramified_kernel);
  note_odd_reflection(rec);
  auto add = [&](DegreeFormula f, Check::Role role, std::string label, const Measured& m) {
    rec.checks.push_back(compare(std::move(label), std::string(formula_anchor(f)), role, degree_closed_form(f, fp), m));
  };
  add(DegreeFormula::thm41_phi1, Check::Role::factor, "phi_1: JX_K_tau x P(b_tau) -> JX_tau", phi1);
  add(DegreeFormula::thm41_phi2, Check::Role::factor, "phi_2: JX_K_tau*sigma^m x B -> JX_tau*sigma^m", phi2);
  add(DegreeFormula::thm41_phi1_printed, Check::Role::variant, "phi_1, printed value", phi1);
  add(DegreeFormula::thm41_phi2_printed, Check::Role::variant, "phi_2, printed value", phi2);
  rec.checks.push_back(compare("deg psi_n = deg a * deg phi_1 * deg phi_2", "composition", Check::Role::chain,
                               a.value * phi1.value * phi2.value, psi_n));
  finish(rec, degree_closed_form(DegreeFormula::thm41, fp), a);
  return {rec};
}

std::vector<IsogenyReport> ClaimVerifier::genus() {
  const auto& d = datum();
  const auto n = d.n;
  const auto m = split_.m;
  std::vector<std::pair<std::string_view, SubgroupSpec>> subgroups{
      {curve::X, SubgroupSpec::trivial()},
      {curve::H, SubgroupSpec::rotation(1)},
  };
  if (split_.r >= 1) {
    subgroups.emplace_back(curve::X_tau, SubgroupSpec::reflection(0));
    subgroups.emplace_back(curve::X_tau_sigma_m, SubgroupSpec::reflection(m));
  }
  if (split_.r >= 2) {
    subgroups.emplace_back(curve::X_sigma_half, SubgroupSpec::rotation(n / 2));
    subgroups.emplace_back(curve::X_sigma_quarter, SubgroupSpec::rotation(n / 4));
    subgroups.emplace_back(curve::X_tau_sigma_half, SubgroupSpec::reflection(n / 2));
    subgroups.emplace_back(curve::X_K_tau, SubgroupSpec::klein(0));
    subgroups.emplace_back(curve::X_K_tau_sigma_m, SubgroupSpec::klein(m));
    subgroups.emplace_back(curve::X_T_tau, SubgroupSpec::dihedral8(0));
    subgroups.emplace_back(curve::X_T_tau_sigma_m, SubgroupSpec::dihedral8(m));
  }
  const auto table = genus_closed_forms(n, d.genus, counts_.s0, counts_.s1);

  std::vector<IsogenyReport> out;
  for (const auto& [key, spec] : subgroups) {
    const auto rh = quotient_genus(d, spec);
    auto rec = make_record(ClaimId::genus, "g(" + std::string(key) + "), S = " + spec.to_string(), "genus table");
    rec.method = "Riemann-Hurwitz on the coset action of " + spec.to_string();
    const auto& sub = quotient(spec);
    rec.checks.push_back(compare("dim of the S-fixed lattice / 2", "fixed lattice rank / 2", Check::Role::chain,
                                 dec(rh), {dec(static_cast<std::int64_t>(sub.dimension())), "", {}}));
    const auto it = table.find(key);
    if (it == table.end()) {
      // X_tau at r >= 2 has no closed form of its own; compare with its
      // conjugate-class partner.
      const auto alt = key == curve::X_tau ? table.find(curve::X_tau_sigma_half) : table.end();
      if (alt == table.end()) throw InvariantError("genus table lacks " + std::string(key));
      finish(rec, dec(alt->second), {dec(rh), "", {}});
      rec.anchor = "genus table, via " + std::string(curve::X_tau_sigma_half);
    } else {
      finish(rec, dec(it->second), {dec(rh), "", {}});
    }
    out.push_back(std::move(rec));
  }

  if (split_.r >= 2) {
    // The printed order-8 line carries the label X_tau*sigma^m; compare it
    // with both readings.
    const auto printed = genus_of(table, curve::X_tau_sigma_m_printed);
    const auto order8 = quotient_genus(d, SubgroupSpec::dihedral8(m));
    const auto literal = quotient_genus(d, SubgroupSpec::reflection(m));
    auto rec = make_record(ClaimId::genus, "g(" + std::string(curve::X_tau_sigma_m_printed) + ")",
                           "order-8 line labelled X_tau*sigma^m");
    rec.method = "Riemann-Hurwitz on the coset action of " + SubgroupSpec::dihedral8(m).to_string();
    rec.checks.push_back(compare("literal label: g(X_tau*sigma^m)", "order-8 line labelled X_tau*sigma^m",
                                 Check::Role::variant, dec(printed), {dec(literal), "", {}}));
    finish(rec, dec(printed), {dec(order8), "", {}});
    out.push_back(std::move(rec));
  }

  const auto& p = named("P(f)");
  auto rec = make_record(ClaimId::genus, "dim P(f)", std::string(formula_anchor(DegreeFormula::dim_prym)));
  rec.method = "rank of the norm kernel / 2";
  finish(rec, degree_closed_form(DegreeFormula::dim_prym, params()),
         {dec(static_cast<std::int64_t>(p.dimension())), "", {}});
  out.push_back(std::move(rec));
  return out;
}

std::vector<IsogenyReport> ClaimVerifier::combinatorics() {
  const auto& d = datum();
  const auto n = d.n;
  const auto m = split_.m;
  const bool even = n % 2 == 0;
  std::vector<IsogenyReport> out;

  auto lefschetz = [&](DihedralElement e) -> Integer { return Integer(2) - lattice_.deck(e).trace(); };
  {
    auto rec = make_record(ClaimId::combinatorics, "s0 + s1", "s_0 + s_1 = 2g+2");
    rec.method = "Lefschetz counts (2 - tr) of tau and tau*sigma on H_1, halved";
    const Integer fix_tau = lefschetz(reflection(0, n));
    const Integer fix_tau_sigma = lefschetz(reflection(1, n));
    if (even) {
      rec.checks.push_back(compare("#Fix(tau) = 2 s0", "2 s_0", Check::Role::factor, dec(2 * counts_.s0),
                                   {fix_tau, "", {}}));
      rec.checks.push_back(compare("#Fix(tau*sigma) = 2 s1", "2 s_1", Check::Role::factor, dec(2 * counts_.s1),
                                   {fix_tau_sigma, "", {}}));
      rec.checks.push_back(compare("s0 even and >= 2", "s_0 even, s_0 >= 2", Check::Role::factor, 1,
                                   {dec(counts_.s0 % 2 == 0 && counts_.s0 >= 2 ? 1 : 0), "", {}}));
      rec.checks.push_back(compare("s1 even and >= 2", "s_1 even, s_1 >= 2", Check::Role::factor, 1,
                                   {dec(counts_.s1 % 2 == 0 && counts_.s1 >= 2 ? 1 : 0), "", {}}));
    }
    finish(rec, dec(2 * d.genus + 2), {(fix_tau + fix_tau_sigma) / 2, "", {}});
    out.push_back(std::move(rec));
  }

  // Fixed points on the n-point fibres over the Weierstrass points: one for
  // odd n; for even n two for exactly one of tau, tau*sigma.
  {
    std::int64_t total = 0;
    std::int64_t violations = 0;
    for (auto k : d.exponents) {
      const auto ft = static_cast<std::int64_t>(fixed_point_count(n, SubgroupSpec::reflection(k), reflection(0, n)));
      const auto fts = static_cast<std::int64_t>(fixed_point_count(n, SubgroupSpec::reflection(k), reflection(1, n)));
      total += ft;
      const bool ok = even ? ((ft == 2 && fts == 0) || (ft == 0 && fts == 2)) : (ft == 1 && fts == 1);
      if (!ok) ++violations;
    }
    auto rec = make_record(ClaimId::combinatorics, "fixed points of tau on the fibres over the branch points",
                           even ? "2 on each of s_0 fibres" : "1 on each fibre");
    rec.method = "fixed cosets of tau on <tau*sigma^{k_i}>\\D_n";
    rec.checks.push_back(compare("fibres breaking the 0/2 (even n) or 1 (odd n) pattern", "none",
                                 Check::Role::factor, 0, {dec(violations), "", {}}));
    finish(rec, dec(even ? 2 * counts_.s0 : d.genus * 2 + 2), {dec(total), "", {}});
    out.push_back(std::move(rec));
  }

  if (!even) return out;

  struct Edge {
    std::string label;
    SubgroupSpec upper;
    SubgroupSpec lower;
    std::optional<std::int64_t> expected;
  };
  std::vector<Edge> edges{
      {"X -> X_tau", SubgroupSpec::trivial(), SubgroupSpec::reflection(0), 2 * counts_.s0},
      {"X -> X_tau*sigma^m", SubgroupSpec::trivial(), SubgroupSpec::reflection(m), 2 * counts_.s1},
  };
  if (split_.r >= 2) {
    edges.push_back({"X_sigma^{n/2} -> X_K_tau", SubgroupSpec::rotation(n / 2), SubgroupSpec::klein(0),
                     2 * counts_.s0});
    edges.push_back({"X_sigma^{n/2} -> X_K_tau*sigma^m", SubgroupSpec::rotation(n / 2), SubgroupSpec::klein(m),
                     2 * counts_.s1});
    edges.push_back({"X -> X_tau*sigma^{n/2}", SubgroupSpec::trivial(), SubgroupSpec::reflection(n / 2),
                     std::nullopt});
    edges.push_back({"X_tau*sigma^{n/2} -> X_K_tau", SubgroupSpec::reflection(n / 2), SubgroupSpec::klein(0),
                     std::nullopt});
    edges.push_back({"X_K_tau -> X_T_tau", SubgroupSpec::klein(0), SubgroupSpec::dihedral8(0), std::nullopt});
    edges.push_back({"X_tau*sigma^m -> X_K_tau*sigma^m", SubgroupSpec::reflection(m), SubgroupSpec::klein(m),
                     std::nullopt});
    edges.push_back({"X_K_tau*sigma^m -> X_T_tau*sigma^m", SubgroupSpec::klein(m), SubgroupSpec::dihedral8(m),
                     std::nullopt});
  }
  for (const auto& edge : edges) {
    const auto gu = quotient_genus(d, edge.upper);
    const auto gl = quotient_genus(d, edge.lower);
    const auto deg = edge.lower.nominal_order(n) / edge.upper.nominal_order(n);
    const auto ram = (2 * gu - 2) - deg * (2 * gl - 2);
    if (edge.expected) {
      auto rec = make_record(ClaimId::combinatorics, "ramification points of " + edge.label,
                             *edge.expected == 2 * counts_.s0 ? "2 s_0" : "2 s_1");
      rec.method = "Riemann-Hurwitz: (2g_up - 2) - deg (2g_down - 2)";
      finish(rec, dec(*edge.expected), {dec(ram), "", {}});
      out.push_back(std::move(rec));
    } else {
      auto rec = make_record(ClaimId::combinatorics, edge.label + " is ramified", "vertical maps are ramified");
      rec.method = "Riemann-Hurwitz ramification count > 0";
      rec.checks.push_back(compare("ramification points", "", Check::Role::diagnostic, 0, {dec(ram), "", {}}));
      finish(rec, 1, {dec(ram > 0 ? 1 : 0), "", {}});
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<IsogenyReport> verify_claim(const MonodromyDatum& d, ClaimId c) {
  require_valid(d);
  ClaimVerifier v(d);
  return v.verify(c);
}

}  // namespace prymcheck
