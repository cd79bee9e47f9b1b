#include "prymcheck/formulas.hpp"

#include "prymcheck/error.hpp"

namespace prymcheck {

namespace {

Integer pow_int(std::int64_t base, std::int64_t exponent) {
  if (exponent < 0) {
    throw RegimeError("formula exponent is negative (" + std::to_string(exponent) + ")");
  }
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

Integer pow2(std::int64_t exponent) { return pow_int(2, exponent); }

void require_r_at_least(const TwoAdicSplit& s, std::int64_t r, std::string_view what) {
  if (s.r < r) {
    throw RegimeError(std::string(what) + " needs n = 2^r m with r >= " + std::to_string(r) +
                      "; n = " + std::to_string(s.n));
  }
}

void require_branch_counts(const FormulaParams& p) {
  if (p.s0 + p.s1 != 2 * p.genus + 2 || p.s0 % 2 != 0 || p.s1 % 2 != 0) {
    throw RegimeError("s0, s1 must be even with s0 + s1 = 2g + 2");
  }
}

}  // namespace

TwoAdicSplit two_adic_split(std::int64_t n) {
  if (n < 1) throw InputError("two_adic_split needs n >= 1");
  TwoAdicSplit s{n, 0, n};
  while (s.m % 2 == 0) {
    s.m /= 2;
    ++s.r;
  }
  return s;
}

std::map<std::string, std::int64_t, std::less<>> genus_closed_forms(std::int64_t n, std::int64_t genus,
                                                                    std::int64_t s0, std::int64_t s1) {
  if (n < 2 || genus < 2) throw RegimeError("genus table needs n >= 2 and g >= 2");
  const auto split = two_adic_split(n);
  const auto g1 = genus - 1;
  std::map<std::string, std::int64_t, std::less<>> out;
  out.emplace(curve::X, n * g1 + 1);
  out.emplace(curve::H, genus);
  if (split.r == 0) return out;
  require_branch_counts({n, genus, s0, s1, 0});
  if (split.r == 1) {
    out.emplace(curve::X_tau, split.m * g1 + 1 - s0 / 2);
    out.emplace(curve::X_tau_sigma_m, split.m * g1 + 1 - s1 / 2);
    return out;
  }
  out.emplace(curve::X_sigma_half, n / 2 * g1 + 1);
  out.emplace(curve::X_sigma_quarter, n / 4 * g1 + 1);
  out.emplace(curve::X_tau_sigma_half, n / 2 * g1 + 1 - s0 / 2);
  out.emplace(curve::X_tau_sigma_m, n / 2 * g1 + 1 - s1 / 2);
  out.emplace(curve::X_K_tau, n / 4 * g1 + 1 - s0 / 2);
  out.emplace(curve::X_K_tau_sigma_m, n / 4 * g1 + 1 - s1 / 2);
  if (split.r >= 3) {
    out.emplace(curve::X_T_tau, n / 8 * g1 + 1 - s0 / 2);
    out.emplace(curve::X_T_tau_sigma_m, n / 8 * g1 + 1 - s1 / 2);
    out.emplace(curve::X_tau_sigma_m_printed, n / 8 * g1 + 1 - s1 / 2);
  } else {
    // T_tau and T_{tau sigma^m} coincide at r = 2.
    const auto gt = (split.m - 1) * g1 / 2;
    out.emplace(curve::X_T_tau, gt);
    out.emplace(curve::X_T_tau_sigma_m, gt);
    out.emplace(curve::X_tau_sigma_m_printed, gt);
  }
  return out;
}

Integer lemma26_degree(std::int64_t degree, std::int64_t genus_z, std::int64_t kernel_order) {
  const Integer torsion = pow_int(degree, 2 * genus_z);
  const Integer k2 = Integer(kernel_order) * kernel_order;
  if (!mpz_divisible_p(torsion.get_mpz_t(), k2.get_mpz_t())) {
    throw RegimeError("|JZ[d]| is not divisible by |ker g^*|^2");
  }
  return torsion / k2;
}

Integer degree_closed_form(DegreeFormula f, const FormulaParams& p) {
  if (p.n < 2 || p.genus < 2) throw RegimeError("formulas need n >= 2 and g >= 2");
  const auto s = two_adic_split(p.n);
  const auto r = s.r;
  const auto m = s.m;
  const auto g1 = p.genus - 1;
  const auto two_r = std::int64_t{1} << r;
  auto m_factor = [&] { return pow_int(m, 2 * g1); };

  switch (f) {
    case DegreeFormula::thm21:
      if (r == 1 || r == 0) return 1;
      throw RegimeError("isomorphism statement needs n odd or n = 2 mod 4");
    case DegreeFormula::lem26:
      return lemma26_degree(p.n, p.genus, p.n);
    case DegreeFormula::prop27:
      if (r < 1) throw RegimeError("Klein configuration needs even n");
      return pow2(2 * p.genus_z);
    case DegreeFormula::dim_prym:
      return Integer((p.n - 1) * g1);
    default:
      break;
  }

  require_r_at_least(s, 2, formula_name(f));
  require_branch_counts(p);
  switch (f) {
    case DegreeFormula::prop32:
      return pow2((m - 1) * g1 + p.s1 - 2);
    case DegreeFormula::prop42:
      return m_factor() * pow2(((2 * two_r - r) * m + r) * g1 + 2 - p.s0);
    case DegreeFormula::prop42_alpha:
      return pow2(((two_r / 2 - r) * m - (r - 2)) * g1);
    case DegreeFormula::prop42_alpha1:
      return m_factor() * pow2(((two_r / 2 - r) * m + r) * g1);
    case DegreeFormula::prop42_alpha2:
      return pow2(two_r / 2 * m * g1 + 2 - p.s0);
    case DegreeFormula::prop42_alpha3:
      return pow2(two_r * m * g1);
    case DegreeFormula::prop42_psi_half:
      return lemma26_degree(p.n / 2, p.genus, p.n / 2);
    case DegreeFormula::cor43:
      return m_factor() * pow2(((2 * two_r - r - 1) * m + r - 1) * g1);
    case DegreeFormula::cor44:
      return pow2(((2 * two_r - r - 1) * m - (r + 1)) * g1);
    case DegreeFormula::cor44_phi:
      return pow_int(two_r * m, 2 * g1);
    case DegreeFormula::cor44_phi_printed:
      return pow_int(16 * m, 2 * g1);
    case DegreeFormula::thm41:
      return pow2(((two_r - r - 1) * m - (r - 1)) * g1);
    case DegreeFormula::thm41_phi1:
      return pow2(two_r / 2 * m * g1 + 2 - p.s0);
    case DegreeFormula::thm41_phi2:
      return pow2(two_r / 2 * m * g1 + 2 - p.s1);
    case DegreeFormula::thm41_phi1_printed:
      return pow2(8 * m * g1 + 2 - p.s0);
    case DegreeFormula::thm41_phi2_printed:
      return pow2(8 * m * g1 + 2 - p.s1);
    default:
      break;
  }
  throw InputError("unknown degree formula");
}

std::string_view formula_name(DegreeFormula f) {
  switch (f) {
    case DegreeFormula::thm21: return "THM21";
    case DegreeFormula::lem26: return "LEM26";
    case DegreeFormula::prop27: return "PROP27";
    case DegreeFormula::prop32: return "PROP32";
    case DegreeFormula::prop42: return "PROP42";
    case DegreeFormula::prop42_alpha: return "PROP42.alpha";
    case DegreeFormula::prop42_alpha1: return "PROP42.alpha1";
    case DegreeFormula::prop42_alpha2: return "PROP42.alpha2";
    case DegreeFormula::prop42_alpha3: return "PROP42.alpha3";
    case DegreeFormula::prop42_psi_half: return "PROP42.psi";
    case DegreeFormula::cor43: return "COR43";
    case DegreeFormula::cor44: return "COR44";
    case DegreeFormula::cor44_phi: return "COR44.phi";
    case DegreeFormula::cor44_phi_printed: return "COR44.phi[printed]";
    case DegreeFormula::thm41: return "THM41";
    case DegreeFormula::thm41_phi1: return "THM41.phi1";
    case DegreeFormula::thm41_phi2: return "THM41.phi2";
    case DegreeFormula::thm41_phi1_printed: return "THM41.phi1[printed]";
    case DegreeFormula::thm41_phi2_printed: return "THM41.phi2[printed]";
    case DegreeFormula::dim_prym: return "DIMP";
  }
  return "?";
}

std::string_view formula_anchor(DegreeFormula f) {
  switch (f) {
    case DegreeFormula::thm21: return "is an isomorphism";
    case DegreeFormula::lem26: return "|JZ[d]| / |ker g^*|^2";
    case DegreeFormula::prop27: return "2^{2g(Z)}";
    case DegreeFormula::prop32: return "2^{(m-1)(g-1)+s_1-2}";
    case DegreeFormula::prop42: return "m^{2g-2} 2^{[(2^{r+1}-r)m+r](g-1)+2-s_0}";
    case DegreeFormula::prop42_alpha: return "2^{[(2^{r-1}-r)m-(r-2)](g-1)}";
    case DegreeFormula::prop42_alpha1: return "m^{2g-2} 2^{[(2^{r-1}-r)m+r](g-1)}";
    case DegreeFormula::prop42_alpha2: return "2^{2g(X_{K_tau})}";
    case DegreeFormula::prop42_alpha3: return "2^{2g(X_{sigma^{n/2}})-2}";
    case DegreeFormula::prop42_psi_half: return "(2^{r-1}m)^{2g-2}";
    case DegreeFormula::cor43: return "m^{2g-2} 2^{[(2^{r+1}-r-1)m+r-1](g-1)}";
    case DegreeFormula::cor44: return "2^{[(2^{r+1}-r-1)m-(r+1)](g-1)}";
    case DegreeFormula::cor44_phi: return "(2^r m)^{2g-2}";
    case DegreeFormula::cor44_phi_printed: return "(16m)^{2g-2}";
    case DegreeFormula::thm41: return "2^{[(2^r-r-1)m-(r-1)](g-1)}";
    case DegreeFormula::thm41_phi1: return "2^{2^{r-1}m(g-1)+2-s_0}";
    case DegreeFormula::thm41_phi2: return "2^{2^{r-1}m(g-1)+2-s_1}";
    case DegreeFormula::thm41_phi1_printed: return "2^{8m(g-1)+2-s_0}";
    case DegreeFormula::thm41_phi2_printed: return "2^{8m(g-1)+2-s_1}";
    case DegreeFormula::dim_prym: return "dim P = (n-1)(g-1)";
  }
  return "?";
}

}  // namespace prymcheck
