#pragma once

// Closed-form genus and isogeny-degree formulas for the dihedral tower over a
// hyperelliptic curve of genus g, with the cyclic degree written n = 2^r m.
// Every evaluation is exact; regime violations throw RegimeError.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "prymcheck/lattice.hpp"

namespace prymcheck {

struct TwoAdicSplit {
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t m = 0;  // odd
};

[[nodiscard]] TwoAdicSplit two_adic_split(std::int64_t n);

/// Canonical curve names used as keys of genus_closed_forms().
namespace curve {
inline constexpr std::string_view X = "X";
inline constexpr std::string_view H = "H";
inline constexpr std::string_view X_sigma_half = "X_sigma^{n/2}";
inline constexpr std::string_view X_sigma_quarter = "X_sigma^{n/4}";
inline constexpr std::string_view X_tau = "X_tau";
inline constexpr std::string_view X_tau_sigma_half = "X_tau*sigma^{n/2}";
inline constexpr std::string_view X_tau_sigma_m = "X_tau*sigma^m";
inline constexpr std::string_view X_K_tau = "X_K_tau";
inline constexpr std::string_view X_K_tau_sigma_m = "X_K_tau*sigma^m";
inline constexpr std::string_view X_T_tau = "X_T_tau";
inline constexpr std::string_view X_T_tau_sigma_m = "X_T_tau*sigma^m";
/// The order-8 quotient genus printed under the label X_{tau sigma^m}; kept
/// as a separate key so either reading can be checked.
inline constexpr std::string_view X_tau_sigma_m_printed = "X_tau*sigma^m[printed order-8 line]";
}  // namespace curve

/// Genera of the canonical quotients. X and H always; for n = 2 mod 4 the
/// two reflection quotients; for r >= 2 the full table of the tower.
[[nodiscard]] std::map<std::string, std::int64_t, std::less<>> genus_closed_forms(
    std::int64_t n, std::int64_t genus, std::int64_t s0, std::int64_t s1);

enum class DegreeFormula {
  thm21,              // 1: addition map is an isomorphism (odd n or n = 2 mod 4)
  lem26,              // |JZ[d]| / |ker g^*|^2 for f: X -> H, i.e. n^{2g-2}
  prop27,             // 2^{2 g(Z)}, Z = X_{K_tau}
  prop32,             // deg h
  prop42,             // deg of the five-factor addition map onto JX
  prop42_alpha,       // JX_{K_tau} x JX_{K_tau sigma^m} -> P(f_3 f_2)
  prop42_alpha1,      // alpha_1 onto JX_{sigma^{n/2}}
  prop42_alpha2,      // P(b_tau) x P(b_{tau sigma^{n/2}}) -> P(f_1)
  prop42_alpha3,      // f_1^* JX_{sigma^{n/2}} x P(f_1) -> JX
  prop42_psi_half,    // (f_3 f_2)^* JH x P(f_3 f_2) -> JX_{sigma^{n/2}}
  cor43,
  cor44,
  cor44_phi,          // f^* JH x P(f) -> JX, (2^r m)^{2g-2}
  cor44_phi_printed,  // the same, as printed: (16 m)^{2g-2}
  thm41,
  thm41_phi1,         // JX_{K_tau} x P(b_tau) -> JX_tau
  thm41_phi2,         // JX_{K_tau sigma^m} x P(b_tau sigma^m) -> JX_{tau sigma^m}
  thm41_phi1_printed, // 2^{8m(g-1)+2-s0}
  thm41_phi2_printed, // 2^{8m(g-1)+2-s1}
  dim_prym,           // (n-1)(g-1)
};

struct FormulaParams {
  std::int64_t n = 0;
  std::int64_t genus = 0;
  std::int64_t s0 = 0;
  std::int64_t s1 = 0;
  std::int64_t genus_z = 0;  // prop27 only
};

[[nodiscard]] Integer degree_closed_form(DegreeFormula f, const FormulaParams& p);
[[nodiscard]] std::string_view formula_name(DegreeFormula f);
/// Exponent text of the formula, used as the anchor of a report record.
[[nodiscard]] std::string_view formula_anchor(DegreeFormula f);

/// Degree |JZ[d]| / |ker g^*|^2 of g^*JZ x P(Y/Z) -> JY.
[[nodiscard]] Integer lemma26_degree(std::int64_t degree, std::int64_t genus_z, std::int64_t kernel_order);

}  // namespace prymcheck
