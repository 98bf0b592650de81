#pragma once

// Named property checks over a whole Coxeter system. Each returns a
// CheckResult; the first counterexample, if any, is kept in `detail`.

#include "hkl/oracles.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace hkl::verify {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string detail;

  explicit CheckResult(std::string n) : name(std::move(n)) {}

  void fail(std::string why) {
    if (passed) detail = std::move(why);
    passed = false;
  }
  void expect(bool ok, const std::function<std::string()>& why) {
    ++checked;
    if (!ok) fail(why());
  }
};

/// All subsets of S, by bitmask.
inline std::vector<GeneratorSet> all_subsets(const CoxeterSystem& sys) {
  std::vector<GeneratorSet> out;
  for (std::uint32_t m = 0; m < (1u << sys.rank()); ++m) out.emplace_back(m);
  return out;
}

inline std::string describe(const CoxeterSystem& sys, Element w) { return "[" + sys.word_string(w) + "]"; }

inline bool all_coeffs_nonnegative_polys(const Coefficients& c) {
  for (const auto& [x, p] : c)
    if (!p.is_nonnegative_polynomial()) return false;
  return true;
}

// ---- involutions and the KL basis ----

inline CheckResult check_self_duality(const KLCache& cache, const HeckeAlgebra& alg) {
  CheckResult r{"self_duality_bar_Cw"};
  for (Element w : cache.system().enumerate())
    r.expect(alg.bar(cache.element(w)) == cache.element(w), [&] { return "bar(C_w) != C_w at w = " + describe(cache.system(), w); });
  return r;
}

inline CheckResult check_involutions(const HeckeAlgebra& alg) {
  const CoxeterSystem& sys = alg.system();
  CheckResult r{"bar_omega_psi_involutions"};
  for (Element x : sys.enumerate()) {
    const HeckeElement t = alg.t_basis(x);
    const HeckeElement q_t = LaurentPoly::q() * t;
    r.expect(alg.bar(alg.bar(q_t)) == q_t, [&] { return "bar not involutive at " + describe(sys, x); });
    r.expect(alg.omega(alg.omega(q_t)) == q_t, [&] { return "omega not involutive at " + describe(sys, x); });
    r.expect(psi(psi(q_t)) == q_t, [&] { return "psi not involutive at " + describe(sys, x); });
    r.expect(psi(alg.bar(q_t)) == alg.bar(psi(q_t)), [&] { return "psi does not commute with bar at " + describe(sys, x); });
    // a second reduced word: reverse of the ShortLex word of x^-1
    Word other = sys.word(sys.inverse(x));
    std::reverse(other.begin(), other.end());
    r.expect(alg.bar_t_along_word(other) == alg.bar_t(x), [&] { return "bar(T_x) depends on the reduced word at " + describe(sys, x); });
  }
  return r;
}

inline CheckResult check_psi_kl(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"psi_Cw_is_C_winv"};
  for (Element w : sys.enumerate())
    r.expect(psi(cache.element(w)) == cache.element(sys.inverse(w)), [&] { return "Psi(C_w) != C_{w^-1} at " + describe(sys, w); });
  return r;
}

/// Support in {x <= w}, h_{w,w} = 1, and for x < w exponents in [1, l(w) - l(x)].
inline CheckResult check_kl_unitriangular(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"kl_unitriangular_degree_bound"};
  for (Element w : sys.enumerate()) {
    const HeckeElement& cw = cache.element(w);
    r.expect(cw.coeff(w) == LaurentPoly(1), [&] { return "h_{w,w} != 1 at " + describe(sys, w); });
    for (const auto& [x, p] : cw.terms()) {
      if (x == w) continue;
      r.expect(sys.bruhat_less(x, w) && p.min_exponent() >= 1 && p.max_exponent() <= sys.length(w) - sys.length(x),
               [&] { return "bad h_{x,w} = " + p.to_string() + " at x = " + describe(sys, x) + ", w = " + describe(sys, w); });
    }
  }
  return r;
}

inline CheckResult check_kl_nonnegative(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"kl_polynomials_nonnegative"};
  for (Element w : sys.enumerate())
    for (const auto& [x, p] : cache.element(w).terms())
      r.expect(p.is_nonnegative_polynomial(), [&] { return "h_{x,w} = " + p.to_string() + " at x = " + describe(sys, x) + ", w = " + describe(sys, w); });
  return r;
}

inline CheckResult check_kl_dual_path(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  KLRecursionOracle oracle(cache.system_ptr());
  CheckResult r{"kl_product_path_equals_descent_recursion"};
  for (Element w : sys.enumerate())
    for (Element x : sys.enumerate())
      r.expect(cache.poly(x, w) == oracle.poly(x, w), [&] {
        return "h_{x,w} mismatch at x = " + describe(sys, x) + ", w = " + describe(sys, w) + ": " +
               cache.poly(x, w).to_string() + " vs " + oracle.poly(x, w).to_string();
      });
  return r;
}

// ---- positivity ----

/// Every h^J_{uv,w} lies in Z_{>=0}[q], for all J, u in W^J and the given w.
inline CheckResult check_restriction_positivity(const KLCache& cache, const std::vector<Element>& ws) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"restriction_coefficients_nonnegative"};
  for (GeneratorSet J : all_subsets(sys)) {
    const auto reps = sys.min_coset_reps(J, Side::Left);
    for (Element w : ws)
      for (Element u : reps)
        r.expect(all_coeffs_nonnegative_polys(restriction_coeffs(cache, u, w, J)), [&] {
          return "negative h^J at J = {" + J.to_string() + "}, u = " + describe(sys, u) + ", w = " + describe(sys, w);
        });
  }
  return r;
}

inline CheckResult check_restriction_positivity(const KLCache& cache) {
  return check_restriction_positivity(cache, cache.system().enumerate());
}

/// Every transition matrix h^{I,J}, I subset of J, lies in Z_{>=0}[q].
inline CheckResult check_transition_positivity(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"transition_matrices_nonnegative"};
  for (GeneratorSet J : all_subsets(sys))
    for (GeneratorSet I : all_subsets(sys)) {
      if (!I.is_subset_of(J)) continue;
      const TransitionMatrix tm = transition_matrix(cache, I, J);
      r.expect(tm.entries.is_nonnegative_polynomial(),
               [&] { return "negative entry in h^{I,J} for I = {" + I.to_string() + "}, J = {" + J.to_string() + "}"; });
    }
  return r;
}

inline CheckResult check_factorization(const KLCache& cache, const std::vector<GeneratorSet>& chain) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"chain_factorization_equals_kl_matrix"};
  const auto factors = factorize_chain(cache, chain);
  for (std::size_t i = 0; i < factors.size(); ++i)
    r.expect(factors[i].entries.is_nonnegative_polynomial(), [&] { return "factor " + std::to_string(i + 1) + " has a negative entry"; });
  r.expect(chain_product(sys, factors) == kl_matrix(cache), [] { return "product of factors differs from the KL matrix"; });
  return r;
}

/// The block-replicated transition matrix agrees with direct per-column
/// expansion and has the coset block structure.
inline CheckResult check_transition_block_structure(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"transition_matrix_blocks"};
  for (GeneratorSet J : all_subsets(sys))
    for (GeneratorSet I : all_subsets(sys)) {
      if (!I.is_subset_of(J)) continue;
      const TransitionMatrix fast = transition_matrix(cache, I, J);
      const TransitionMatrix slow = transition_matrix(cache, I, J, true);
      r.expect(fast.entries == slow.entries,
               [&] { return "block and per-column paths differ at I = {" + I.to_string() + "}, J = {" + J.to_string() + "}"; });
      for (const auto& [w, col] : fast.entries.columns())
        for (const auto& [x, p] : col) {
          const bool same_coset = sys.parabolic_factorize_left(x, J).first == sys.parabolic_factorize_left(w, J).first;
          r.expect(same_coset && sys.bruhat_leq(x, w) && (x != w || p == LaurentPoly(1)),
                   [&] { return "entry outside the unitriangular coset blocks at x = " + describe(sys, x) + ", w = " + describe(sys, w); });
        }
      for (Element w : sys.enumerate())
        r.expect(fast.entries.at(w, w) == LaurentPoly(1), [&] { return "diagonal entry not 1 at " + describe(sys, w); });
    }
  return r;
}

inline CheckResult check_gh_positivity(const KLCache& cache, std::size_t samples, std::uint64_t seed) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"C_w_times_TC_u_positive_in_TC"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> elem(0, static_cast<std::uint32_t>(sys.size() - 1));
  std::uniform_int_distribution<std::uint32_t> subset(0, (1u << sys.rank()) - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const Element w{elem(rng)}, u{elem(rng)};
    const GeneratorSet J(subset(rng));
    const HybridBasisSpec spec{J, Orientation::TC};
    const Coefficients c = expand_in_hybrid(cache, cache.element(w) * hybrid_element(cache, spec, u), spec);
    bool ok = true;
    for (const auto& [x, p] : c) ok = ok && p.has_nonnegative_coeffs();
    r.expect(ok, [&] { return "negative coefficient at w = " + describe(sys, w) + ", u = " + describe(sys, u) + ", J = {" + J.to_string() + "}"; });
  }
  return r;
}

// ---- structure of restriction and hybrid bases ----

/// TC^J_w = T_w + sum_{x < v} h_{x,v} T_{ux} for w = uv.
inline CheckResult check_hybrid_unitriangular(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"hybrid_basis_unitriangular"};
  for (GeneratorSet J : all_subsets(sys))
    for (Element w : sys.enumerate()) {
      auto [u, v] = sys.parabolic_factorize_left(w, J);
      HeckeElement expected(sys);
      for (const auto& [x, p] : cache.element(v).terms()) expected.add(sys.multiply(u, x), p);
      const HeckeElement tc = hybrid_element(cache, {J, Orientation::TC}, w);
      bool ok = tc == expected && tc.coeff(w) == LaurentPoly(1);
      for (const auto& [x, p] : tc.terms()) ok = ok && sys.bruhat_leq(x, w);
      r.expect(ok, [&] { return "TC^J_w not unitriangular at J = {" + J.to_string() + "}, w = " + describe(sys, w); });
    }
  return r;
}

/// (T_{u^-1} T_{u'})|_J = delta_{u,u'} for u, u' in W^J.
inline CheckResult check_orthogonality(const CoxeterSystem& sys) {
  CheckResult r{"restriction_orthogonality"};
  for (GeneratorSet J : all_subsets(sys)) {
    const auto reps = sys.min_coset_reps(J, Side::Left);
    for (Element u : reps)
      for (Element up : reps) {
        const HeckeElement got = restrict_to(HeckeElement(sys, sys.inverse(u)) * HeckeElement(sys, up), J);
        const HeckeElement want = u == up ? HeckeElement(sys, kIdentity) : HeckeElement(sys);
        r.expect(got == want, [&] { return "orthogonality fails at J = {" + J.to_string() + "}, u = " + describe(sys, u) + ", u' = " + describe(sys, up); });
      }
  }
  return r;
}

/// T_u TC^I_z = TC^I_{uz} for I subset of J, u in W^J, z in W_J; also uz in W^I
/// whenever z in W^I.
inline CheckResult check_tu_tcz(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"T_u_TC_z_equals_TC_uz"};
  for (GeneratorSet J : all_subsets(sys))
    for (GeneratorSet I : all_subsets(sys)) {
      if (!I.is_subset_of(J)) continue;
      const HybridBasisSpec spec{I, Orientation::TC};
      for (Element u : sys.min_coset_reps(J, Side::Left))
        for (Element z : sys.parabolic_elements(J)) {
          const Element uz = sys.multiply(u, z);
          r.expect(HeckeElement(sys, u) * hybrid_element(cache, spec, z) == hybrid_element(cache, spec, uz),
                   [&] { return "fails at I = {" + I.to_string() + "}, J = {" + J.to_string() + "}, u = " + describe(sys, u) + ", z = " + describe(sys, z); });
          if (sys.is_min_left_rep(z, I))
            r.expect(sys.is_min_left_rep(uz, I), [&] { return "uz not in W^I at u = " + describe(sys, u) + ", z = " + describe(sys, z); });
        }
    }
  return r;
}

/// Zero patterns of h^J_{uv,w}: vanishing when vs > v and ws < w for some s in J;
/// support inside u <= w^J and uv <= w.
inline CheckResult check_vanishing_and_support(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"restriction_vanishing_and_support"};
  for (GeneratorSet J : all_subsets(sys))
    for (Element w : sys.enumerate()) {
      const Element wq = sys.parabolic_factorize_left(w, J).first;
      for (Element u : sys.min_coset_reps(J, Side::Left)) {
        const Coefficients c = restriction_coeffs(cache, u, w, J);
        if (!sys.bruhat_leq(u, wq))
          r.expect(c.empty(), [&] { return "nonzero restriction with u not <= w^J at u = " + describe(sys, u) + ", w = " + describe(sys, w); });
        for (const auto& [v, p] : c) {
          r.expect(sys.bruhat_leq(sys.multiply(u, v), w), [&] { return "h^J_{uv,w} != 0 with uv not <= w"; });
          for (int s : J.to_vector())
            r.expect(!(sys.is_right_descent(w, s) && !sys.is_right_descent(v, s)), [&] {
              return "h^J_{uv,w} != 0 although vs > v, ws < w at J = {" + J.to_string() + "}, u = " + describe(sys, u) +
                     ", v = " + describe(sys, v) + ", w = " + describe(sys, w) + ", s = " + std::to_string(s);
            });
        }
      }
    }
  return r;
}

/// Psi(TC^J_w) = CT^J_{w^-1}, and CT^J_x expands to the indicator of x.
inline CheckResult check_psi_transport(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"psi_transport_TC_to_CT"};
  for (GeneratorSet J : all_subsets(sys))
    for (Element w : sys.enumerate()) {
      const HeckeElement ct = hybrid_element(cache, {J, Orientation::CT}, sys.inverse(w));
      r.expect(psi(hybrid_element(cache, {J, Orientation::TC}, w)) == ct,
               [&] { return "Psi(TC^J_w) != CT^J_{w^-1} at J = {" + J.to_string() + "}, w = " + describe(sys, w); });
      const Coefficients e = expand_in_hybrid(cache, ct, {J, Orientation::CT});
      r.expect(e.size() == 1 && e.begin()->first == sys.inverse(w) && e.begin()->second == LaurentPoly(1),
               [&] { return "CT^J expansion of a basis element is not an indicator at w = " + describe(sys, w); });
    }
  return r;
}

/// restriction_coeffs (from the KL column) agrees with expand_in_hybrid of C_w.
inline CheckResult check_restriction_matches_hybrid(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"restriction_equals_hybrid_expansion"};
  for (GeneratorSet J : all_subsets(sys))
    for (Element w : sys.enumerate()) {
      const Coefficients e = expand_in_hybrid(cache, cache.element(w), {J, Orientation::TC});
      Coefficients via_res;
      for (Element u : sys.min_coset_reps(J, Side::Left))
        for (const auto& [v, p] : restriction_coeffs(cache, u, w, J)) via_res.emplace(sys.multiply(u, v), p);
      r.expect(e == via_res, [&] { return "mismatch at J = {" + J.to_string() + "}, w = " + describe(sys, w); });
    }
  return r;
}

// ---- oracles ----

inline CheckResult check_parabolic_consistency(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"parabolic_kl_equals_sign_module"};
  for (GeneratorSet J : all_subsets(sys))
    r.expect(parabolic_kl(cache, J) == oracles::parabolic_kl_deodhar(cache, J),
             [&] { return "mismatch at J = {" + J.to_string() + "}"; });
  return r;
}

/// Type A_n, J = [n-1]: P_{u,u'} is 1 on the diagonal, q when l(u') - l(u) = 1, else 0.
inline CheckResult check_typeA_parabolic_formula(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"typeA_parabolic_kl_formula"};
  const GeneratorSet J = GeneratorSet::first(sys.rank() - 1);
  const PolyMatrix p = parabolic_kl(cache, J);
  for (Element u : p.order())
    for (Element up : p.order()) {
      const int gap = sys.length(up) - sys.length(u);
      const LaurentPoly want = gap == 0 ? LaurentPoly(1) : gap == 1 ? LaurentPoly::q() : LaurentPoly{};
      r.expect(p.at(u, up) == want, [&] { return "P_{u,u'} = " + p.at(u, up).to_string() + " at u = " + describe(sys, u) + ", u' = " + describe(sys, up); });
    }
  return r;
}

inline CheckResult check_dihedral(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"dihedral_closed_form"};
  const GeneratorSet J{1};
  for (Element u : sys.min_coset_reps(J, Side::Left))
    for (Element w : sys.enumerate())
      r.expect(restriction_coeffs(cache, u, w, J) == oracles::dihedral_restriction(sys, u, w),
               [&] { return "mismatch at u = " + describe(sys, u) + ", w = " + describe(sys, w); });
  // C_w = R_w in dihedral groups
  for (Element w : sys.enumerate())
    r.expect(cache.element(w) == r_element(sys, w), [&] { return "C_w != R_w at " + describe(sys, w); });
  return r;
}

inline CheckResult check_typeA_restrictions(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  const int n = sys.rank();
  CheckResult r{"typeA_restriction_formulas"};
  const GeneratorSet J = GeneratorSet::first(n - 1);
  for (int i = 1; i <= std::min(3, n); ++i) {
    const Element u = oracles::ascending_product(sys, i, n);
    for (Element w : sys.enumerate())
      r.expect(oracles::typeA_restriction(cache, i, w) == restriction_coeffs(cache, u, w, J),
               [&] { return "i = " + std::to_string(i) + " mismatch at w = " + describe(sys, w); });
  }
  // (T_{s_n...s_i} C_{s_i...s_n v})|_{[n-1]} = C_v
  for (int i = 1; i <= n; ++i) {
    const Element u = oracles::ascending_product(sys, i, n);
    for (Element v : sys.parabolic_elements(J)) {
      const Coefficients c = restriction_coeffs(cache, u, sys.multiply(u, v), J);
      r.expect(c.size() == 1 && c.begin()->first == v && c.begin()->second == LaurentPoly(1),
               [&] { return "translated restriction is not C_v at i = " + std::to_string(i) + ", v = " + describe(sys, v); });
    }
  }
  return r;
}

inline CheckResult check_heq1(const KLCache& cache, const std::vector<int>& is) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"kl_translation_invariance"};
  const auto WJ = sys.parabolic_elements(GeneratorSet::first(sys.rank() - 1));
  for (int i : is)
    for (Element y : WJ)
      for (Element x : WJ)
        r.expect(oracles::heq1_check(cache, i, y, x), [&] { return "fails at i = " + std::to_string(i) + ", y = " + describe(sys, y) + ", x = " + describe(sys, x); });
  return r;
}

inline CheckResult check_hi2i(const KLCache& cache, const std::vector<int>& is) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"kl_shift_by_two_formula_and_mu"};
  const auto WJ = sys.parabolic_elements(GeneratorSet::first(sys.rank() - 1));
  for (int i : is)
    for (Element y : WJ)
      for (Element x : WJ)
        r.expect(oracles::hi2i_check(cache, i, y, x), [&] { return "fails at i = " + std::to_string(i) + ", y = " + describe(sys, y) + ", x = " + describe(sys, x); });
  return r;
}

inline CheckResult check_r_restriction(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  CheckResult r{"R_w_restriction_max_formula"};
  for (GeneratorSet J : all_subsets(sys))
    for (Element u : sys.min_coset_reps(J, Side::Left))
      for (Element w : sys.enumerate()) {
        const HeckeElement direct = restrict_to(HeckeElement(sys, sys.inverse(u)) * r_element(sys, w), J);
        r.expect(oracles::r_restriction(sys, u, w, J) == direct,
                 [&] { return "mismatch at J = {" + J.to_string() + "}, u = " + describe(sys, u) + ", w = " + describe(sys, w); });
      }
  return r;
}

// ---- suites ----

/// suite: all | positivity | oracles | involutions | structure
inline std::vector<CheckResult> run_suite(const KLCache& cache, const std::string& suite) {
  const CoxeterSystem& sys = cache.system();
  const bool all = suite == "all";
  if (!all && suite != "positivity" && suite != "oracles" && suite != "involutions" && suite != "structure")
    throw domain_error("unknown suite \"" + suite + "\" (expected all, positivity, oracles, involutions or structure)");
  std::vector<CheckResult> out;
  if (all || suite == "involutions") {
    HeckeAlgebra alg(cache.system_ptr());
    out.push_back(check_involutions(alg));
    out.push_back(check_self_duality(cache, alg));
    out.push_back(check_psi_kl(cache));
  }
  if (all || suite == "positivity") {
    out.push_back(check_kl_nonnegative(cache));
    out.push_back(check_restriction_positivity(cache));
    out.push_back(check_transition_positivity(cache));
    out.push_back(check_factorization(cache, default_chain(sys.rank())));
  }
  if (all || suite == "oracles") {
    out.push_back(check_kl_dual_path(cache));
    out.push_back(check_parabolic_consistency(cache));
    out.push_back(check_r_restriction(cache));
    if (sys.type().kind == CoxeterKind::I2) out.push_back(check_dihedral(cache));
    if (sys.type().kind == CoxeterKind::A && sys.rank() >= 2) {
      out.push_back(check_typeA_parabolic_formula(cache));
      out.push_back(check_typeA_restrictions(cache));
      std::vector<int> is;
      for (int i = 1; i <= sys.rank(); ++i) is.push_back(i);
      out.push_back(check_heq1(cache, is));
      if (sys.rank() >= 3) {
        std::vector<int> is2;
        for (int i = 1; i <= sys.rank() - 2; ++i) is2.push_back(i);
        out.push_back(check_hi2i(cache, is2));
      }
    }
  }
  if (all || suite == "structure") {
    out.push_back(check_kl_unitriangular(cache));
    out.push_back(check_hybrid_unitriangular(cache));
    out.push_back(check_orthogonality(sys));
    out.push_back(check_tu_tcz(cache));
    out.push_back(check_vanishing_and_support(cache));
    out.push_back(check_psi_transport(cache));
    out.push_back(check_restriction_matches_hybrid(cache));
    out.push_back(check_transition_block_structure(cache));
  }
  return out;
}

}  // namespace hkl::verify
