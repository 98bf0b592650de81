#pragma once

// Closed forms and alternative constructions used to cross-check the main
// pipeline: the sign-induced module, dihedral and type A restriction
// formulas, and the R_w restriction formula.

#include "hkl/hybrid.hpp"

#include <map>
#include <vector>

namespace hkl::oracles {

/// sum_u a_u T_u e_J^-, keys in W^J.
struct SignModuleElement {
  GeneratorSet J;
  std::map<Element, LaurentPoly> terms;

  void add(Element u, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto& slot = terms[u];
    slot += c;
    if (slot.is_zero()) terms.erase(u);
  }
  friend bool operator==(const SignModuleElement& a, const SignModuleElement& b) {
    return a.J == b.J && a.terms == b.terms;
  }
};

inline LaurentPoly minus_q_power(int k) { return LaurentPoly::monomial(k, (k % 2 == 0) ? 1 : -1); }

/// Image of h e_J^- where (T_s + q) e_J^- = 0 for s in J: writing w = u v with
/// u in W^J and v in W_J, T_w e_J^- = (-q)^{l(v)} T_u e_J^-.
inline SignModuleElement sign_project(const HeckeElement& h, GeneratorSet J) {
  const CoxeterSystem& sys = *h.system();
  SignModuleElement out{J, {}};
  for (const auto& [w, c] : h.terms()) {
    auto [u, v] = sys.parabolic_factorize_left(w, J);
    out.add(u, c * minus_q_power(sys.length(v)));
  }
  return out;
}

/// T_s acting on the induced module, from the W^J combinatorics:
/// su > u in W^J gives T_{su}; su < u gives T_{su} + (q^-1 - q) T_u;
/// su not in W^J means su = ut with t in J, so T_s T_u e = (-q) T_u e.
inline SignModuleElement sign_module_act(const CoxeterSystem& sys, int s, const SignModuleElement& m) {
  SignModuleElement out{m.J, {}};
  const LaurentPoly quad = LaurentPoly::q_inv() - LaurentPoly::q();
  for (const auto& [u, c] : m.terms) {
    const Element su = sys.mul_left(s, u);
    if (sys.length(su) < sys.length(u)) {
      out.add(su, c);
      out.add(u, c * quad);
    } else if (sys.is_min_left_rep(su, m.J)) {
      out.add(su, c);
    } else {
      out.add(u, c * minus_q_power(1));
    }
  }
  return out;
}

/// P^{J-}_{u,u'} = [T_u e_J^-] C_{u'} e_J^-, by projecting the KL element.
inline PolyMatrix parabolic_kl_deodhar(const KLCache& cache, GeneratorSet J) {
  const CoxeterSystem& sys = cache.system();
  const std::vector<Element> reps = sys.min_coset_reps(J, Side::Left);
  PolyMatrix m(reps);
  for (Element up : reps)
    for (const auto& [u, c] : sign_project(cache.element(up), J).terms) m.set(u, up, c);
  return m;
}

/// The word with generators 1 and 2 interchanged.
inline Word swap_letters_12(Word w) {
  for (int& s : w) s = (s == 1) ? 2 : (s == 2 ? 1 : s);
  return w;
}

/// Closed form for (T_{u^-1} C_w)|_{{1}} in I2(m), u in W^{{1}} of length k:
///   q^{l(w)-(k+1)} C_{s1}   if w >= u s1,
///   q^{l(w)-k}     C_1      if u <= w <= (u s1) with 1 and 2 interchanged,
///   0                       if w is not >= u.
/// Cases are tried in that order. Bruhat order on a dihedral group is
/// decided by lengths alone, so the system's Bruhat table is not consulted.
inline Coefficients dihedral_restriction(const CoxeterSystem& sys, Element u, Element w) {
  if (sys.type().kind != CoxeterKind::I2) throw unsupported_type_error("dihedral_restriction needs type I2(m)");
  if (sys.is_right_descent(u, 1)) throw domain_error("u = " + sys.word_string(u) + " is not in W^{1}");
  auto leq = [&](Element a, Element b) { return a == b || sys.length(a) < sys.length(b); };
  const int k = sys.length(u);
  const Element us1 = sys.mul_right(u, 1);
  const Element swapped = sys.from_word(swap_letters_12(sys.word(us1)));
  Coefficients out;
  if (leq(us1, w)) {
    out.emplace(sys.generator(1), LaurentPoly::monomial(sys.length(w) - (k + 1)));
  } else if (leq(u, w) && leq(w, swapped)) {
    out.emplace(kIdentity, LaurentPoly::monomial(sys.length(w) - k));
  } else if (!leq(u, w)) {
    // zero
  } else {
    throw std::logic_error("dihedral restriction: no case applies");
  }
  return out;
}

/// s_a s_{a+1} ... s_b as an element (identity when a > b).
inline Element ascending_product(const CoxeterSystem& sys, int a, int b) {
  Word w;
  for (int i = a; i <= b; ++i) w.push_back(i);
  return sys.from_word(w);
}

/// Closed forms for (T_{s_n ... s_i} C_w)|_{[n-1]} in type A_n, i in {1, 2, 3},
/// i.e. u = s_i ... s_n. Keys are the v in W_{[n-1]} of the KL expansion.
inline Coefficients typeA_restriction(const KLCache& cache, int i, Element w) {
  const CoxeterSystem& sys = cache.system();
  const int n = sys.rank();
  if (sys.type().kind != CoxeterKind::A) throw unsupported_type_error("typeA_restriction needs type A");
  if (i < 1 || i > 3 || n < i) throw domain_error("typeA_restriction needs i in {1,2,3} and n >= i");
  const GeneratorSet J = GeneratorSet::first(n - 1);
  auto [quot, par] = sys.parabolic_factorize_left(w, J);
  const Element from1 = ascending_product(sys, 1, n);
  const Element from2 = ascending_product(sys, 2, n);
  const Element from3 = ascending_product(sys, 3, n);

  Coefficients out;
  auto single = [&](const LaurentPoly& c) { out.emplace(par, c); };
  switch (i) {
    case 1:
      if (quot == from1) single(1);
      break;
    case 2:
      if (quot == from2) single(1);
      else if (quot == from1) single(LaurentPoly::q());
      break;
    case 3:
      if (quot == from3) {
        single(1);
      } else if (quot == from2) {
        single(LaurentPoly::q());
      } else if (quot == from1) {
        if (sys.is_left_descent(par, 1)) {
          single(LaurentPoly::monomial(2));
        } else {
          // q C_{s1} C_{w_J}, re-expanded in the KL basis of W_J
          const HeckeElement prod = cache.element(sys.generator(1)) * cache.element(par);
          for (const auto& [v, c] : expand_in_kl(cache, LaurentPoly::q() * prod)) out.emplace(v, c);
        }
      }
      break;
  }
  return out;
}

/// h_{y,x} = h_{s_i...s_n y, s_i...s_n x} for y, x in W_{[n-1]}.
inline bool heq1_check(const KLCache& cache, int i, Element y, Element x) {
  const CoxeterSystem& sys = cache.system();
  const Element p = ascending_product(sys, i, sys.rank());
  return cache.poly(y, x) == cache.poly(sys.multiply(p, y), sys.multiply(p, x));
}

/// The three-case formula for h_{s_{i+2}...s_n y, s_i...s_n x} together with
/// its mu corollary (the coefficient of q is delta_{s_i y, x} + mu(y, x) when
/// s_i y < y and s_i x > x, and 0 otherwise).
inline bool hi2i_check(const KLCache& cache, int i, Element y, Element x) {
  const CoxeterSystem& sys = cache.system();
  const int n = sys.rank();
  const Element lhs_y = sys.multiply(ascending_product(sys, i + 2, n), y);
  const Element lhs_x = sys.multiply(ascending_product(sys, i, n), x);
  const LaurentPoly lhs = cache.poly(lhs_y, lhs_x);

  const Element siy = sys.mul_left(i, y);
  const bool x_desc = sys.is_left_descent(x, i);
  const bool y_desc = sys.is_left_descent(y, i);
  const LaurentPoly q = LaurentPoly::q(), q2 = LaurentPoly::monomial(2);
  LaurentPoly rhs;
  if (x_desc)
    rhs = q2 * cache.poly(y, x);
  else if (y_desc)
    rhs = q * cache.poly(siy, x) + cache.poly(y, x);
  else
    rhs = q * cache.poly(siy, x) + q2 * cache.poly(y, x);
  if (lhs != rhs) return false;

  const BigInt mu_expected = (y_desc && !x_desc) ? BigInt((siy == x) ? 1 : 0) + cache.mu(y, x) : BigInt(0);
  return lhs.coeff(1) == mu_expected;
}

/// (T_{u^-1} R_w)|_J through the maximal elements gamma of {v in W_J : uv <= w}:
/// q^{l(w)-l(u)} sum_gamma q^{-l(gamma)} R_gamma.
inline HeckeElement r_restriction(const CoxeterSystem& sys, Element u, Element w, GeneratorSet J) {
  if (!sys.is_min_left_rep(u, J)) throw domain_error("u = " + sys.word_string(u) + " is not in W^J");
  std::vector<Element> set;
  for (Element v : sys.parabolic_elements(J))
    if (sys.bruhat_leq(sys.multiply(u, v), w)) set.push_back(v);
  HeckeElement out(sys);
  for (Element g : set) {
    bool maximal = true;
    for (Element o : set)
      if (sys.bruhat_less(g, o)) {
        maximal = false;
        break;
      }
    if (maximal)
      out.add_scaled(LaurentPoly::monomial(sys.length(w) - sys.length(u) - sys.length(g)), r_element(sys, g));
  }
  return out;
}

}  // namespace hkl::oracles
