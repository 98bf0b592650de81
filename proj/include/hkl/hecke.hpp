#pragma once

// The Hecke algebra of a finite Coxeter system over Z[q, q^-1], with the
// quadratic relation T_s^2 = 1 + (q^-1 - q) T_s.

#include "hkl/coxeter.hpp"
#include "hkl/laurent.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <unordered_map>
#include <utility>

namespace hkl {

/// A finite sum of coeff * T_w. Coefficients are never the zero polynomial.
class HeckeElement {
public:
  using Terms = std::map<Element, LaurentPoly>;

  HeckeElement() = default;
  explicit HeckeElement(const CoxeterSystem& sys) : sys_(&sys) {}
  HeckeElement(const CoxeterSystem& sys, Element w, LaurentPoly coeff = 1) : sys_(&sys) { add(w, coeff); }

  const CoxeterSystem* system() const { return sys_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  LaurentPoly coeff(Element w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? LaurentPoly{} : it->second;
  }

  void add(Element w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  /// this += factor * c * T_w
  void add_scaled(Element w, const LaurentPoly& factor, const LaurentPoly& c) {
    if (factor.is_zero() || c.is_zero()) return;
    auto& slot = terms_[w];
    slot.add_scaled(factor, c);
    if (slot.is_zero()) terms_.erase(w);
  }

  HeckeElement& operator+=(const HeckeElement& o) {
    adopt(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    adopt(o);
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  /// this += factor * o
  void add_scaled(const LaurentPoly& factor, const HeckeElement& o) {
    adopt(o);
    for (const auto& [w, c] : o.terms_) add_scaled(w, factor, c);
  }

  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const LaurentPoly& p, const HeckeElement& h) {
    HeckeElement r(h);
    r.terms_.clear();
    r.add_scaled(p, h);
    return r;
  }
  friend HeckeElement operator*(const HeckeElement& a, const HeckeElement& b);
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) { return a.terms_ == b.terms_; }

  /// Element-wise transform of the coefficients; zero results are dropped.
  template <typename F>
  HeckeElement map_coeffs(F&& f) const {
    HeckeElement r(*sys_);
    for (const auto& [w, c] : terms_) r.add(w, f(c));
    return r;
  }

  void check_same_system(const HeckeElement& o) const {
    if (sys_ && o.sys_ && sys_ != o.sys_)
      throw domain_error("Hecke elements belong to different ambient Coxeter systems");
  }

private:
  void adopt(const HeckeElement& o) {
    check_same_system(o);
    if (!sys_) sys_ = o.sys_;
  }

  const CoxeterSystem* sys_ = nullptr;
  Terms terms_;
};

/// "(q)*T[1,2] + (1)*T[e]", in canonical order.
inline std::ostream& operator<<(std::ostream& os, const HeckeElement& h) {
  if (h.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [w, c] : h.terms()) {
    os << (first ? "" : " + ") << "(" << c << ")*T[" << h.system()->word_string(w) << "]";
    first = false;
  }
  return os;
}

/// T_s * h, by the rule T_s T_w = T_{sw} (sw > w), T_{sw} + (q^-1 - q) T_w (sw < w).
inline HeckeElement mul_generator_left(int s, const HeckeElement& h) {
  const CoxeterSystem& sys = *h.system();
  static const LaurentPoly kQuad = LaurentPoly::q_inv() - LaurentPoly::q();
  HeckeElement r(sys);
  for (const auto& [w, c] : h.terms()) {
    const Element sw = sys.mul_left(s, w);
    r.add(sw, c);
    if (sys.length(sw) < sys.length(w)) r.add_scaled(w, kQuad, c);
  }
  return r;
}

/// h * T_s, mirror image of mul_generator_left.
inline HeckeElement mul_generator_right(const HeckeElement& h, int s) {
  const CoxeterSystem& sys = *h.system();
  static const LaurentPoly kQuad = LaurentPoly::q_inv() - LaurentPoly::q();
  HeckeElement r(sys);
  for (const auto& [w, c] : h.terms()) {
    const Element ws = sys.mul_right(w, s);
    r.add(ws, c);
    if (sys.length(ws) < sys.length(w)) r.add_scaled(w, kQuad, c);
  }
  return r;
}

/// Product in the Hecke algebra. The left factor is decomposed into
/// generators; T_x b is built as T_s (T_{sx} b) for a left descent s of x,
/// memoized over the elements visited.
inline HeckeElement operator*(const HeckeElement& a, const HeckeElement& b) {
  a.check_same_system(b);
  const CoxeterSystem* sys = a.system() ? a.system() : b.system();
  if (!sys || a.is_zero() || b.is_zero()) return sys ? HeckeElement(*sys) : HeckeElement();
  std::unordered_map<std::uint32_t, HeckeElement> memo;
  memo.emplace(kIdentity.id, b);
  std::function<const HeckeElement&(Element)> times_b = [&](Element x) -> const HeckeElement& {
    if (auto it = memo.find(x.id); it != memo.end()) return it->second;
    const int s = sys->word(x).front();
    HeckeElement v = mul_generator_left(s, times_b(sys->mul_left(s, x)));
    return memo.emplace(x.id, std::move(v)).first->second;
  };
  HeckeElement r(*sys);
  for (const auto& [x, c] : a.terms()) r.add_scaled(c, times_b(x));
  return r;
}

/// Hecke algebra operations that need per-system memoization: the bar
/// involution, omega and the bilinear form. Thread-safe.
class HeckeAlgebra {
public:
  explicit HeckeAlgebra(std::shared_ptr<const CoxeterSystem> sys) : sys_(std::move(sys)) {}

  const CoxeterSystem& system() const { return *sys_; }
  std::shared_ptr<const CoxeterSystem> system_ptr() const { return sys_; }

  HeckeElement t_basis(Element w) const { return HeckeElement(*sys_, w); }
  HeckeElement scalar(const LaurentPoly& p) const { return HeckeElement(*sys_, kIdentity, p); }
  HeckeElement zero() const { return HeckeElement(*sys_); }

  /// bar(T_s) = T_s^{-1} = T_s + (q - q^-1).
  static LaurentPoly bar_shift() { return LaurentPoly::q() - LaurentPoly::q_inv(); }

  /// bar(T_x), built along the ShortLex word of x.
  const HeckeElement& bar_t(Element x) const {
    {
      std::lock_guard lock(mutex_);
      if (auto it = bar_memo_.find(x.id); it != bar_memo_.end()) return *it->second;
    }
    HeckeElement v = [&] {
      if (x == kIdentity) return t_basis(kIdentity);
      const Word& w = sys_->word(x);
      const int s = w.back();
      const HeckeElement& prefix = bar_t(sys_->mul_right(x, s));
      HeckeElement r = mul_generator_right(prefix, s);
      r.add_scaled(bar_shift(), prefix);
      return r;
    }();
    std::lock_guard lock(mutex_);
    auto [it, _] = bar_memo_.emplace(x.id, std::make_unique<HeckeElement>(std::move(v)));
    return *it->second;
  }

  /// Product of bar(T_s) along an arbitrary reduced word; equals bar_t of its element.
  HeckeElement bar_t_along_word(const Word& word) const {
    HeckeElement r = t_basis(kIdentity);
    for (int s : word) {
      HeckeElement next = mul_generator_right(r, s);
      next.add_scaled(bar_shift(), r);
      r = std::move(next);
    }
    return r;
  }

  /// Ring automorphism: T_x -> (T_{x^-1})^-1, q -> q^-1.
  HeckeElement bar(const HeckeElement& h) const {
    HeckeElement r(*sys_);
    for (const auto& [x, c] : h.terms()) r.add_scaled(c.bar(), bar_t(x));
    return r;
  }

  /// (T_x)^-1 = bar(T_{x^-1}).
  const HeckeElement& t_inverse(Element x) const { return bar_t(sys_->inverse(x)); }

  /// Ring anti-automorphism: T_x -> (T_x)^-1, coefficients barred.
  HeckeElement omega(const HeckeElement& h) const {
    HeckeElement r(*sys_);
    for (const auto& [x, c] : h.terms()) r.add_scaled(c.bar(), t_inverse(x));
    return r;
  }

  HeckeElement psi(const HeckeElement& h) const;

  /// The form with (bar(T_x), T_y) = delta_{x,y}, bar-semilinear in the
  /// first slot: writing h = sum a_x bar(T_x) and h2 = sum b_y T_y, returns
  /// sum bar(a_x) b_x, i.e. sum_x [T_x]bar(h) * [T_x]h2. With this reading
  /// (a h, h2) = (h, omega(a) h2).
  LaurentPoly form(const HeckeElement& h, const HeckeElement& h2) const {
    h.check_same_system(h2);
    const HeckeElement barred = bar(h);
    LaurentPoly r;
    for (const auto& [x, b] : h2.terms()) {
      auto it = barred.terms().find(x);
      if (it != barred.terms().end()) r.add_scaled(it->second, b);
    }
    return r;
  }

private:
  std::shared_ptr<const CoxeterSystem> sys_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint32_t, std::unique_ptr<HeckeElement>> bar_memo_;
};

/// Ring anti-automorphism fixing q: T_w -> T_{w^-1}.
inline HeckeElement psi(const HeckeElement& h) {
  HeckeElement r(*h.system());
  for (const auto& [x, c] : h.terms()) r.add(h.system()->inverse(x), c);
  return r;
}

inline HeckeElement HeckeAlgebra::psi(const HeckeElement& h) const { return hkl::psi(h); }

/// The restriction |_J: keeps exactly the T_w with w in W_J. The result is an
/// element of H_J, represented inside H(W) (supported on W_J).
inline HeckeElement restrict_to(const HeckeElement& h, GeneratorSet J) {
  const CoxeterSystem& sys = *h.system();
  sys.check_subset(J);
  HeckeElement r(sys);
  for (const auto& [w, c] : h.terms())
    if (sys.in_parabolic(w, J)) r.add(w, c);
  return r;
}

/// True iff every term of h lies in W_J.
inline bool supported_in(const HeckeElement& h, GeneratorSet J) {
  for (const auto& [w, c] : h.terms())
    if (!h.system()->in_parabolic(w, J)) return false;
  return true;
}

}  // namespace hkl
