#pragma once

// Hybrid bases TC^J_w = T_{w^J} C_{w_J} and CT^J_w = C_{_Jw} T_{^Jw},
// restriction coefficients h^J and the transition matrices h^{I,J} between
// hybrid bases, including the chain factorization of the KL matrix.

#include "hkl/klbasis.hpp"

#include <map>
#include <vector>

namespace hkl {

enum class Orientation { TC, CT };

struct HybridBasisSpec {
  GeneratorSet J;
  Orientation orientation = Orientation::TC;
};

/// Coefficients indexed by group element; absent means zero.
using Coefficients = std::map<Element, LaurentPoly>;

/// Square matrix over Z[q, q^-1] with rows and columns indexed by a list of
/// group elements. Stored column-major and sparse.
class PolyMatrix {
public:
  using Column = std::map<Element, LaurentPoly>;

  PolyMatrix() = default;
  explicit PolyMatrix(std::vector<Element> order) : order_(std::move(order)) {}

  const std::vector<Element>& order() const { return order_; }
  const std::map<Element, Column>& columns() const { return cols_; }

  LaurentPoly at(Element row, Element col) const {
    auto c = cols_.find(col);
    if (c == cols_.end()) return {};
    auto r = c->second.find(row);
    return r == c->second.end() ? LaurentPoly{} : r->second;
  }
  const Column& column(Element col) const {
    static const Column kEmpty;
    auto c = cols_.find(col);
    return c == cols_.end() ? kEmpty : c->second;
  }

  void set(Element row, Element col, const LaurentPoly& p) {
    if (p.is_zero()) {
      if (auto c = cols_.find(col); c != cols_.end()) c->second.erase(row);
      return;
    }
    cols_[col][row] = p;
  }
  void add(Element row, Element col, const LaurentPoly& p) {
    if (p.is_zero()) return;
    auto& slot = cols_[col][row];
    slot += p;
    if (slot.is_zero()) cols_[col].erase(row);
  }

  std::size_t nonzero_count() const {
    std::size_t n = 0;
    for (const auto& [c, col] : cols_) n += col.size();
    return n;
  }

  /// Every entry lies in Z_{>=0}[q].
  bool is_nonnegative_polynomial() const {
    for (const auto& [c, col] : cols_)
      for (const auto& [r, p] : col)
        if (!p.is_nonnegative_polynomial()) return false;
    return true;
  }

  /// (A B)(x, w) = sum_y A(x, y) B(y, w).
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix r(a.order_);
    for (const auto& [w, bcol] : b.cols_)
      for (const auto& [y, byw] : bcol) {
        auto acol = a.cols_.find(y);
        if (acol == a.cols_.end()) continue;
        for (const auto& [x, axy] : acol->second) {
          auto& slot = r.cols_[w][x];
          slot.add_scaled(axy, byw);
          if (slot.is_zero()) r.cols_[w].erase(x);
        }
      }
    r.prune();
    return r;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix x = a, y = b;
    x.prune();
    y.prune();
    return x.order_ == y.order_ && x.cols_ == y.cols_;
  }

private:
  void prune() {
    for (auto it = cols_.begin(); it != cols_.end();) it = it->second.empty() ? cols_.erase(it) : std::next(it);
  }

  std::vector<Element> order_;
  std::map<Element, Column> cols_;
};

/// Matrix of h^{I,J}_{x,w}: TC^J_w = sum_x h^{I,J}_{x,w} TC^I_x. Columns are
/// indexed by the expanded element w, rows by x, both in canonical order.
struct TransitionMatrix {
  GeneratorSet I;
  GeneratorSet J;
  PolyMatrix entries;
};

/// The KL matrix (h_{x,w}) in canonical order.
inline PolyMatrix kl_matrix(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  PolyMatrix m(sys.enumerate());
  for (Element w : sys.enumerate())
    for (const auto& [x, p] : cache.element(w).terms()) m.set(x, w, p);
  return m;
}

inline PolyMatrix identity_matrix(const CoxeterSystem& sys) {
  PolyMatrix m(sys.enumerate());
  for (Element w : sys.enumerate()) m.set(w, w, 1);
  return m;
}

/// TC^J_w = T_{w^J} C_{w_J}, or CT^J_w = C_{_Jw} T_{^Jw}.
inline HeckeElement hybrid_element(const KLCache& cache, const HybridBasisSpec& spec, Element w) {
  const CoxeterSystem& sys = cache.system();
  sys.check_subset(spec.J);
  if (spec.orientation == Orientation::TC) {
    auto [quot, par] = sys.parabolic_factorize_left(w, spec.J);
    return HeckeElement(sys, quot) * cache.element(par);
  }
  auto [par, quot] = sys.parabolic_factorize_right(w, spec.J);
  return cache.element(par) * HeckeElement(sys, quot);
}

/// Writes g (supported on W_J) in the KL basis of H_J by back-substitution:
/// repeatedly peel off the longest remaining term, since C_v = T_v + lower terms.
inline Coefficients expand_in_kl(const KLCache& cache, HeckeElement g) {
  Coefficients out;
  while (!g.is_zero()) {
    // canonical order refines length, so the last key is of maximal length
    const Element top = g.terms().rbegin()->first;
    const LaurentPoly coeff = g.terms().rbegin()->second;
    out.emplace(top, coeff);
    g.add_scaled(-coeff, cache.element(top));
  }
  return out;
}

namespace detail {

/// [TC^J_{uv}] h for the given coset representatives u in W^J.
inline Coefficients expand_tc(const KLCache& cache, const HeckeElement& h, GeneratorSet J,
                              const std::vector<Element>& reps) {
  const CoxeterSystem& sys = cache.system();
  Coefficients out;
  for (Element u : reps) {
    HeckeElement g = restrict_to(HeckeElement(sys, sys.inverse(u)) * h, J);
    for (const auto& [v, c] : expand_in_kl(cache, std::move(g))) out.emplace(sys.multiply(u, v), c);
  }
  return out;
}

}  // namespace detail

/// Coefficients c_x with h = sum_x c_x TC^J_x (or CT^J_x). For TC the
/// coefficient of TC^J_{uv} is the C_v-coefficient of (T_{u^-1} h)|_J; CT is
/// reduced to TC through Psi, which maps TC^J_w to CT^J_{w^-1}.
inline Coefficients expand_in_hybrid(const KLCache& cache, const HeckeElement& h, const HybridBasisSpec& spec) {
  const CoxeterSystem& sys = cache.system();
  sys.check_subset(spec.J);
  if (spec.orientation == Orientation::TC) return detail::expand_tc(cache, h, spec.J, sys.min_coset_reps(spec.J, Side::Left));
  Coefficients tc = detail::expand_tc(cache, psi(h), spec.J, sys.min_coset_reps(spec.J, Side::Left));
  Coefficients out;
  for (const auto& [x, c] : tc) out.emplace(sys.inverse(x), c);
  return out;
}

/// h^J_{uv,w} for v in W_J: the KL-basis coefficients of (T_{u^-1} C_w)|_J,
/// computed from the T-side data v -> h_{uv,w}. Keys are v.
inline Coefficients restriction_coeffs(const KLCache& cache, Element u, Element w, GeneratorSet J) {
  const CoxeterSystem& sys = cache.system();
  sys.check_subset(J);
  for (int s : J.to_vector())
    if (sys.is_right_descent(u, s))
      throw domain_error("u = " + sys.word_string(u) + " is not a minimal left coset representative for J = {" +
                         J.to_string() + "}: s" + std::to_string(s) + " is a right descent");
  const HeckeElement& cw = cache.element(w);
  HeckeElement g(sys);
  for (Element v : sys.parabolic_elements(J)) {
    auto it = cw.terms().find(sys.multiply(u, v));
    if (it != cw.terms().end()) g.add(v, it->second);
  }
  return expand_in_kl(cache, std::move(g));
}

/// The matrix (h^{I,J}_{x,w}), I subset of J. By default one |W_J| x |W_J|
/// block ([TC^I_v] C_{v'}) is computed and copied onto every coset u W_J,
/// entry (uv, uv'). With per_column every column TC^J_w is expanded directly.
inline TransitionMatrix transition_matrix(const KLCache& cache, GeneratorSet I, GeneratorSet J,
                                          bool per_column = false) {
  const CoxeterSystem& sys = cache.system();
  sys.check_subset(J);
  if (!I.is_subset_of(J))
    throw domain_error("transition matrix needs I subset of J, got I = {" + I.to_string() + "}, J = {" +
                       J.to_string() + "}");
  TransitionMatrix tm{I, J, PolyMatrix(sys.enumerate())};
  if (per_column) {
    const HybridBasisSpec target{J, Orientation::TC};
    const HybridBasisSpec source{I, Orientation::TC};
    for (Element w : sys.enumerate())
      for (const auto& [x, c] : expand_in_hybrid(cache, hybrid_element(cache, target, w), source))
        tm.entries.set(x, w, c);
    return tm;
  }

  const std::vector<Element> WJ = sys.parabolic_elements(J);
  std::vector<Element> inner_reps;  // W^I within W_J
  for (Element z : WJ)
    if (sys.is_min_left_rep(z, I)) inner_reps.push_back(z);

  std::map<Element, Coefficients> block;
  for (Element v : WJ) block.emplace(v, detail::expand_tc(cache, cache.element(v), I, inner_reps));

  for (Element u : sys.min_coset_reps(J, Side::Left))
    for (const auto& [v, col] : block) {
      const Element w = sys.multiply(u, v);
      for (const auto& [x, c] : col) tm.entries.set(sys.multiply(u, x), w, c);
    }
  return tm;
}

/// Parses a chain like "∅<1<1,2" or "<1<1,2" into its subsets.
inline std::vector<GeneratorSet> parse_chain(std::string_view text, int rank) {
  std::vector<GeneratorSet> chain;
  std::string s(text);
  std::size_t start = 0;
  std::size_t idx = 0;
  while (true) {
    const std::size_t pos = s.find('<', start);
    const std::string part = s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
    try {
      chain.push_back(parse_generator_set(part, rank));
    } catch (const parse_error& e) {
      throw parse_error(std::string("chain element ") + std::to_string(idx) + ": " + e.what(), idx);
    }
    ++idx;
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return chain;
}

/// {}, {1}, {1,2}, ..., S.
inline std::vector<GeneratorSet> default_chain(int rank) {
  std::vector<GeneratorSet> chain;
  for (int i = 0; i <= rank; ++i) chain.push_back(GeneratorSet::first(i));
  return chain;
}

/// Factors M_1, ..., M_k with M_i = (h^{J_{i-1}, J_i}); their product
/// M_1 M_2 ... M_k is the KL matrix.
inline std::vector<TransitionMatrix> factorize_chain(const KLCache& cache, const std::vector<GeneratorSet>& chain) {
  const CoxeterSystem& sys = cache.system();
  if (chain.size() < 2 || !chain.front().empty() || chain.back() != sys.all_generators())
    throw domain_error("chain must run from the empty set to S = {" + sys.all_generators().to_string() + "}");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!chain[i - 1].is_subset_of(chain[i]) || chain[i - 1] == chain[i])
      throw domain_error("chain is not strictly increasing at position " + std::to_string(i));
  std::vector<TransitionMatrix> factors;
  for (std::size_t i = 1; i < chain.size(); ++i) factors.push_back(transition_matrix(cache, chain[i - 1], chain[i]));
  return factors;
}

inline PolyMatrix chain_product(const CoxeterSystem& sys, const std::vector<TransitionMatrix>& factors) {
  PolyMatrix p = identity_matrix(sys);
  for (const auto& f : factors) p = p * f.entries;
  return p;
}

/// Parabolic KL polynomials for the sign representation,
/// P_{u,u'} = h^J_{u,u'} (the v = 1 restriction coefficient), over W^J x W^J.
inline PolyMatrix parabolic_kl(const KLCache& cache, GeneratorSet J) {
  const CoxeterSystem& sys = cache.system();
  const std::vector<Element> reps = sys.min_coset_reps(J, Side::Left);
  PolyMatrix m(reps);
  for (Element up : reps)
    for (Element u : reps) {
      const Coefficients c = restriction_coeffs(cache, u, up, J);
      if (auto it = c.find(kIdentity); it != c.end()) m.set(u, up, it->second);
    }
  return m;
}

}  // namespace hkl
