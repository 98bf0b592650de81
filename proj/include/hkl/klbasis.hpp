#pragma once

// Kazhdan-Lusztig basis C_w = sum_x h_{x,w} T_x, with h_{w,w} = 1 and
// h_{x,w} in qZ[q] for x < w.

#include "hkl/hecke.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <vector>

namespace hkl {

/// Memo table w -> C_w shared by everything built on top of the KL basis.
///
/// Columns are produced by the product-and-correct recursion
///   C_{ws} = C_w C_s - sum_{z < w, zs < z} mu(z, w) C_z      (ws > w)
/// along the ShortLex word of the target, with C_s = T_s + q.
/// Lookups are thread-safe; a column is inserted atomically once complete.
class KLCache {
public:
  explicit KLCache(std::shared_ptr<const CoxeterSystem> sys)
      : sys_(std::move(sys)), columns_(sys_->size()) {}

  const CoxeterSystem& system() const { return *sys_; }
  std::shared_ptr<const CoxeterSystem> system_ptr() const { return sys_; }

  /// C_w in the standard basis.
  const HeckeElement& element(Element w) const {
    if (const HeckeElement* c = lookup(w)) return *c;
    HeckeElement cw = compute(w);
    return insert(w, std::move(cw));
  }

  /// h_{x,w}; zero iff x is not below w.
  LaurentPoly poly(Element x, Element w) const { return element(w).coeff(x); }

  /// Coefficient of q in h_{z,w}.
  BigInt mu(Element z, Element w) const {
    const HeckeElement& cw = element(w);
    auto it = cw.terms().find(z);
    return it == cw.terms().end() ? BigInt(0) : it->second.coeff(1);
  }

  /// Computes every column, level by level in length, on `threads` workers.
  void precompute(unsigned threads = 1) const {
    const std::size_t N = sys_->size();
    std::size_t begin = 0;
    while (begin < N) {
      std::size_t end = begin;
      const int len = sys_->length(Element{static_cast<std::uint32_t>(begin)});
      while (end < N && sys_->length(Element{static_cast<std::uint32_t>(end)}) == len) ++end;
      std::atomic<std::size_t> next{begin};
      auto worker = [&] {
        for (std::size_t i = next++; i < end; i = next++) element(Element{static_cast<std::uint32_t>(i)});
      };
      const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(end - begin)));
      if (count == 1) {
        worker();
      } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
      }
      begin = end;
    }
  }

  bool has_column(Element w) const { return lookup(w) != nullptr; }

  /// Seeds a column (e.g. from a persisted cache). Existing columns win.
  void insert_column(Element w, HeckeElement cw) const { insert(w, std::move(cw)); }

private:
  const HeckeElement* lookup(Element w) const {
    std::lock_guard lock(mutex_);
    return columns_[w.id].get();
  }

  const HeckeElement& insert(Element w, HeckeElement cw) const {
    std::lock_guard lock(mutex_);
    auto& slot = columns_[w.id];
    if (!slot) slot = std::make_unique<HeckeElement>(std::move(cw));
    return *slot;
  }

  HeckeElement compute(Element w) const {
    const CoxeterSystem& sys = *sys_;
    if (w == kIdentity) return HeckeElement(sys, kIdentity);
    const int s = sys.word(w).back();
    const Element prev = sys.mul_right(w, s);
    const HeckeElement& cprev = element(prev);

    // C_prev * (T_s + q)
    HeckeElement r = mul_generator_right(cprev, s);
    r.add_scaled(LaurentPoly::q(), cprev);

    for (const auto& [z, h] : cprev.terms()) {
      if (z == prev || !sys.is_right_descent(z, s)) continue;
      const BigInt m = h.coeff(1);
      if (m == 0) continue;
      r.add_scaled(LaurentPoly::monomial(0, -m), element(z));
    }
    return r;
  }

  std::shared_ptr<const CoxeterSystem> sys_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<HeckeElement>> columns_;
};

/// R_w = sum_{y <= w} q^{l(w) - l(y)} T_y.
inline HeckeElement r_element(const CoxeterSystem& sys, Element w) {
  HeckeElement r(sys);
  for (Element y : sys.enumerate())
    if (sys.bruhat_leq(y, w)) r.add(y, LaurentPoly::monomial(sys.length(w) - sys.length(y)));
  return r;
}

/// True iff the one-line word contains an occurrence of the pattern, given in
/// one-line notation with values 1..k.
inline bool contains_pattern(const std::vector<int>& perm, const std::vector<int>& pattern) {
  const int n = static_cast<int>(perm.size());
  const int k = static_cast<int>(pattern.size());
  if (k > n) return false;
  std::vector<int> pos(k);
  std::function<bool(int, int)> rec = [&](int depth, int start) -> bool {
    if (depth == k) {
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
          if ((perm[pos[a]] < perm[pos[b]]) != (pattern[a] < pattern[b])) return false;
      return true;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      pos[depth] = i;
      if (rec(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

/// Type A rational smoothness: the permutation avoids 3412 and 4231.
inline bool is_rationally_smooth_typeA(const CoxeterSystem& sys, Element w) {
  if (sys.type().kind != CoxeterKind::A)
    throw unsupported_type_error("pattern criterion for rational smoothness needs type A, got " +
                                 sys.type().to_string());
  const auto& perm = sys.realization(w);
  return !contains_pattern(perm, {3, 4, 1, 2}) && !contains_pattern(perm, {4, 2, 3, 1});
}

/// Independent computation of h_{y,x} by the descent recursion: for s with sx < x,
///   h_{y,x} = h_{sy,sx} + q^c h_{y,sx} - sum_{y <= w < sx, sw < w} mu(w, sx) h_{y,w},
/// c = -1 if sy < y and +1 otherwise, s the smallest-index left descent of x.
/// Keeps its own memo and derives the Bruhat order from the subword property
/// instead of the system's precomputed table.
class KLRecursionOracle {
public:
  explicit KLRecursionOracle(std::shared_ptr<const CoxeterSystem> sys) : sys_(std::move(sys)) {}

  LaurentPoly poly(Element y, Element x) {
    std::lock_guard lock(mutex_);
    return h(y, x);
  }

  /// Bruhat order via the subword property of the ShortLex word of w.
  bool leq(Element u, Element w) {
    std::lock_guard lock(mutex_);
    return below(w)[u.id];
  }

private:
  const std::vector<bool>& below(Element w) {
    auto it = down_.find(w.id);
    if (it != down_.end()) return it->second;
    std::vector<bool> in(sys_->size(), false);
    std::vector<Element> members{kIdentity};
    in[kIdentity.id] = true;
    for (int s : sys_->word(w)) {
      const std::size_t count = members.size();
      for (std::size_t i = 0; i < count; ++i) {
        const Element v = sys_->mul_right(members[i], s);
        if (!in[v.id]) {
          in[v.id] = true;
          members.push_back(v);
        }
      }
    }
    return down_.emplace(w.id, std::move(in)).first->second;
  }

  const std::vector<Element>& mu_list(Element x) {
    auto it = mu_.find(x.id);
    if (it != mu_.end()) return it->second;
    std::vector<Element> out;
    const auto& b = below(x);
    for (std::uint32_t i = 0; i < sys_->size(); ++i)
      if (b[i] && i != x.id && h(Element{i}, x).coeff(1) != 0) out.push_back(Element{i});
    return mu_.emplace(x.id, std::move(out)).first->second;
  }

  LaurentPoly h(Element y, Element x) {
    if (y == x) return 1;
    if (!below(x)[y.id]) return {};
    const std::uint64_t key = (std::uint64_t{y.id} << 32) | x.id;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    int s = 0;
    for (int t = 1; t <= sys_->rank(); ++t)
      if (sys_->length(sys_->mul_left(t, x)) < sys_->length(x)) {
        s = t;
        break;
      }
    const Element sx = sys_->mul_left(s, x);
    const Element sy = sys_->mul_left(s, y);
    const int c = sys_->length(sy) < sys_->length(y) ? -1 : 1;

    LaurentPoly r = h(sy, sx);
    r.add_scaled(LaurentPoly::monomial(c), h(y, sx));
    for (Element w : mu_list(sx)) {
      if (sys_->length(sys_->mul_left(s, w)) > sys_->length(w)) continue;
      if (!below(w)[y.id]) continue;
      const BigInt m = h(w, sx).coeff(1);
      r.add_scaled(LaurentPoly::monomial(0, -m), h(y, w));
    }
    memo_.emplace(key, r);
    return r;
  }

  std::shared_ptr<const CoxeterSystem> sys_;
  std::mutex mutex_;
  std::unordered_map<std::uint32_t, std::vector<bool>> down_;
  std::unordered_map<std::uint32_t, std::vector<Element>> mu_;
  std::unordered_map<std::uint64_t, LaurentPoly> memo_;
};

}  // namespace hkl
