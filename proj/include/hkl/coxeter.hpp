#pragma once

// Finite Coxeter systems of types A, B, D and I2 realized faithfully as
// (signed) permutations or dihedral normal forms, enumerated once and then
// served from lookup tables.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hkl {

struct unsupported_type_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
/// Malformed textual input. `position` is the offending index (token or character).
struct parse_error : std::invalid_argument {
  parse_error(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position(position) {}
  std::size_t position;
};

/// A group element, identified by its position in the canonical
/// (length, ShortLex) enumeration of its CoxeterSystem.
struct Element {
  std::uint32_t id = 0;
  friend auto operator<=>(Element, Element) = default;
};

inline constexpr Element kIdentity{0};

using Word = std::vector<int>;  // generator indices, 1-based

/// A subset of the generators 1..rank, stored as a bitmask (bit s-1 for s).
class GeneratorSet {
public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint32_t mask) : mask_(mask) {}
  GeneratorSet(std::initializer_list<int> gens) {
    for (int s : gens) insert(s);
  }
  static GeneratorSet first(int count) { return GeneratorSet(count >= 32 ? ~0u : (1u << count) - 1); }
  static GeneratorSet from_vector(const std::vector<int>& gens) {
    GeneratorSet g;
    for (int s : gens) g.insert(s);
    return g;
  }

  void insert(int s) { mask_ |= 1u << (s - 1); }
  bool contains(int s) const { return (mask_ >> (s - 1)) & 1u; }
  std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool is_subset_of(GeneratorSet o) const { return (mask_ & ~o.mask_) == 0; }
  bool intersects(GeneratorSet o) const { return (mask_ & o.mask_) != 0; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int s = 1; s <= 32; ++s)
      if (contains(s)) out.push_back(s);
    return out;
  }
  /// "1,2,4"; the empty set prints as "".
  std::string to_string() const {
    std::string out;
    for (int s : to_vector()) out += (out.empty() ? "" : ",") + std::to_string(s);
    return out;
  }

  friend bool operator==(GeneratorSet, GeneratorSet) = default;

private:
  std::uint32_t mask_ = 0;
};

enum class CoxeterKind { A, B, D, I2 };
enum class Side { Left, Right };

struct CoxeterType {
  CoxeterKind kind = CoxeterKind::A;
  int n = 1;  // rank for A/B/D, m for I2

  int rank() const { return kind == CoxeterKind::I2 ? 2 : n; }

  /// "A3", "B4", "D4", "I2(7)".
  static CoxeterType parse(std::string_view text) {
    static const std::regex classical(R"(\s*([ABDabd])\s*(\d+)\s*)");
    static const std::regex dihedral(R"(\s*[Ii]2\s*\(\s*(\d+)\s*\)\s*)");
    std::string s(text);
    std::smatch m;
    CoxeterType t;
    if (std::regex_match(s, m, dihedral)) {
      t.kind = CoxeterKind::I2;
      t.n = std::stoi(m[1]);
    } else if (std::regex_match(s, m, classical)) {
      char c = static_cast<char>(std::toupper(m[1].str()[0]));
      t.kind = c == 'A' ? CoxeterKind::A : c == 'B' ? CoxeterKind::B : CoxeterKind::D;
      t.n = std::stoi(m[2]);
    } else {
      throw parse_error("unrecognized Coxeter type \"" + s + "\" (expected e.g. A3, B4, D4, I2(7))", 0);
    }
    return t;
  }

  std::string to_string() const {
    switch (kind) {
      case CoxeterKind::A: return "A" + std::to_string(n);
      case CoxeterKind::B: return "B" + std::to_string(n);
      case CoxeterKind::D: return "D" + std::to_string(n);
      case CoxeterKind::I2: return "I2(" + std::to_string(n) + ")";
    }
    return {};
  }

  bool is_crystallographic() const {
    return kind != CoxeterKind::I2 || n == 2 || n == 3 || n == 4 || n == 6;
  }

  /// (n+1)!, 2^n n!, 2^(n-1) n!, 2m.
  std::uint64_t expected_order() const {
    auto fact = [](int k) {
      std::uint64_t f = 1;
      for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
      return f;
    };
    switch (kind) {
      case CoxeterKind::A: return fact(n + 1);
      case CoxeterKind::B: return (std::uint64_t{1} << n) * fact(n);
      case CoxeterKind::D: return (std::uint64_t{1} << (n - 1)) * fact(n);
      case CoxeterKind::I2: return 2 * static_cast<std::uint64_t>(n);
    }
    return 0;
  }

  friend bool operator==(const CoxeterType&, const CoxeterType&) = default;
};

/// Default and hard size limits. Past the default bound a caller must opt in.
inline void check_supported(const CoxeterType& t, bool allow_large) {
  int lo = 1, desk = 0, hard = 0;
  switch (t.kind) {
    case CoxeterKind::A: lo = 1, desk = 5, hard = 6; break;
    case CoxeterKind::B: lo = 2, desk = 4, hard = 5; break;
    case CoxeterKind::D: lo = 3, desk = 4, hard = 6; break;
    case CoxeterKind::I2: lo = 2, desk = 24, hard = 2000; break;
  }
  if (t.n < lo || t.n > hard)
    throw unsupported_type_error("type " + t.to_string() + " is not supported");
  if (t.n > desk && !allow_large)
    throw unsupported_type_error("type " + t.to_string() +
                                 " exceeds the default size bound; pass allow_large to build it");
}

class CoxeterSystem;

/// Parabolic subgroup data for J: W_J, the minimal left coset
/// representatives W^J (no right descent in J) and the minimal right coset
/// representatives ^JW (no left descent in J), each in canonical order.
struct ParabolicData {
  GeneratorSet J;
  std::vector<Element> elements_WJ;
  std::vector<Element> left_reps;
  std::vector<Element> right_reps;
};

class CoxeterSystem {
public:
  /// Builds and enumerates the system. Throws unsupported_type_error when
  /// the type is outside the supported bounds.
  static std::shared_ptr<const CoxeterSystem> make(const CoxeterType& type, bool allow_large = false) {
    check_supported(type, allow_large);
    return std::shared_ptr<const CoxeterSystem>(new CoxeterSystem(type));
  }
  static std::shared_ptr<const CoxeterSystem> make(std::string_view type, bool allow_large = false) {
    return make(CoxeterType::parse(type), allow_large);
  }

  const CoxeterType& type() const { return type_; }
  int rank() const { return rank_; }
  std::size_t size() const { return length_.size(); }
  GeneratorSet all_generators() const { return GeneratorSet::first(rank_); }
  const std::vector<std::vector<int>>& coxeter_matrix() const { return coxeter_matrix_; }

  /// All elements in canonical order: by length, then ShortLex normal word.
  std::vector<Element> enumerate() const {
    std::vector<Element> out(size());
    for (std::uint32_t i = 0; i < size(); ++i) out[i] = Element{i};
    return out;
  }

  Element identity() const { return kIdentity; }
  Element generator(int s) const { return right_mul_[s - 1][0]; }
  Element longest() const { return Element{static_cast<std::uint32_t>(size() - 1)}; }

  int length(Element w) const { return length_[w.id]; }
  const Word& word(Element w) const { return words_[w.id]; }
  /// Realization-specific canonical form: one-line (signed) permutation for
  /// A/B/D, {length, first letter} for I2.
  const std::vector<int>& realization(Element w) const { return keys_[w.id]; }

  Element mul_right(Element w, int s) const { return right_mul_[s - 1][w.id]; }
  Element mul_left(int s, Element w) const { return left_mul_[s - 1][w.id]; }
  Element inverse(Element w) const { return inverse_[w.id]; }

  Element multiply(Element a, Element b) const {
    for (int s : words_[b.id]) a = mul_right(a, s);
    return a;
  }

  /// The element of a (not necessarily reduced) word.
  Element from_word(const Word& w) const {
    Element e = kIdentity;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] < 1 || w[i] > rank_)
        throw parse_error("generator " + std::to_string(w[i]) + " out of range 1.." + std::to_string(rank_) +
                              " at index " + std::to_string(i),
                          i);
      e = mul_right(e, w[i]);
    }
    return e;
  }

  /// Parses "1,2,1" (or "e" / "" for the identity) as a reduced word.
  Element parse_word(std::string_view text) const;

  Element from_realization(const std::vector<int>& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw domain_error("not an element of " + type_.to_string());
    return Element{it->second};
  }

  bool is_right_descent(Element w, int s) const { return (right_descents_[w.id] >> (s - 1)) & 1u; }
  bool is_left_descent(Element w, int s) const { return (left_descents_[w.id] >> (s - 1)) & 1u; }
  GeneratorSet descents(Element w, Side side) const {
    return GeneratorSet(side == Side::Left ? left_descents_[w.id] : right_descents_[w.id]);
  }
  /// Generators occurring in any (equivalently every) reduced word of w.
  GeneratorSet support(Element w) const { return GeneratorSet(support_[w.id]); }

  bool in_parabolic(Element w, GeneratorSet J) const { return support(w).is_subset_of(J); }
  bool is_min_left_rep(Element w, GeneratorSet J) const { return !descents(w, Side::Right).intersects(J); }
  bool is_min_right_rep(Element w, GeneratorSet J) const { return !descents(w, Side::Left).intersects(J); }

  /// Bruhat order, precomputed at construction.
  bool bruhat_leq(Element u, Element w) const {
    return (bruhat_[w.id][u.id / 64] >> (u.id % 64)) & 1u;
  }
  bool bruhat_less(Element u, Element w) const { return u != w && bruhat_leq(u, w); }

  /// w = quotient * parabolic with quotient in W^J and parabolic in W_J.
  std::pair<Element, Element> parabolic_factorize_left(Element w, GeneratorSet J) const {
    Element quot = w;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s : J.to_vector())
        if (is_right_descent(quot, s)) {
          quot = mul_right(quot, s);
          changed = true;
        }
    }
    return {quot, multiply(inverse(quot), w)};
  }

  /// w = parabolic * quotient with parabolic in W_J and quotient in ^JW.
  std::pair<Element, Element> parabolic_factorize_right(Element w, GeneratorSet J) const {
    Element quot = w;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s : J.to_vector())
        if (is_left_descent(quot, s)) {
          quot = mul_left(s, quot);
          changed = true;
        }
    }
    return {multiply(w, inverse(quot)), quot};
  }

  std::vector<Element> min_coset_reps(GeneratorSet J, Side side) const {
    std::vector<Element> out;
    for (std::uint32_t i = 0; i < size(); ++i) {
      const Element w{i};
      if (side == Side::Left ? is_min_left_rep(w, J) : is_min_right_rep(w, J)) out.push_back(w);
    }
    return out;
  }

  std::vector<Element> parabolic_elements(GeneratorSet J) const {
    std::vector<Element> out;
    for (std::uint32_t i = 0; i < size(); ++i)
      if (in_parabolic(Element{i}, J)) out.push_back(Element{i});
    return out;
  }

  ParabolicData parabolic(GeneratorSet J) const {
    check_subset(J);
    return {J, parabolic_elements(J), min_coset_reps(J, Side::Left), min_coset_reps(J, Side::Right)};
  }

  void check_subset(GeneratorSet J) const {
    if (!J.is_subset_of(all_generators()))
      throw domain_error("generator set {" + J.to_string() + "} is not a subset of S for " + type_.to_string());
  }

  /// "1,2,1", or "e" for the identity.
  std::string word_string(Element w) const {
    if (length(w) == 0) return "e";
    std::string out;
    for (int s : word(w)) out += (out.empty() ? "" : ",") + std::to_string(s);
    return out;
  }

private:
  using Key = std::vector<int>;
  using Action = std::function<Key(const Key&, int)>;

  explicit CoxeterSystem(const CoxeterType& type);
  void build(const Key& identity, const Action& act_right);
  void build_bruhat();

  CoxeterType type_;
  int rank_ = 0;
  std::vector<std::vector<int>> coxeter_matrix_;
  std::vector<Key> keys_;
  std::map<Key, std::uint32_t> index_;
  std::vector<int> length_;
  std::vector<Word> words_;
  std::vector<std::vector<Element>> right_mul_, left_mul_;
  std::vector<Element> inverse_;
  std::vector<std::uint32_t> right_descents_, left_descents_, support_;
  std::vector<std::vector<std::uint64_t>> bruhat_;  // bruhat_[w] = bitset of {u : u <= w}
};

namespace realization {

/// Right action of adjacent transposition s_i on one-line notation: swap positions i, i+1.
inline std::vector<int> type_a(const std::vector<int>& w, int s) {
  auto r = w;
  std::swap(r[s - 1], r[s]);
  return r;
}

/// Signed permutations; s_n negates the last position.
inline std::vector<int> type_b(const std::vector<int>& w, int s) {
  auto r = w;
  const int n = static_cast<int>(w.size());
  if (s < n)
    std::swap(r[s - 1], r[s]);
  else
    r[n - 1] = -r[n - 1];
  return r;
}

/// Even-signed permutations; s_n sends (x_{n-1}, x_n) to (-x_n, -x_{n-1}).
inline std::vector<int> type_d(const std::vector<int>& w, int s) {
  auto r = w;
  const int n = static_cast<int>(w.size());
  if (s < n) {
    std::swap(r[s - 1], r[s]);
  } else {
    r[n - 2] = -w[n - 1];
    r[n - 1] = -w[n - 2];
  }
  return r;
}

/// Dihedral normal form {k, a}: the alternating word of length k starting with
/// letter a (a = 0 for the identity; the longest element uses a = 1).
inline std::vector<int> dihedral(const std::vector<int>& w, int s, int m) {
  const int k = w[0], a = w[1];
  auto other = [](int x) { return 3 - x; };
  auto normalize = [m](int len, int first) -> std::vector<int> {
    if (len == 0) return {0, 0};
    if (len == m) return {m, 1};
    return {len, first};
  };
  if (k == 0) return normalize(1, s);
  if (k == m) {
    // w0 = alternating word of length m ending in s; drop that letter
    const int first = (m % 2 == 1) ? s : other(s);
    return normalize(m - 1, first);
  }
  const int last = (k % 2 == 1) ? a : other(a);
  if (last == s) return normalize(k - 1, a);
  return normalize(k + 1, a);
}

}  // namespace realization

inline CoxeterSystem::CoxeterSystem(const CoxeterType& type) : type_(type), rank_(type.rank()) {
  const int n = type.n;
  switch (type.kind) {
    case CoxeterKind::A: {
      Key id(n + 1);
      std::iota(id.begin(), id.end(), 1);
      build(id, realization::type_a);
      break;
    }
    case CoxeterKind::B: {
      Key id(n);
      std::iota(id.begin(), id.end(), 1);
      build(id, realization::type_b);
      break;
    }
    case CoxeterKind::D: {
      Key id(n);
      std::iota(id.begin(), id.end(), 1);
      build(id, realization::type_d);
      break;
    }
    case CoxeterKind::I2: {
      const int m = n;
      build({0, 0}, [m](const Key& w, int s) { return realization::dihedral(w, s, m); });
      break;
    }
  }
  if (size() != type.expected_order())
    throw std::logic_error("enumeration of " + type.to_string() + " produced " + std::to_string(size()) +
                           " elements, expected " + std::to_string(type.expected_order()));
  build_bruhat();
}

inline void CoxeterSystem::build(const Key& identity, const Action& act_right) {
  // Breadth-first search over the right Cayley graph. Parents are processed
  // in discovery order and generators in increasing order, so the first
  // discovery of an element carries its ShortLex normal word and the
  // discovery order is the canonical (length, ShortLex) order.
  keys_.push_back(identity);
  index_.emplace(identity, 0);
  length_.push_back(0);
  words_.push_back({});
  std::vector<std::vector<std::uint32_t>> right(rank_);
  for (std::size_t head = 0; head < keys_.size(); ++head) {
    for (int s = 1; s <= rank_; ++s) {
      Key next = act_right(keys_[head], s);
      auto [it, inserted] = index_.try_emplace(next, static_cast<std::uint32_t>(keys_.size()));
      if (inserted) {
        keys_.push_back(std::move(next));
        length_.push_back(length_[head] + 1);
        Word wd = words_[head];
        wd.push_back(s);
        words_.push_back(std::move(wd));
      }
      right[s - 1].push_back(it->second);
    }
  }
  const std::size_t N = keys_.size();
  right_mul_.assign(rank_, std::vector<Element>(N));
  for (int s = 0; s < rank_; ++s)
    for (std::size_t i = 0; i < N; ++i) right_mul_[s][i] = Element{right[s][i]};

  inverse_.resize(N);
  left_mul_.assign(rank_, std::vector<Element>(N));
  right_descents_.assign(N, 0);
  left_descents_.assign(N, 0);
  support_.assign(N, 0);
  for (std::size_t i = 0; i < N; ++i) {
    Element inv = kIdentity;
    for (auto it = words_[i].rbegin(); it != words_[i].rend(); ++it) inv = right_mul_[*it - 1][inv.id];
    inverse_[i] = inv;
    for (int s : words_[i]) support_[i] |= 1u << (s - 1);
  }
  for (std::size_t i = 0; i < N; ++i)
    for (int s = 1; s <= rank_; ++s) {
      // s w = (w^{-1} s)^{-1}
      left_mul_[s - 1][i] = inverse_[right_mul_[s - 1][inverse_[i].id].id];
      if (length_[right_mul_[s - 1][i].id] < length_[i]) right_descents_[i] |= 1u << (s - 1);
      if (length_[left_mul_[s - 1][i].id] < length_[i]) left_descents_[i] |= 1u << (s - 1);
    }

  coxeter_matrix_.assign(rank_, std::vector<int>(rank_, 1));
  for (int s = 1; s <= rank_; ++s)
    for (int t = 1; t <= rank_; ++t) {
      if (s == t) continue;
      Element st = mul_right(generator(s), t);
      Element p = st;
      int order = 1;
      while (p != kIdentity) {
        p = multiply(p, st);
        ++order;
      }
      coxeter_matrix_[s - 1][t - 1] = order;
    }
}

inline void CoxeterSystem::build_bruhat() {
  // Lifting property: for s with s w < w,
  //   u <= w  iff  s u <= s w   when s u < u,
  //   u <= w  iff  u <= s w     otherwise.
  const std::size_t N = size();
  const std::size_t blocks = (N + 63) / 64;
  bruhat_.assign(N, std::vector<std::uint64_t>(blocks, 0));
  bruhat_[0][0] = 1;
  for (std::size_t wi = 1; wi < N; ++wi) {
    const Element w{static_cast<std::uint32_t>(wi)};
    const int s = words_[wi].front();  // a left descent
    const Element sw = mul_left(s, w);
    auto& row = bruhat_[wi];
    for (std::size_t ui = 0; ui < N; ++ui) {
      const Element u{static_cast<std::uint32_t>(ui)};
      if (length_[ui] > length_[wi]) break;
      bool leq;
      if (ui == wi)
        leq = true;
      else if (length_[ui] == length_[wi])
        leq = false;
      else if (is_left_descent(u, s))
        leq = bruhat_leq(mul_left(s, u), sw);
      else
        leq = bruhat_leq(u, sw);
      if (leq) row[ui / 64] |= std::uint64_t{1} << (ui % 64);
    }
  }
}

inline Element CoxeterSystem::parse_word(std::string_view text) const {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty() || s == "e") return kIdentity;
  Word w;
  std::stringstream ss(s);
  std::string tok;
  std::size_t idx = 0;
  while (std::getline(ss, tok, ',')) {
    int g = 0;
    try {
      std::size_t used = 0;
      g = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw parse_error("invalid generator \"" + tok + "\" at index " + std::to_string(idx), idx);
    }
    if (g < 1 || g > rank_)
      throw parse_error("generator " + std::to_string(g) + " out of range 1.." + std::to_string(rank_) +
                            " at index " + std::to_string(idx),
                        idx);
    w.push_back(g);
    ++idx;
  }
  Element e = kIdentity;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Element next = mul_right(e, w[i]);
    if (length(next) < length(e))
      throw parse_error("word \"" + s + "\" is not reduced at index " + std::to_string(i), i);
    e = next;
  }
  return e;
}

/// Parses "1,2" (or "" / "e" / "∅" for the empty set) as a subset of S.
inline GeneratorSet parse_generator_set(std::string_view text, int rank) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  GeneratorSet out;
  if (s.empty() || s == "e" || s == "\xE2\x88\x85" || s == "{}") return out;
  std::stringstream ss(s);
  std::string tok;
  std::size_t idx = 0;
  while (std::getline(ss, tok, ',')) {
    int g = 0;
    try {
      std::size_t used = 0;
      g = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw parse_error("invalid generator \"" + tok + "\" at index " + std::to_string(idx), idx);
    }
    if (g < 1 || g > rank)
      throw parse_error("generator " + std::to_string(g) + " out of range 1.." + std::to_string(rank), idx);
    out.insert(g);
    ++idx;
  }
  return out;
}

}  // namespace hkl
