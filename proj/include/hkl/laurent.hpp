#pragma once

// Exact Laurent polynomials in one variable q over the integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <initializer_list>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace hkl {

using BigInt = boost::multiprecision::cpp_int;

/// An element of Z[q, q^-1], stored sparsely as exponent -> nonzero coefficient.
class LaurentPoly {
public:
  using Terms = std::map<int, BigInt>;

  LaurentPoly() = default;
  LaurentPoly(long long constant) { add_term(0, constant); }  // NOLINT: implicit from integers
  LaurentPoly(std::initializer_list<std::pair<int, long long>> terms) {
    for (auto [e, c] : terms) add_term(e, c);
  }

  /// c * q^e
  static LaurentPoly monomial(int exponent, BigInt coeff = 1) {
    LaurentPoly p;
    p.add_term(exponent, std::move(coeff));
    return p;
  }
  static LaurentPoly q() { return monomial(1); }
  static LaurentPoly q_inv() { return monomial(-1); }

  /// Parses the textual form produced by to_string(), e.g. "q^-1 - 2*q + 3*q^4".
  static LaurentPoly parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  BigInt coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  // Only meaningful for nonzero polynomials.
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }

  /// All coefficients are >= 0.
  bool has_nonnegative_coeffs() const {
    for (const auto& [e, c] : terms_)
      if (c < 0) return false;
    return true;
  }
  /// No negative powers of q.
  bool is_polynomial() const { return is_zero() || min_exponent() >= 0; }
  /// Membership in Z_{>=0}[q].
  bool is_nonnegative_polynomial() const { return is_polynomial() && has_nonnegative_coeffs(); }

  void add_term(int exponent, const BigInt& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Multiplication by q^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + k, c);
    return r;
  }

  /// q^{+-1} -> q^{-+1}
  LaurentPoly bar() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  /// this += factor * o, without a temporary product.
  void add_scaled(const LaurentPoly& factor, const LaurentPoly& o) {
    for (const auto& [e1, c1] : factor.terms_)
      for (const auto& [e2, c2] : o.terms_) add_term(e1 + e2, c1 * c2);
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(LaurentPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    r.add_scaled(a, b);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Ascending exponents; "0" for the zero polynomial. Terms look like
  /// "3", "q", "-q^-1", "2*q^3" and are joined with " + " / " - ".
  std::string to_string() const;

private:
  Terms terms_;
};

inline std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (e == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1) out += mag.str() + "*";
    out += 'q';
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

inline LaurentPoly LaurentPoly::parse(std::string_view text) {
  LaurentPoly p;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const char* what) {
    throw std::invalid_argument("LaurentPoly::parse: " + std::string(what) + " at offset " +
                                std::to_string(i) + " in \"" + std::string(text) + "\"");
  };
  auto read_int = [&]() -> std::string {
    std::size_t start = i;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail("expected integer");
    return std::string(text.substr(start, i - start));
  };

  skip_ws();
  if (text.substr(i) == "0") return p;
  bool negative = false;
  if (i < text.size() && text[i] == '-') {
    negative = true;
    ++i;
  }
  while (true) {
    skip_ws();
    BigInt coeff = 1;
    int exponent = 0;
    bool have_coeff = false;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      coeff = BigInt(read_int());
      have_coeff = true;
    }
    if (i < text.size() && text[i] == '*') {
      if (!have_coeff) fail("dangling '*'");
      ++i;
    }
    if (i < text.size() && text[i] == 'q') {
      ++i;
      exponent = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        exponent = std::stoi(read_int());
      }
    } else if (!have_coeff) {
      fail("expected term");
    }
    p.add_term(exponent, negative ? BigInt(-coeff) : coeff);
    skip_ws();
    if (i == text.size()) break;
    if (text[i] == '+') {
      negative = false;
    } else if (text[i] == '-') {
      negative = true;
    } else {
      fail("expected '+' or '-'");
    }
    ++i;
  }
  return p;
}

}  // namespace hkl
