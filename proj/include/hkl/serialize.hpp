#pragma once

// JSON and CSV forms of polynomials, Hecke elements and matrices, and KL
// cache persistence.

#include "hkl/hybrid.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

namespace hkl {

using json = nlohmann::json;

inline constexpr int kCacheFormatVersion = 1;

/// {"e": c, ...} with string exponents; coefficients outside the int64 range
/// are written as decimal strings.
inline json to_json(const LaurentPoly& p) {
  json j = json::object();
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  for (const auto& [e, c] : p.terms()) {
    if (c >= lo && c <= hi)
      j[std::to_string(e)] = c.convert_to<std::int64_t>();
    else
      j[std::to_string(e)] = c.str();
  }
  return j;
}

inline LaurentPoly laurent_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("polynomial JSON must be an object", 0);
  LaurentPoly p;
  std::size_t idx = 0;
  for (const auto& [key, val] : j.items()) {
    int e = 0;
    try {
      std::size_t used = 0;
      e = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw parse_error("bad exponent key \"" + key + "\"", idx);
    }
    if (val.is_number_integer())
      p.add_term(e, BigInt(val.get<std::int64_t>()));
    else if (val.is_string())
      p.add_term(e, BigInt(val.get<std::string>()));
    else
      throw parse_error("bad coefficient for exponent " + key, idx);
    ++idx;
  }
  return p;
}

inline json word_json(const CoxeterSystem& sys, Element w) { return json(sys.word(w)); }

/// {"terms": [{"word": [...], "coeff": {...}}, ...]} in canonical order.
inline json to_json(const HeckeElement& h) {
  json terms = json::array();
  for (const auto& [w, c] : h.terms()) terms.push_back({{"word", word_json(*h.system(), w)}, {"coeff", to_json(c)}});
  return {{"terms", terms}};
}

inline HeckeElement hecke_from_json(const CoxeterSystem& sys, const json& j) {
  HeckeElement h(sys);
  for (const auto& t : j.at("terms")) h.add(sys.from_word(t.at("word").get<Word>()), laurent_from_json(t.at("coeff")));
  return h;
}

/// {"type", "I", "J", "order": [words], "entries": [[row, col, poly], ...]},
/// rows/cols index into "order", entries sorted by column then row.
inline json matrix_to_json(const CoxeterSystem& sys, const PolyMatrix& m, GeneratorSet I, GeneratorSet J) {
  std::map<Element, std::size_t> pos;
  json order = json::array();
  for (std::size_t i = 0; i < m.order().size(); ++i) {
    pos.emplace(m.order()[i], i);
    order.push_back(word_json(sys, m.order()[i]));
  }
  json entries = json::array();
  for (const auto& [col, column] : m.columns())
    for (const auto& [row, p] : column) entries.push_back({pos.at(row), pos.at(col), to_json(p)});
  return {{"type", sys.type().to_string()},
          {"I", I.to_vector()},
          {"J", J.to_vector()},
          {"order", order},
          {"entries", entries}};
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

/// Dense CSV: a header row of column words, then one row per element.
inline std::string matrix_to_csv(const CoxeterSystem& sys, const PolyMatrix& m) {
  std::ostringstream os;
  os << csv_quote("");
  for (Element c : m.order()) os << ',' << csv_quote(sys.word_string(c));
  os << '\n';
  for (Element r : m.order()) {
    os << csv_quote(sys.word_string(r));
    for (Element c : m.order()) os << ',' << csv_quote(m.at(r, c).to_string());
    os << '\n';
  }
  return os.str();
}

/// Persisted KL columns: {"format_version", "type", "columns": [{"w": word, "terms": [...]}]}.
inline json kl_cache_to_json(const KLCache& cache) {
  const CoxeterSystem& sys = cache.system();
  json cols = json::array();
  for (Element w : sys.enumerate())
    if (cache.has_column(w)) cols.push_back({{"w", word_json(sys, w)}, {"terms", to_json(cache.element(w)).at("terms")}});
  return {{"format_version", kCacheFormatVersion}, {"type", sys.type().to_string()}, {"columns", cols}};
}

/// Loads columns into the cache. Returns false (loading nothing) when the
/// file belongs to another type or format version.
inline bool kl_cache_from_json(const KLCache& cache, const json& j) {
  const CoxeterSystem& sys = cache.system();
  if (j.value("format_version", -1) != kCacheFormatVersion) return false;
  if (j.value("type", std::string{}) != sys.type().to_string()) return false;
  for (const auto& col : j.at("columns")) {
    const Element w = sys.from_word(col.at("w").get<Word>());
    cache.insert_column(w, hecke_from_json(sys, json{{"terms", col.at("terms")}}));
  }
  return true;
}

inline std::filesystem::path kl_cache_path(const std::filesystem::path& dir, const CoxeterType& type) {
  return dir / (type.to_string() + ".klcache.json");
}

inline bool load_kl_cache(const KLCache& cache, const std::filesystem::path& dir) {
  const auto path = kl_cache_path(dir, cache.system().type());
  std::ifstream in(path);
  if (!in) return false;
  try {
    return kl_cache_from_json(cache, json::parse(in));
  } catch (const json::exception&) {
    return false;
  }
}

inline void save_kl_cache(const KLCache& cache, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream out(kl_cache_path(dir, cache.system().type()));
  out << kl_cache_to_json(cache).dump();
}

}  // namespace hkl
