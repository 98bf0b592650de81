#pragma once

// The hkl command line: kl, restrict, hybrid, factorize, parabolic, verify.
// Exit codes: 0 success, 1 property failure, 2 usage, parse or domain error.

#include "hkl/hkl.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace hkl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::string group;
  std::string format = "json";
  std::string output;
  std::string cache_dir;
  unsigned threads = 1;
  bool allow_large = false;

  std::string J, I, u, w, chain, suite = "all", orientation = "tc";
  bool has_J = false, has_I = false, has_w = false, has_chain = false;
  bool per_column = false;
};

/// An output document: a JSON value, or CSV text.
struct Document {
  json value;
  std::string csv;
};

class Session {
public:
  explicit Session(const RunConfig& cfg)
      : cfg_(cfg), sys_(CoxeterSystem::make(CoxeterType::parse(cfg.group), cfg.allow_large)), cache_(sys_) {
    if (!cfg_.cache_dir.empty()) load_kl_cache(cache_, cfg_.cache_dir);
  }

  const CoxeterSystem& sys() const { return *sys_; }
  const KLCache& cache() const { return cache_; }

  void warm() const { cache_.precompute(std::max(1u, cfg_.threads)); }
  void persist() const {
    if (!cfg_.cache_dir.empty()) save_kl_cache(cache_, cfg_.cache_dir);
  }

  GeneratorSet subset(const std::string& text) const { return parse_generator_set(text, sys_->rank()); }

  json header() const {
    json j{{"type", sys_->type().to_string()}};
    if (!sys_->type().is_crystallographic()) j["note"] = "beyond paper's geometric proof";
    return j;
  }

private:
  const RunConfig& cfg_;
  std::shared_ptr<const CoxeterSystem> sys_;
  KLCache cache_;
};

inline std::string restrict_word(const CoxeterSystem& sys, Element v) {
  return v == kIdentity ? std::string{} : sys.word_string(v);
}

inline Document cmd_kl(const Session& s, const RunConfig& cfg) {
  const CoxeterSystem& sys = s.sys();
  if (cfg.has_w) {
    const Element w = sys.parse_word(cfg.w);
    const HeckeElement& cw = s.cache().element(w);
    Document d;
    json order = json::array(), column = json::array();
    std::ostringstream csv;
    csv << csv_quote("x") << ',' << csv_quote("h_x,w") << '\n';
    for (Element x : sys.enumerate()) {
      order.push_back(sys.word(x));
      column.push_back(to_json(cw.coeff(x)));
      csv << csv_quote(sys.word_string(x)) << ',' << csv_quote(cw.coeff(x).to_string()) << '\n';
    }
    d.value = s.header();
    d.value["w"] = sys.word(w);
    d.value["order"] = order;
    d.value["column"] = column;
    d.csv = csv.str();
    return d;
  }
  s.warm();
  const PolyMatrix m = kl_matrix(s.cache());
  return {[&] {
            json j = matrix_to_json(sys, m, GeneratorSet{}, sys.all_generators());
            if (!sys.type().is_crystallographic()) j["note"] = "beyond paper's geometric proof";
            return j;
          }(),
          matrix_to_csv(sys, m)};
}

inline Document cmd_restrict(const Session& s, const RunConfig& cfg) {
  const CoxeterSystem& sys = s.sys();
  const GeneratorSet J = s.subset(cfg.J);
  const Element u = sys.parse_word(cfg.u);
  const Element w = sys.parse_word(cfg.w);
  const Coefficients c = restriction_coeffs(s.cache(), u, w, J);
  Document d;
  d.value = s.header();
  d.value["J"] = J.to_vector();
  d.value["u"] = sys.word(u);
  d.value["w"] = sys.word(w);
  json coeffs = json::array();
  std::ostringstream csv;
  csv << csv_quote("v") << ',' << csv_quote("coefficient") << '\n';
  for (const auto& [v, p] : c) {
    coeffs.push_back({{"v", restrict_word(sys, v)}, {"poly", p.to_string()}, {"coeff", to_json(p)}});
    csv << csv_quote(restrict_word(sys, v)) << ',' << csv_quote(p.to_string()) << '\n';
  }
  d.value["coefficients"] = coeffs;
  d.csv = csv.str();
  return d;
}

/// [CT^I_x] CT^J_w = [TC^I_{x^-1}] TC^J_{w^-1}.
inline PolyMatrix invert_indices(const CoxeterSystem& sys, const PolyMatrix& m) {
  PolyMatrix r(m.order());
  for (const auto& [col, column] : m.columns())
    for (const auto& [row, p] : column) r.set(sys.inverse(row), sys.inverse(col), p);
  return r;
}

inline Orientation parse_orientation(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "tc") return Orientation::TC;
  if (t == "ct") return Orientation::CT;
  throw parse_error("orientation must be tc or ct, got \"" + text + "\"", 0);
}

inline Document cmd_hybrid(const Session& s, const RunConfig& cfg) {
  const CoxeterSystem& sys = s.sys();
  const GeneratorSet J = cfg.has_J ? s.subset(cfg.J) : sys.all_generators();
  const Orientation o = parse_orientation(cfg.orientation);
  const char* name = o == Orientation::TC ? "TC" : "CT";
  if (cfg.has_w) {
    const Element w = sys.parse_word(cfg.w);
    const HeckeElement h = hybrid_element(s.cache(), {J, o}, w);
    Document d;
    d.value = s.header();
    d.value["basis"] = name;
    d.value["J"] = J.to_vector();
    d.value["w"] = sys.word(w);
    d.value["element"] = to_json(h);
    std::ostringstream csv;
    csv << csv_quote("x") << ',' << csv_quote("coefficient of T_x") << '\n';
    for (const auto& [x, p] : h.terms()) csv << csv_quote(sys.word_string(x)) << ',' << csv_quote(p.to_string()) << '\n';
    d.csv = csv.str();
    return d;
  }
  const GeneratorSet I = cfg.has_I ? s.subset(cfg.I) : GeneratorSet{};
  s.warm();
  PolyMatrix m = transition_matrix(s.cache(), I, J, cfg.per_column).entries;
  if (o == Orientation::CT) m = invert_indices(sys, m);
  json j = matrix_to_json(sys, m, I, J);
  j["basis"] = name;
  if (!sys.type().is_crystallographic()) j["note"] = "beyond paper's geometric proof";
  return {j, matrix_to_csv(sys, m)};
}

struct Outcome {
  Document doc;
  bool properties_hold = true;
};

inline Outcome cmd_factorize(const Session& s, const RunConfig& cfg) {
  const CoxeterSystem& sys = s.sys();
  const auto chain = cfg.has_chain ? parse_chain(cfg.chain, sys.rank()) : default_chain(sys.rank());
  s.warm();
  const auto factors = factorize_chain(s.cache(), chain);
  const bool equals_kl = chain_product(sys, factors) == kl_matrix(s.cache());
  const bool nonneg = std::all_of(factors.begin(), factors.end(),
                                  [](const TransitionMatrix& f) { return f.entries.is_nonnegative_polynomial(); });
  Outcome out;
  json j = s.header();
  json chain_json = json::array();
  for (GeneratorSet c : chain) chain_json.push_back(c.to_vector());
  j["chain"] = chain_json;
  json fs = json::array();
  std::ostringstream csv;
  csv << csv_quote("factor") << ',' << csv_quote("row") << ',' << csv_quote("column") << ',' << csv_quote("entry") << '\n';
  for (std::size_t i = 0; i < factors.size(); ++i) {
    fs.push_back(matrix_to_json(sys, factors[i].entries, factors[i].I, factors[i].J));
    for (const auto& [col, column] : factors[i].entries.columns())
      for (const auto& [row, p] : column)
        csv << (i + 1) << ',' << csv_quote(sys.word_string(row)) << ',' << csv_quote(sys.word_string(col)) << ','
            << csv_quote(p.to_string()) << '\n';
  }
  j["factors"] = fs;
  j["product_equals_KL"] = equals_kl;
  j["nonnegative"] = nonneg;
  out.doc = {j, csv.str()};
  out.properties_hold = equals_kl && nonneg;
  return out;
}

inline Document cmd_parabolic(const Session& s, const RunConfig& cfg) {
  const CoxeterSystem& sys = s.sys();
  const GeneratorSet J = s.subset(cfg.J);
  const PolyMatrix m = parabolic_kl(s.cache(), J);
  json j = s.header();
  j["J"] = J.to_vector();
  json order = json::array(), entries = json::array();
  for (std::size_t c = 0; c < m.order().size(); ++c) {
    order.push_back(sys.word(m.order()[c]));
    for (std::size_t r = 0; r < m.order().size(); ++r) {
      const LaurentPoly p = m.at(m.order()[r], m.order()[c]);
      if (!p.is_zero()) entries.push_back({r, c, to_json(p)});
    }
  }
  j["order"] = order;
  j["entries"] = entries;
  return {j, matrix_to_csv(sys, m)};
}

inline Outcome cmd_verify(const Session& s, const RunConfig& cfg) {
  s.warm();
  const auto results = verify::run_suite(s.cache(), cfg.suite);
  Outcome out;
  json checks = json::array();
  std::ostringstream csv;
  csv << csv_quote("property") << ',' << csv_quote("passed") << ',' << csv_quote("checked") << ',' << csv_quote("detail") << '\n';
  for (const auto& r : results) {
    checks.push_back({{"name", r.name}, {"passed", r.passed}, {"checked", r.checked}, {"detail", r.detail}});
    csv << csv_quote(r.name) << ',' << (r.passed ? "true" : "false") << ',' << r.checked << ',' << csv_quote(r.detail) << '\n';
    out.properties_hold = out.properties_hold && r.passed;
  }
  json j = s.header();
  j["suite"] = cfg.suite;
  j["checks"] = checks;
  j["passed"] = out.properties_hold;
  out.doc = {j, csv.str()};
  return out;
}

inline void emit(const Document& d, const RunConfig& cfg, std::ostream& out) {
  const std::string text = cfg.format == "csv" ? d.csv : d.value.dump(2) + "\n";
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw domain_error("cannot open output file " + cfg.output);
  f << text;
}

/// Runs the CLI on argv-style arguments (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Hecke algebra, Kazhdan-Lusztig and hybrid basis computations", "hkl"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "Coxeter type: A3, B4, D4, I2(7), ...")->required();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", cfg.output, "Output file (default stdout)");
    sub->add_option("--cache-dir", cfg.cache_dir, "Directory for persisted KL columns");
    sub->add_option("--threads", cfg.threads, "Worker threads for KL columns")->check(CLI::Range(1u, 256u));
    sub->add_flag("--allow-large", cfg.allow_large, "Allow groups beyond the default size bounds");
  };

  auto* kl = app.add_subcommand("kl", "KL matrix, or one column with --w");
  common(kl);
  kl->add_option("--w", cfg.w, "Reduced word, e.g. 1,2,1 (e for identity)");

  auto* restrict_cmd = app.add_subcommand("restrict", "Restriction coefficients h^J_{uv,w}");
  common(restrict_cmd);
  restrict_cmd->add_option("--J", cfg.J, "Subset of S, e.g. 1,2")->required();
  restrict_cmd->add_option("--u", cfg.u, "Word of u in W^J")->required();
  restrict_cmd->add_option("--w", cfg.w, "Word of w")->required();

  auto* hybrid = app.add_subcommand("hybrid", "Transition matrix h^{I,J}, or one hybrid basis element with --w");
  common(hybrid);
  hybrid->add_option("--J", cfg.J, "Subset J (default S)");
  hybrid->add_option("--I", cfg.I, "Subset I of J (default empty)");
  hybrid->add_option("--w", cfg.w, "Expand the single element TC^J_w (or CT^J_w) in the T basis");
  hybrid->add_option("--orientation", cfg.orientation, "tc or ct");
  hybrid->add_flag("--per-column", cfg.per_column, "Expand every column directly instead of replicating blocks");

  auto* factorize = app.add_subcommand("factorize", "Chain factorization of the KL matrix");
  common(factorize);
  factorize->add_option("--chain", cfg.chain, "Chain of subsets, e.g. \"∅<1<1,2\" (default singleton steps)");

  auto* parabolic = app.add_subcommand("parabolic", "Parabolic KL polynomials for the sign representation");
  common(parabolic);
  parabolic->add_option("--J", cfg.J, "Subset J")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check named properties");
  common(verify_cmd);
  verify_cmd->add_option("--suite", cfg.suite, "all, positivity, oracles, involutions or structure");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.has_J = hybrid->count("--J") > 0 || restrict_cmd->count("--J") > 0 || parabolic->count("--J") > 0;
  cfg.has_I = hybrid->count("--I") > 0;
  cfg.has_w = kl->count("--w") > 0 || hybrid->count("--w") > 0;
  cfg.has_chain = factorize->count("--chain") > 0;

  try {
    Session session(cfg);
    int code = kExitOk;
    if (kl->parsed()) {
      emit(cmd_kl(session, cfg), cfg, out);
    } else if (restrict_cmd->parsed()) {
      emit(cmd_restrict(session, cfg), cfg, out);
    } else if (hybrid->parsed()) {
      emit(cmd_hybrid(session, cfg), cfg, out);
    } else if (parabolic->parsed()) {
      emit(cmd_parabolic(session, cfg), cfg, out);
    } else {
      const Outcome o = factorize->parsed() ? cmd_factorize(session, cfg) : cmd_verify(session, cfg);
      emit(o.doc, cfg, out);
      if (!o.properties_hold) code = kExitPropertyFailure;
    }
    session.persist();
    return code;
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const unsupported_type_error& e) {
    err << "unsupported: " << e.what() << '\n';
  } catch (const domain_error& e) {
    err << "domain error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace hkl::cli
