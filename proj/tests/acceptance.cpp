// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "hkl/hkl.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace hkl;
using verify::CheckResult;

namespace {

/// Shared systems and caches, built once per type.
struct Workspace {
  std::map<std::string, std::unique_ptr<KLCache>> caches;

  const KLCache& cache(const std::string& type) {
    auto& slot = caches[type];
    if (!slot) slot = std::make_unique<KLCache>(CoxeterSystem::make(type));
    return *slot;
  }
};

std::string dihedral(int m) { return "I2(" + std::to_string(m) + ")"; }

struct Outcome {
  bool passed = true;
  std::size_t checked = 0;
  std::string detail;

  void absorb(const std::string& where, const CheckResult& r) {
    checked += r.checked;
    if (!r.passed && passed) detail = where + " " + r.name + ": " + r.detail;
    passed = passed && r.passed;
  }
};

Outcome factorization(Workspace& ws) {
  Outcome o;
  std::vector<std::string> types{"A2", "A3", "B3"};
  for (int m = 3; m <= 8; ++m) types.push_back(dihedral(m));
  for (const auto& t : types) {
    const KLCache& c = ws.cache(t);
    o.absorb(t, verify::check_factorization(c, default_chain(c.system().rank())));
  }
  return o;
}

Outcome restriction_positivity(Workspace& ws) {
  Outcome o;
  for (const char* t : {"A3", "B3", "I2(12)"}) o.absorb(t, verify::check_restriction_positivity(ws.cache(t)));
  const KLCache& d4 = ws.cache("D4");
  std::mt19937_64 rng(20240901);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(d4.system().size() - 1));
  std::vector<Element> sample;
  for (int i = 0; i < 500; ++i) sample.push_back(Element{pick(rng)});
  o.absorb("D4 (500 sampled w)", verify::check_restriction_positivity(d4, sample));
  return o;
}

Outcome transition_positivity(Workspace& ws) {
  Outcome o;
  for (const char* t : {"A3", "B3"}) o.absorb(t, verify::check_transition_positivity(ws.cache(t)));
  return o;
}

Outcome dual_path(Workspace& ws) {
  Outcome o;
  for (const char* t : {"A3", "B3", "I2(10)"}) o.absorb(t, verify::check_kl_dual_path(ws.cache(t)));
  return o;
}

Outcome dihedral_closed_form(Workspace& ws) {
  Outcome o;
  for (int m = 3; m <= 12; ++m) o.absorb(dihedral(m), verify::check_dihedral(ws.cache(dihedral(m))));
  return o;
}

Outcome parabolic(Workspace& ws) {
  Outcome o;
  for (const char* t : {"A3", "B3"}) o.absorb(t, verify::check_parabolic_consistency(ws.cache(t)));
  for (const char* t : {"A2", "A3", "A4"}) o.absorb(t, verify::check_typeA_parabolic_formula(ws.cache(t)));
  return o;
}

Outcome typeA(Workspace& ws) {
  Outcome o;
  for (const char* t : {"A3", "A4"}) o.absorb(t, verify::check_typeA_restrictions(ws.cache(t)));
  o.absorb("A3", verify::check_heq1(ws.cache("A3"), {1, 2, 3}));
  o.absorb("A3", verify::check_hi2i(ws.cache("A3"), {1}));
  o.absorb("A4", verify::check_heq1(ws.cache("A4"), {1, 2}));
  o.absorb("A4", verify::check_hi2i(ws.cache("A4"), {1, 2}));
  return o;
}

Outcome structure(Workspace& ws) {
  Outcome o;
  for (const char* t : {"A3", "I2(6)"}) {
    const KLCache& c = ws.cache(t);
    HeckeAlgebra alg(c.system_ptr());
    o.absorb(t, verify::check_self_duality(c, alg));
    o.absorb(t, verify::check_kl_unitriangular(c));
    o.absorb(t, verify::check_hybrid_unitriangular(c));
    o.absorb(t, verify::check_orthogonality(c.system()));
    o.absorb(t, verify::check_tu_tcz(c));
    o.absorb(t, verify::check_vanishing_and_support(c));
    o.absorb(t, verify::check_psi_transport(c));
  }
  return o;
}

Outcome smoothness_boundary(Workspace& ws) {
  Outcome o;
  const KLCache& c = ws.cache("A3");
  const CoxeterSystem& sys = c.system();
  const std::set<Element> singular{sys.from_realization({3, 4, 1, 2}), sys.from_realization({4, 2, 3, 1})};
  int equal = 0;
  std::set<Element> differing;
  for (Element w : sys.enumerate()) {
    ++o.checked;
    const bool same = c.element(w) == r_element(sys, w);
    const bool smooth = is_rationally_smooth_typeA(sys, w);
    if (same) ++equal;
    else differing.insert(w);
    if (same != smooth && o.passed) {
      o.passed = false;
      o.detail = "C_w = R_w disagrees with pattern avoidance at " + sys.word_string(w);
    }
  }
  if (equal != 22 || differing != singular) {
    if (o.passed) o.detail = "C_w = R_w for " + std::to_string(equal) + " permutations (expected 22)";
    o.passed = false;
  }
  return o;
}

Outcome gh_sampled(Workspace& ws) {
  Outcome o;
  o.absorb("A3", verify::check_gh_positivity(ws.cache("A3"), 200, 20240902));
  return o;
}

}  // namespace

int main() {
  Workspace ws;
  const std::vector<std::pair<std::string, std::function<Outcome(Workspace&)>>> criteria{
      {"chain factorization multiplies to the KL matrix, factors in Z>=0[q] (A2, A3, B3, I2(3..8))", factorization},
      {"restriction coefficients h^J in Z>=0[q] (A3, B3, I2(12), D4 sampled 500 w)", restriction_positivity},
      {"transition matrices h^{I,J} in Z>=0[q] for all I in J (A3, B3)", transition_positivity},
      {"KL product path equals descent recursion on all pairs (A3, B3, I2(10))", dual_path},
      {"dihedral closed form equals general restriction (I2(3..12))", dihedral_closed_form},
      {"parabolic KL via restriction equals sign module (A3, B3); maximal parabolic formula (A2..A4)", parabolic},
      {"type A restriction formulas, translation and shift-by-two identities (A3, A4)", typeA},
      {"structural invariants of KL and hybrid bases (A3, I2(6))", structure},
      {"C_w = R_w exactly for the 22 smooth permutations of S4", smoothness_boundary},
      {"C_w TC^J_u positive in TC^J, 200 samples (A3)", gh_sampled},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(ws);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2zu: %s [%zu checks, %.2fs]%s%s\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.checked, secs, o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
