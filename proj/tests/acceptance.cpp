// Prints one PASS or FAIL line per acceptance criterion and exits nonzero if
// any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lamsec/bigstep.hpp"
#include "lamsec/erasure.hpp"
#include "lamsec/harness.hpp"
#include "lamsec/smallstep.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

namespace {

using namespace lamsec;
namespace h = lamsec::harness;

const std::filesystem::path kCorpus = LAMSEC_CORPUS_DIR;

// Collects the reasons a criterion fails.
struct Verdict {
  std::vector<std::string> problems;
  std::string note;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

h::Prepared load(const std::string& name) { return h::prepare(h::load_program(kCorpus / (name + ".sec"))); }

// Runs every input of a program under both semantics.
void for_each_run(const h::Prepared& p,
                  const std::function<void(const std::string&, const std::string&, const Outcome&)>& f) {
  for (const auto& in : p.inputs) {
    f(in.name, "small", small::run_small(in.term, kLow).outcome);
    f(in.name, "big", big::eval_big({}, kLow, in.term).outcome);
  }
}

void expect_type_error(Verdict& v, const std::string& name, const std::string& rule,
                       const std::string& premise) {
  const auto p = load(name);
  v.require(!p.typed && p.type_error_rule == rule && p.type_error_premise == premise,
            name + " rejected at " + rule + ": " + premise + " (got '" + p.type_error_rule + ": " +
                p.type_error_premise + "')");
}

Verdict criterion1() {
  Verdict v;
  const auto fconst = load("fconst");
  v.require(fconst.typed && fconst.typed->type == bool_t(kLow), "fconst has type Bool_low");
  v.require(fconst.inputs.size() == 2, "fconst runs on both high inputs");
  for_each_run(fconst, [&](const std::string& in, const std::string& sem, const Outcome& o) {
    const auto* k = o.is_value() ? cc::as<cc::Constant>(o.value) : nullptr;
    v.require(k && k->label == kLow, "fconst " + in + " " + sem + " gives a low value: " + describe(o));
  });
  expect_type_error(v, "fid", "app", "A' ≲ A");
  expect_type_error(v, "flip-static", "ann", "A' ≲ A");
  const auto flip = load("flip");
  v.require(static_cast<bool>(flip.compiled), "repaired flip compiles");
  if (flip.compiled) {
    std::vector<std::string> casts;
    for (const auto& c : test::nontrivial_casts(flip.compiled)) casts.push_back(cc::to_string(c));
    std::sort(casts.begin(), casts.end());
    v.require(casts == std::vector<std::string>{"Bool_* =>^p Bool_low", "Bool_high =>^q Bool_*"},
              "repaired flip has exactly the two casts Bool_high =>^q Bool_* and Bool_* =>^p Bool_low");
  }
  v.require(flip.inputs.size() == 2, "flip runs on both high inputs");
  for_each_run(flip, [&](const std::string& in, const std::string& sem, const Outcome& o) {
    v.require(describe(o) == "blame p", "flip " + in + " " + sem + " gives blame p: " + describe(o));
  });
  return v;
}

Verdict criterion2() {
  Verdict v;
  const auto nsu = load("nsu");
  v.require(nsu.inputs.size() == 2, "nsu runs on both high inputs");
  for_each_run(nsu, [&](const std::string& in, const std::string& sem, const Outcome& o) {
    v.require(o.kind == OutcomeKind::nsu_error, "nsu " + in + " " + sem + ": " + describe(o));
  });
  for (const char* name : {"dgg-left", "dgg-right"}) {
    const auto p = load(name);
    v.require(p.inputs.size() == 2, std::string(name) + " runs on both high inputs");
    for_each_run(p, [&](const std::string& in, const std::string& sem, const Outcome& o) {
      const auto* k = o.is_value() ? cc::as<cc::Constant>(o.value) : nullptr;
      v.require(k && k->value == Const::unit, std::string(name) + " " + in + " " + sem + " gives unit: " +
                                                  describe(o));
    });
  }
  const cc::Term cast_chain =
      cc::cast(cc::cast(cc::boolean(true, kLow), test::cast("(Bool @ low)", "(Bool @ *)", "p")),
               test::cast("(Bool @ *)", "(Bool @ high)", "q"));
  v.require(describe(small::run_small(cast_chain, kLow).outcome) == "value true_low",
            "true_low<Bool_low => Bool_*><Bool_* => Bool_high> reduces to true_low (small)");
  v.require(describe(big::eval_big({}, kLow, cast_chain).outcome) == "value true_low",
            "true_low<Bool_low => Bool_*><Bool_* => Bool_high> evaluates to true_low (big)");
  const auto label = load("cast-label");
  for_each_run(label, [&](const std::string&, const std::string& sem, const Outcome& o) {
    v.require(describe(o) == "value true_low", "cast-label " + sem + ": " + describe(o));
  });
  return v;
}

Verdict criterion3() {
  Verdict v;
  expect_type_error(v, "ref-low-high", "ref", "T_g ≲ T_ℓ");
  int programs = 0;
  for (const auto& prog : h::load_corpus(kCorpus)) {
    const auto p = h::prepare(prog);
    if (!p.compiled) continue;
    bool allocates_high = false;
    for (const auto& in : p.inputs) {
      const auto r = big::eval_big({}, kLow, in.term, {.fuel = h::fuel_for(p, 100000)});
      for (const auto& a : r.allocations) allocates_high = allocates_high || a.addr.half == kHigh;
      if (r.outcome.is_value()) {
        const auto e = erasure::eval_erased({}, kLow, erasure::erase(in.term));
        v.require(e.outcome.is_value() &&
                      e.outcome.heap.low.size() == erasure::erase(r.outcome.heap).size(),
                  prog.name + " " + in.name + ": erased heap mirrors only the low half");
      }
    }
    if (!allocates_high) continue;
    ++programs;
    for (const auto& rep : h::check_simulation(p, h::fuel_for(p, 100000)))
      v.require(rep.status != h::Status::fail, "simulation " + prog.name + " " + rep.input + ": " + rep.detail);
  }
  v.require(programs > 0, "some corpus program allocates at high");
  return v;
}

Verdict criterion4() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  const auto rep = test::run_lattice_oracles();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& f : rep.failures) v.require(false, f);
  v.require(rep.casts > 0, "cast space is non-empty");
  v.require(secs < 10.0, "oracle suite runs in under 10 s");
  std::ostringstream note;
  note << rep.types << " types, " << rep.pairs << " pairs, " << rep.casts << " casts";
  v.note = note.str();
  return v;
}

const h::Summary& corpus_summary() {
  static const h::Summary s = h::run_corpus(h::load_corpus(kCorpus));
  return s;
}

Verdict criterion5() {
  Verdict v;
  v.require(h::load_corpus(kCorpus).size() >= 20, "corpus has at least 20 programs");
  const auto& s = corpus_summary();
  v.note = std::to_string(s.reports.size()) + " reports";
  for (const char* check : {"progress", "preservation", "agreement", "determinism", "simulation", "ni",
                            "compile-types", "pc-agnostic", "high-pc-heap"}) {
    int seen = 0;
    for (const auto& r : s.reports) {
      if (r.check != check) continue;
      ++seen;
      v.require(r.status != h::Status::fail, std::string(check) + " " + r.program + " " + r.input + ": " + r.detail);
    }
    v.require(seen > 0, std::string(check) + " ran");
  }
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto& s = corpus_summary();
  v.note = std::to_string(s.coverage.all().size()) + " of " + std::to_string(kRuleCount) + " rules fired";
  for (Rule r : s.coverage.missing())
    v.require(false, std::string(to_string(family(r))) + " rule never fired: " + std::string(to_string(r)));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"fconst, fid, static and repaired flip", criterion1},
      {"NSU program, DGG pair, label-preserving casts", criterion2},
      {"high-value allocation rejected; high allocations leave no erased image", criterion3},
      {"lattice operator oracles over depth-2 types", criterion4},
      {"metatheory properties over the corpus", criterion5},
      {"every rule fires on the corpus", criterion6},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const bool ok = v.problems.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first;
    if (!v.note.empty()) std::cout << " (" << v.note << ")";
    std::cout << "\n";
    for (const auto& p : v.problems) std::cout << "    " << p << "\n";
  }
  return failed == 0 ? 0 : 1;
}
