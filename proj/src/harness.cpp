#include "lamsec/harness.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "lamsec/bigstep.hpp"
#include "lamsec/compile.hpp"
#include "lamsec/erasure.hpp"
#include "lamsec/lattice.hpp"
#include "lamsec/smallstep.hpp"
#include "lamsec/syntax.hpp"

namespace lamsec::harness {

using lamsec::to_string;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Report make(std::string check, const Prepared& p, std::string input, Status st, std::string detail) {
  return Report{std::move(check), p.program.name, std::move(input), st, std::move(detail)};
}

Report pass(std::string check, const Prepared& p, std::string input, std::string detail = "") {
  return make(std::move(check), p, std::move(input), Status::pass, std::move(detail));
}

Report fail(std::string check, const Prepared& p, std::string input, std::string detail) {
  return make(std::move(check), p, std::move(input), Status::fail, std::move(detail));
}

Report timed_out(std::string check, const Prepared& p, std::string input, std::string detail) {
  return make(std::move(check), p, std::move(input), Status::timeout, std::move(detail));
}

bool matches(const Outcome& o, const std::string& expect) {
  if (expect == "timeout") return o.kind == OutcomeKind::timeout;
  return describe(o) == expect;
}

bool same_outcome(const Outcome& a, const Outcome& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case OutcomeKind::value:
      return cc::equal(a.value, b.value) && equal(a.heap, b.heap);
    case OutcomeKind::blame:
      return a.blame == b.blame;
    default:
      return true;
  }
}

std::string show_heap_outcome(const Outcome& o) {
  return o.is_value() ? describe(o) + " with heap " + to_string(o.heap) : describe(o);
}

const Label kPcs[] = {Label::low, Label::high};

bool uses_checked_forms(const cc::Term& m) {
  bool found = false;
  std::function<void(const cc::Term&)> walk = [&](const cc::Term& t) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, cc::Ref>) {
            found |= n.mode == cc::WriteMode::checked;
            walk(n.init);
          } else if constexpr (std::is_same_v<N, cc::Assign>) {
            found |= n.mode == cc::WriteMode::checked;
            walk(n.ref);
            walk(n.value);
          } else if constexpr (std::is_same_v<N, cc::Lam>) {
            walk(n.body);
          } else if constexpr (std::is_same_v<N, cc::App>) {
            walk(n.fun);
            walk(n.arg);
          } else if constexpr (std::is_same_v<N, cc::If>) {
            walk(n.cond);
            walk(n.then_branch);
            walk(n.else_branch);
          } else if constexpr (std::is_same_v<N, cc::Let>) {
            walk(n.bound);
            walk(n.body);
          } else if constexpr (std::is_same_v<N, cc::Deref>) {
            walk(n.ref);
          } else if constexpr (std::is_same_v<N, cc::CastE> || std::is_same_v<N, cc::CastPC> ||
                               std::is_same_v<N, cc::Prot>) {
            walk(n.term);
          }
        },
        t->kind);
  };
  walk(m);
  return found;
}

/// Adds every closed value sub-term of M to `out`, without descending into values.
void collect_values(const cc::Term& m, std::map<std::string, cc::Term>& out, std::size_t cap) {
  if (out.size() >= cap) return;
  if (cc::is_value(m)) {
    if (cc::free_vars(m).empty()) out.emplace(cc::to_string(m), m);
    return;
  }
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        auto go = [&](const cc::Term& t) { collect_values(t, out, cap); };
        if constexpr (std::is_same_v<N, cc::App>) {
          go(n.fun);
          go(n.arg);
        } else if constexpr (std::is_same_v<N, cc::If>) {
          go(n.cond);
          go(n.then_branch);
          go(n.else_branch);
        } else if constexpr (std::is_same_v<N, cc::Let>) {
          go(n.bound);
          go(n.body);
        } else if constexpr (std::is_same_v<N, cc::Ref>) {
          go(n.init);
        } else if constexpr (std::is_same_v<N, cc::Deref>) {
          go(n.ref);
        } else if constexpr (std::is_same_v<N, cc::Assign>) {
          go(n.ref);
          go(n.value);
        } else if constexpr (std::is_same_v<N, cc::CastE> || std::is_same_v<N, cc::CastPC> ||
                             std::is_same_v<N, cc::Prot>) {
          go(n.term);
        }
      },
      m->kind);
}

/// Checks pc ≲ gc along the evaluation path of M, tracking both through
/// protection terms and PC casts.
std::optional<std::string> pc_walk(cc::Term m) {
  GLabel gc = kLow;
  Label pc = Label::low;
  for (;;) {
    if (!cons_subtype(GLabel(pc), gc)) {
      return "pc " + std::string(to_string(pc)) + " not below gc " + to_string(gc) + " at " + cc::to_string(m);
    }
    if (const auto* p = cc::as<cc::Prot>(m)) {
      gc = cons_join(gc, p->label);
      pc = join(pc, p->label);
      m = p->term;
      continue;
    }
    if (const auto* c = cc::as<cc::CastPC>(m)) {
      gc = c->label;
      m = c->term;
      continue;
    }
    auto d = small::decompose(m);
    if (!d) return std::nullopt;
    m = d->second;
  }
}

struct Walk {
  Status status = Status::pass;
  std::string detail;
  cc::HeapContext sigma;
  std::map<std::string, cc::Term> values;
  long steps = 0;
};

/// Single-steps M from the empty heap at pc=low, checking typing at every
/// configuration.
Walk preservation_walk(const cc::Term& start, long fuel, bool collect) {
  constexpr std::size_t kValueCap = 400;
  Walk w;
  Heap mu;
  cc::Term m = start;
  std::optional<Type> prev;
  auto typecheck = [&](const cc::Term& t) { return cc::typecheck({}, w.sigma, kLow, Label::low, t); };
  try {
    prev = typecheck(m);
  } catch (const cc::TypeError& e) {
    w.status = Status::fail;
    w.detail = "initial term does not typecheck: " + std::string(e.what());
    return w;
  }
  if (collect) collect_values(m, w.values, kValueCap);
  for (;;) {
    small::StepResult r = small::step(m, mu, Label::low);
    if (std::holds_alternative<small::Halted>(r) || std::holds_alternative<small::Faulted>(r)) return w;
    if (const auto* s = std::get_if<small::Stuck>(&r)) {
      w.status = Status::fail;
      w.detail = "step " + std::to_string(w.steps) + ": progress: stuck: " + s->why;
      return w;
    }
    if (std::holds_alternative<small::TooDeep>(r) || w.steps >= fuel) {
      w.status = Status::timeout;
      w.detail = "stopped after " + std::to_string(w.steps) + " steps";
      return w;
    }
    auto& st = std::get<small::Stepped>(r);
    ++w.steps;
    const std::string at = "step " + std::to_string(w.steps) + ": ";
    if (st.alloc) {
      if (w.sigma.contains(st.alloc->addr)) {
        w.status = Status::fail;
        w.detail = at + "allocation reused address " + cc::to_string(st.alloc->addr);
        return w;
      }
      const std::size_t before = w.sigma.size();
      w.sigma.extend(st.alloc->addr, st.alloc->cell);
      if (w.sigma.size() != before + 1) {
        w.status = Status::fail;
        w.detail = at + "heap context did not grow by one entry";
        return w;
      }
    }
    std::optional<Type> now;
    try {
      now = typecheck(st.term);
    } catch (const cc::TypeError& e) {
      w.status = Status::fail;
      w.detail = at + "term does not typecheck: " + e.what() + " in " + cc::to_string(st.term);
      return w;
    }
    const bool preserved = prev ? cc::below(now, *prev) : !now.has_value();
    if (!preserved) {
      w.status = Status::fail;
      w.detail = at + "type " + (now ? to_string(*now) : "bottom") + " is not below " +
                 (prev ? to_string(*prev) : "bottom");
      return w;
    }
    if (!heap_typed(w.sigma, st.heap)) {
      w.status = Status::fail;
      w.detail = at + "heap " + to_string(st.heap) + " is not well typed";
      return w;
    }
    if (auto bad = pc_walk(st.term)) {
      w.status = Status::fail;
      w.detail = at + *bad;
      return w;
    }
    if (collect) {
      collect_values(st.term, w.values, kValueCap);
      for (const auto& [i, v] : st.heap.low) collect_values(v, w.values, kValueCap);
      for (const auto& [i, v] : st.heap.high) collect_values(v, w.values, kValueCap);
    }
    prev = now;
    m = std::move(st.term);
    mu = std::move(st.heap);
  }
}

}  // namespace

// ---- corpus files -------------------------------------------------------------

namespace {

bool valid_expectation(const std::string& v) {
  return v == "nsu-error" || v == "timeout" || (v.rfind("value ", 0) == 0 && v.size() > 6) ||
         (v.rfind("blame ", 0) == 0 && v.size() > 6);
}

}  // namespace

Program parse_corpus_program(const std::string& text, const std::string& fallback_name) {
  Program p;
  p.name = fallback_name;
  p.source = text;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] != ';') break;  // the header ends at the first non-comment line
    const std::string body = trim(t.substr(t.find_first_not_of(';')));
    const auto colon = body.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = trim(body.substr(0, colon));
    const std::string value = trim(body.substr(colon + 1));
    if (key == "name") {
      p.name = value;
    } else if (key == "typing") {
      if (value == "ok") {
        p.typing_ok = true;
      } else if (value.rfind("error", 0) == 0) {
        p.typing_ok = false;
        const std::string rest = trim(value.substr(5));
        const auto c = rest.find(':');
        if (c != std::string::npos) {
          p.error_rule = trim(rest.substr(0, c));
          p.error_premise = trim(rest.substr(c + 1));
        }
      } else {
        throw CorpusError(fallback_name + ": bad typing directive '" + value + "'");
      }
    } else if (key == "input") {
      if (value == "x") {
        p.input = InputSpec::high_bool;
      } else if (value == "closed") {
        p.input = InputSpec::closed;
      } else {
        throw CorpusError(fallback_name + ": bad input directive '" + value + "'");
      }
    } else if (key == "expect" || key == "expect-true" || key == "expect-false") {
      if (!valid_expectation(value))
        throw CorpusError(fallback_name + ": bad expectation '" + value + "'");
      (key == "expect" ? p.expect : key == "expect-true" ? p.expect_true : p.expect_false) = value;
    } else if (key == "fuel") {
      long n = 0;
      const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
      if (ec != std::errc() || end != value.data() + value.size() || n <= 0)
        throw CorpusError(fallback_name + ": bad fuel '" + value + "'");
      p.fuel = n;
    }
  }
  return p;
}

Program load_program(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_corpus_program(ss.str(), path.stem().string());
}

std::vector<Program> load_corpus(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".sec") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Program> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_program(f));
  return out;
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::timeout:
      return "timeout";
  }
  return "?";
}

// ---- preparation ---------------------------------------------------------------

Prepared prepare(const Program& program) {
  Prepared p;
  p.program = program;
  p.term = syntax::parse_program(program.source);
  if (program.input == InputSpec::high_bool) p.context.emplace_back("x", bool_t(kHigh));
  try {
    p.typed = surface::typecheck(p.context, kLow, p.term);
  } catch (const surface::TypeError& e) {
    p.type_error = e.what();
    p.type_error_rule = e.rule();
    p.type_error_premise = e.premise();
    return p;
  }
  p.compiled = compile(*p.typed);
  auto expectation = [&](const std::string& specific) {
    return specific.empty() ? program.expect : specific;
  };
  if (program.input == InputSpec::high_bool) {
    p.inputs.push_back({"true_high", cc::subst(p.compiled, "x", cc::boolean(true, kHigh)),
                        expectation(program.expect_true)});
    p.inputs.push_back({"false_high", cc::subst(p.compiled, "x", cc::boolean(false, kHigh)),
                        expectation(program.expect_false)});
  } else {
    p.inputs.push_back({"closed", p.compiled, program.expect});
  }
  return p;
}

long fuel_for(const Prepared& p, long fuel) {
  return p.program.fuel ? std::min(*p.program.fuel, fuel) : fuel;
}

// ---- checks ---------------------------------------------------------------------

std::vector<Report> check_typing(const Prepared& p) {
  const std::string input = p.program.input == InputSpec::high_bool ? "x" : "closed";
  if (p.program.typing_ok) {
    if (p.typed) return {pass("typing", p, input, "type " + to_string(p.typed->type))};
    return {fail("typing", p, input, "expected well-typed, got " + p.type_error)};
  }
  if (p.typed) return {fail("typing", p, input, "expected a type error, got " + to_string(p.typed->type))};
  const bool rule_ok = p.program.error_rule.empty() || p.program.error_rule == p.type_error_rule;
  const bool premise_ok = p.program.error_premise.empty() || p.program.error_premise == p.type_error_premise;
  if (rule_ok && premise_ok) return {pass("typing", p, input, p.type_error)};
  return {fail("typing", p, input,
               "expected " + p.program.error_rule + ": " + p.program.error_premise + ", got " + p.type_error)};
}

std::vector<Report> check_roundtrip(const Prepared& p) {
  const std::string printed = syntax::print(p.term);
  try {
    if (surface::equal(syntax::parse_program(printed), p.term)) return {pass("roundtrip", p, "-")};
  } catch (const syntax::ParseError& e) {
    return {fail("roundtrip", p, "-", "printed form does not parse: " + std::string(e.what()))};
  }
  return {fail("roundtrip", p, "-", "printed form parses to a different term: " + printed)};
}

std::vector<Report> check_compile_types(const Prepared& p) {
  std::vector<Report> out;
  if (!p.typed) return out;
  if (uses_checked_forms(p.compiled)) {
    out.push_back(fail("compile-types", p, "-", "compilation emitted a checked heap form"));
    return out;
  }
  for (Label pc : kPcs) {
    const std::string at = "pc=" + std::string(to_string(pc));
    try {
      auto ty = cc::typecheck(p.context, {}, kLow, pc, p.compiled, cc::CheckOptions{true});
      if (cc::below(ty, p.typed->type)) {
        out.push_back(pass("compile-types", p, at, ty ? to_string(*ty) : "bottom"));
      } else {
        out.push_back(fail("compile-types", p, at,
                           "compiled type " + (ty ? to_string(*ty) : "bottom") + " is not below surface type " +
                               to_string(p.typed->type)));
      }
    } catch (const cc::TypeError& e) {
      out.push_back(fail("compile-types", p, at, std::string("compiled term does not typecheck: ") + e.what()));
    }
  }
  return out;
}

std::vector<Report> check_expect(const Prepared& p, long fuel, Coverage* cov) {
  std::vector<Report> out;
  const long f = fuel_for(p, fuel);
  for (const auto& in : p.inputs) {
    if (in.expect.empty()) continue;
    const auto s = small::run_small(in.term, Label::low, {f, false, false}, cov);
    const auto b = big::eval_big({}, Label::low, in.term, {f, nullptr}, cov);
    const std::string got = "small: " + describe(s.outcome) + "; big: " + describe(b.outcome);
    const bool ok = matches(s.outcome, in.expect) && matches(b.outcome, in.expect);
    if (ok) {
      out.push_back(pass("expect", p, in.name, got));
    } else if (in.expect != "timeout" &&
               (s.outcome.kind == OutcomeKind::timeout || b.outcome.kind == OutcomeKind::timeout)) {
      out.push_back(timed_out("expect", p, in.name, "expected " + in.expect + "; " + got));
    } else {
      out.push_back(fail("expect", p, in.name, "expected " + in.expect + "; " + got));
    }
  }
  return out;
}

std::vector<Report> check_agreement(const Prepared& p, long fuel, Coverage* cov) {
  std::vector<Report> out;
  const long f = fuel_for(p, fuel);
  for (const auto& in : p.inputs) {
    const auto s = small::run_small(in.term, Label::low, {f, false, false}, cov);
    const auto b = big::eval_big({}, Label::low, in.term, {f, nullptr}, cov);
    const std::string detail = "small: " + show_heap_outcome(s.outcome) + "; big: " + show_heap_outcome(b.outcome);
    if (same_outcome(s.outcome, b.outcome)) {
      out.push_back(pass("agreement", p, in.name, describe(s.outcome)));
    } else if (s.outcome.kind == OutcomeKind::timeout || b.outcome.kind == OutcomeKind::timeout) {
      out.push_back(timed_out("agreement", p, in.name, detail));
    } else {
      out.push_back(fail("agreement", p, in.name, detail));
    }
  }
  return out;
}

std::vector<Report> check_progress(const Prepared& p, long fuel, Coverage* cov) {
  std::vector<Report> out;
  const long f = fuel_for(p, fuel);
  for (const auto& in : p.inputs) {
    const auto s = small::run_small(in.term, Label::low, {f, false, true}, cov);
    const std::string steps = std::to_string(s.steps) + " steps, " + describe(s.outcome);
    switch (s.outcome.kind) {
      case OutcomeKind::stuck:
        out.push_back(fail("progress", p, in.name, s.outcome.detail));
        break;
      case OutcomeKind::timeout:
        out.push_back(timed_out("progress", p, in.name, steps));
        break;
      default:
        out.push_back(pass("progress", p, in.name, steps));
    }
  }
  return out;
}

std::vector<Report> check_preservation(const Prepared& p, long fuel) {
  std::vector<Report> out;
  const long f = fuel_for(p, fuel);
  for (const auto& in : p.inputs) {
    Walk w = preservation_walk(in.term, f, false);
    if (w.detail.empty()) w.detail = std::to_string(w.steps) + " steps, " + std::to_string(w.sigma.size()) + " cells";
    out.push_back(make("preservation", p, in.name, w.status, w.detail));
  }
  return out;
}

Report check_value(const cc::Term& v, const cc::HeapContext& sigma, const std::string& program,
                   const std::string& input) {
  const GLabel gcs[] = {kLow, kHigh, kStar};
  bool have = false;
  std::optional<Type> first;
  std::string seen;
  for (GLabel gc : gcs) {
    for (Label pc : kPcs) {
      std::optional<Type> ty;
      try {
        ty = cc::typecheck({}, sigma, gc, pc, v);
      } catch (const cc::TypeError& e) {
        return Report{"pc-agnostic", program, input, Status::fail, cc::to_string(v) + ": " + e.what()};
      }
      const std::string here = "gc=" + to_string(gc) + ",pc=" + std::string(to_string(pc)) + ": " +
                               (ty ? to_string(*ty) : "bottom");
      if (!have) {
        have = true;
        first = ty;
        seen = here;
      } else if (first != ty) {
        return Report{"pc-agnostic", program, input, Status::fail,
                      cc::to_string(v) + " types differently: " + seen + " vs " + here};
      }
    }
  }
  return Report{"pc-agnostic", program, input, Status::pass, cc::to_string(v) + " : " +
                                                               (first ? to_string(*first) : "bottom")};
}

std::vector<Report> check_value_pc_agnostic(const Prepared& p, long fuel) {
  std::vector<Report> out;
  const long f = fuel_for(p, fuel);
  for (const auto& in : p.inputs) {
    Walk w = preservation_walk(in.term, f, true);
    int checked = 0;
    std::optional<Report> bad;
    for (const auto& [text, v] : w.values) {
      Report r = check_value(v, w.sigma, p.program.name, in.name);
      ++checked;
      if (r.status == Status::fail) {
        bad = r;
        break;
      }
    }
    if (bad) {
      out.push_back(*bad);
    } else {
      out.push_back(pass("pc-agnostic", p, in.name, std::to_string(checked) + " values"));
    }
  }
  return out;
}

std::vector<Report> check_determinism_erased(const Prepared& p, long fuel, Coverage* cov) {
  std::vector<Report> out;
  const long f = fuel_for(p, fuel);
  for (const auto& in : p.inputs) {
    // two independently built inputs
    const cc::Term first = erasure::erase(in.term);
    const cc::Term second = erasure::erase(p.program.input == InputSpec::closed
                                               ? compile(*p.typed)
                                               : cc::subst(compile(*p.typed), "x",
                                                           cc::boolean(in.name == "true_high", kHigh)));
    const auto a = erasure::eval_erased({}, Label::low, first, f, cov);
    const auto b = erasure::eval_erased({}, Label::low, second, f, nullptr);
    if (a.ambiguous != 0 || b.ambiguous != 0) {
      out.push_back(fail("determinism", p, in.name, "more than one erased rule matched a judgement"));
    } else if (!same_outcome(a.outcome, b.outcome)) {
      out.push_back(fail("determinism", p, in.name,
                         show_heap_outcome(a.outcome) + " vs " + show_heap_outcome(b.outcome)));
    } else if (a.outcome.kind == OutcomeKind::timeout) {
      out.push_back(timed_out("determinism", p, in.name, describe(a.outcome)));
    } else {
      out.push_back(pass("determinism", p, in.name, show_heap_outcome(a.outcome)));
    }
  }
  return out;
}

std::vector<Report> check_simulation(const Prepared& p, long fuel, Coverage* cov) {
  std::vector<Report> out;
  const long f = fuel_for(p, fuel);
  for (const auto& in : p.inputs) {
    const auto orig = big::eval_big({}, Label::low, in.term, {f, nullptr}, cov);
    if (orig.outcome.kind == OutcomeKind::timeout) {
      out.push_back(timed_out("simulation", p, in.name, describe(orig.outcome)));
      continue;
    }
    if (!orig.outcome.is_value()) {
      out.push_back(pass("simulation", p, in.name, "vacuous: " + describe(orig.outcome)));
      continue;
    }
    const auto er = erasure::eval_erased({}, Label::low, erasure::erase(in.term), f, cov);
    const cc::Term want_v = erasure::erase(orig.outcome.value);
    const HalfHeap want_h = erasure::erase(orig.outcome.heap);
    const auto high_allocs = std::count_if(orig.allocations.begin(), orig.allocations.end(),
                                           [](const Allocation& a) { return a.addr.half == Label::high; });
    const std::string detail = "erased " + show_heap_outcome(er.outcome) + "; expected value " +
                               cc::to_string(want_v) + " with heap " + to_string(want_h) +
                               "; high allocations " + std::to_string(high_allocs);
    if (er.outcome.is_value() && cc::equal(er.outcome.value, want_v) && equal(er.outcome.heap.low, want_h) &&
        er.outcome.heap.low.size() == orig.outcome.heap.low.size()) {
      out.push_back(pass("simulation", p, in.name, detail));
    } else if (er.outcome.kind == OutcomeKind::timeout) {
      out.push_back(timed_out("simulation", p, in.name, detail));
    } else {
      out.push_back(fail("simulation", p, in.name, detail));
    }
  }
  return out;
}

std::vector<Report> check_noninterference(const Prepared& p, long fuel) {
  std::vector<Report> out;
  if (!p.typed || p.program.input != InputSpec::high_bool) return out;
  if (p.typed->type.label != GLabel(kLow)) {
    out.push_back(pass("ni", p, "both", "vacuous: result type " + to_string(p.typed->type) + " is not low"));
    return out;
  }
  const long f = fuel_for(p, fuel);
  const auto a = big::eval_big({}, Label::low, p.inputs[0].term, {f, nullptr});
  const auto b = big::eval_big({}, Label::low, p.inputs[1].term, {f, nullptr});
  const std::string detail = describe(a.outcome) + " vs " + describe(b.outcome);
  if (!a.outcome.is_value() || !b.outcome.is_value()) {
    out.push_back(pass("ni", p, "both", "vacuous: " + detail));
  } else if (cc::equal(a.outcome.value, b.outcome.value)) {
    out.push_back(pass("ni", p, "both", detail));
  } else {
    out.push_back(fail("ni", p, "both", detail));
  }
  return out;
}

std::vector<Report> check_high_pc_heap(const Prepared& p, long fuel) {
  std::vector<Report> out;
  if (!p.typed) return out;
  const long f = fuel_for(p, fuel);

  // sub-evaluations that run at a raised pc inside ordinary runs
  for (const auto& in : p.inputs) {
    int seen = 0;
    std::string bad;
    big::Options opts{f, [&](const Heap& before, const Heap& after, const cc::Term& m) {
                        ++seen;
                        if (bad.empty() && !equal(erasure::erase(before), erasure::erase(after))) {
                          bad = "erased heap changed from " + to_string(erasure::erase(before)) + " to " +
                                to_string(erasure::erase(after)) + " evaluating " + cc::to_string(m);
                        }
                      }};
    big::eval_big({}, Label::low, in.term, opts);
    if (bad.empty()) {
      out.push_back(pass("high-pc-heap", p, in.name, std::to_string(seen) + " high-pc sub-evaluations"));
    } else {
      out.push_back(fail("high-pc-heap", p, in.name, bad));
    }
  }

  // the whole program at pc=high, when it types with high ≲ gc
  std::optional<surface::Typed> typed;
  GLabel gc = kHigh;
  for (GLabel g : {GLabel(kHigh), kStar}) {
    try {
      typed = surface::typecheck(p.context, g, p.term);
      gc = g;
      break;
    } catch (const surface::TypeError&) {
    }
  }
  if (!typed) {
    out.push_back(pass("high-pc-heap", p, "pc=high", "vacuous: not typable with high ≲ gc"));
    return out;
  }
  const cc::Term m = compile(*typed);
  Heap seeded;
  seeded = extend(seeded, cc::Address{0, Label::low}, cc::boolean(true, kLow));
  seeded = extend(seeded, cc::Address{0, Label::high}, cc::boolean(true, kHigh));
  std::vector<std::pair<std::string, cc::Term>> runs;
  if (p.program.input == InputSpec::high_bool) {
    runs.emplace_back("pc=high,true_high", cc::subst(m, "x", cc::boolean(true, kHigh)));
    runs.emplace_back("pc=high,false_high", cc::subst(m, "x", cc::boolean(false, kHigh)));
  } else {
    runs.emplace_back("pc=high,closed", m);
  }
  for (const auto& [name, term] : runs) {
    const auto r = big::eval_big(seeded, Label::high, term, {f, nullptr});
    const std::string at_gc = "gc=" + to_string(gc) + ": ";
    if (!r.outcome.is_value()) {
      out.push_back(pass("high-pc-heap", p, name, at_gc + "vacuous: " + describe(r.outcome)));
    } else if (equal(erasure::erase(seeded), erasure::erase(r.outcome.heap))) {
      out.push_back(pass("high-pc-heap", p, name, at_gc + "erased heap " + to_string(erasure::erase(seeded))));
    } else {
      out.push_back(fail("high-pc-heap", p, name,
                         at_gc + "erased heap changed from " + to_string(erasure::erase(seeded)) + " to " +
                             to_string(erasure::erase(r.outcome.heap))));
    }
  }
  return out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "typing",      "roundtrip",   "compile-types", "expect",     "agreement",    "progress",
      "preservation", "pc-agnostic", "determinism",  "simulation", "ni",           "high-pc-heap",
      "coverage"};
  return names;
}

// ---- driver ---------------------------------------------------------------------

bool Summary::ok() const { return failures() == 0; }

int Summary::failures() const {
  return static_cast<int>(
      std::count_if(reports.begin(), reports.end(), [](const Report& r) { return r.status == Status::fail; }));
}

Summary run_corpus(const std::vector<Program>& corpus, const Options& opts) {
  Summary s;
  const bool coverage_only = opts.filter == "coverage";
  const bool full = opts.filter.empty() || coverage_only;
  auto wanted = [&](const std::string& check, const Program& p) {
    return full || opts.filter == check || opts.filter == p.name;
  };
  auto keep = [&](std::vector<Report> rs) {
    if (coverage_only) return;
    s.reports.insert(s.reports.end(), std::make_move_iterator(rs.begin()), std::make_move_iterator(rs.end()));
  };
  for (const Program& program : corpus) {
    Prepared p;
    try {
      p = prepare(program);
    } catch (const std::exception& e) {
      if (!coverage_only) s.reports.push_back(Report{"parse", program.name, "-", Status::fail, e.what()});
      continue;
    }
    Coverage* cov = &s.coverage;
    try {
      if (wanted("typing", program)) keep(check_typing(p));
      if (wanted("roundtrip", program)) keep(check_roundtrip(p));
      if (!p.typed) continue;
      if (wanted("compile-types", program)) keep(check_compile_types(p));
      if (wanted("expect", program)) keep(check_expect(p, opts.fuel, cov));
      if (wanted("agreement", program)) keep(check_agreement(p, opts.fuel, cov));
      if (wanted("progress", program)) keep(check_progress(p, opts.fuel, cov));
      if (wanted("preservation", program)) keep(check_preservation(p, opts.fuel));
      if (wanted("pc-agnostic", program)) keep(check_value_pc_agnostic(p, opts.fuel));
      if (wanted("determinism", program)) keep(check_determinism_erased(p, opts.fuel, cov));
      if (wanted("simulation", program)) keep(check_simulation(p, opts.fuel, cov));
      if (wanted("ni", program)) keep(check_noninterference(p, opts.fuel));
      if (wanted("high-pc-heap", program)) keep(check_high_pc_heap(p, opts.fuel));
    } catch (const std::exception& e) {
      if (!coverage_only) {
        s.reports.push_back(Report{"internal", program.name, "-", Status::fail, e.what()});
      }
    }
  }
  if (full) {
    const auto missing = s.coverage.missing();
    std::string names;
    for (Rule r : missing) names += (names.empty() ? "" : ", ") + std::string(to_string(r));
    s.reports.push_back(Report{"coverage", "corpus", "-", missing.empty() ? Status::pass : Status::fail,
                               missing.empty() ? std::to_string(s.coverage.all().size()) + " rules fired"
                                               : "rules never fired: " + names});
  }
  return s;
}

nlohmann::json to_json(const std::vector<Report>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) {
    out.push_back({{"check", r.check},
                   {"program", r.program},
                   {"input", r.input},
                   {"status", std::string(to_string(r.status))},
                   {"detail", r.detail}});
  }
  return out;
}

}  // namespace lamsec::harness
