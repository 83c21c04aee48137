#pragma once

// Small-step reduction for the cast calculus: evaluation frames, cast
// application, proxy elimination, and a fueled driver.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lamsec/cc.hpp"
#include "lamsec/heap.hpp"
#include "lamsec/outcome.hpp"
#include "lamsec/rules.hpp"

namespace lamsec::small {

using cc::Cast;
using cc::Term;

// ---- frames ------------------------------------------------------------------

struct AppL {  // □ M
  Term arg;
};
struct AppR {  // V □
  Term fun;
};
struct IfF {  // if □ A M N
  Type type;
  Term then_branch;
  Term else_branch;
};
struct LetF {  // let x = □ in N
  std::string name;
  Term body;
};
struct RefCheckedF {  // ref✓ ℓ □
  Label label;
  RawType cell;
};
struct DerefF {};    // ! □
struct AssignCheckedL {  // □ :=✓ M
  Term value;
};
struct AssignCheckedR {  // V :=✓ □
  Term ref;
};
struct AssignNSUL {  // □ :=? M
  Term value;
};
struct CastF {  // □⟨c⟩
  Cast cast;
};
struct CastPCF {  // cast_pc g □
  GLabel label;
};

using Frame = std::variant<AppL, AppR, IfF, LetF, RefCheckedF, DerefF, AssignCheckedL,
                           AssignCheckedR, AssignNSUL, CastF, CastPCF>;

Term plug(const Term& m, const Frame& f);

/// The frame whose hole holds the first sub-term that is not a value, if any.
std::optional<std::pair<Frame, Term>> decompose(const Term& m);

// ---- casts -------------------------------------------------------------------

/// Applies an active cast to a value. Throws InternalError when the value's
/// shape does not match any rule.
Term apply_cast(const Term& v, const Cast& c, Coverage* cov = nullptr);

Cast branch_c(const Type& a, const Cast& c);
Cast dom_c(const Cast& c);
Cast cod_c(const Cast& c);
Cast in_c(const Cast& c);
Cast out_c(const Cast& c);

Term elim_fun_proxy(const Term& v, const Term& w, const Cast& c, Label pc);
Term elim_ref_proxy(const Term& v, const Term& m, const Cast& c, cc::WriteMode mode);

// ---- reduction ---------------------------------------------------------------

struct Stepped {
  Term term;
  Heap heap;
  Rule rule;  // the rule that fired at the redex
  std::optional<Allocation> alloc;
  bool wrote = false;  // allocation or heap write
};
struct Halted {
  Term value;
};
struct Faulted {
  Term error;
};
struct Stuck {
  std::string why;
};
/// The evaluation context nested deeper than the driver allows.
struct TooDeep {};

using StepResult = std::variant<Stepped, Halted, Faulted, Stuck, TooDeep>;

inline constexpr int kMaxDepth = 3000;

StepResult step(const Term& m, const Heap& mu, Label pc, Coverage* cov = nullptr);

/// Every rule whose left-hand side matches the configuration at the top level,
/// computed independently of `step`. Used to audit that at most one applies.
std::vector<Rule> matching_rules(const Term& m, const Heap& mu, Label pc);

struct RunOptions {
  long fuel = 100000;
  bool trace = false;
  bool audit = false;  // check that exactly one rule matches every step
};

struct Run {
  Outcome outcome;
  long steps = 0;
  std::vector<std::string> trace;
};

Run run_small(const Term& m, Label pc, const RunOptions& opts = {}, Coverage* cov = nullptr,
              Heap mu = {});

}  // namespace lamsec::small
