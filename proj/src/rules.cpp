#include "lamsec/rules.hpp"

namespace lamsec {

namespace {

constexpr std::array<std::string_view, kRuleCount> kNames = {
    "xi",
    "xi-err",
    "prot-val",
    "prot-ctx",
    "prot-err",
    "beta",
    "beta-if-true",
    "beta-if-false",
    "beta-let",
    "ref-static",
    "ref?-ok",
    "ref?-fail",
    "ref",
    "deref",
    "assign-static",
    "assign?-ok",
    "assign?-fail",
    "assign",
    "beta-cast-pc",
    "cast",
    "if-cast-true",
    "if-cast-false",
    "fun-cast",
    "deref-cast",
    "assign?-cast",
    "assign-cast",
    "cast-base-id",
    "cast-base-proj",
    "cast-base-proj-blame",
    "cast-fun-id*",
    "cast-fun-proj",
    "cast-fun-proj-blame",
    "cast-fun-pc-id*",
    "cast-fun-pc-proj",
    "cast-fun-pc-proj-blame",
    "cast-ref-id*",
    "cast-ref-proj",
    "cast-ref-proj-blame",
    "cast-ref-ref-id*",
    "cast-ref-ref-proj",
    "cast-ref-ref-proj-blame",
    "big-val",
    "big-app",
    "big-if-true",
    "big-if-false",
    "big-let",
    "big-deref",
    "big-ref?",
    "big-ref",
    "big-assign?",
    "big-assign",
    "big-cast",
    "big-if-cast-true",
    "big-if-cast-false",
    "big-fun-cast",
    "big-deref-cast",
    "big-assign?-cast",
    "big-assign-cast",
    "erased-val",
    "erased-app",
    "erased-app-opaque",
    "erased-if-true",
    "erased-if-false",
    "erased-if-opaque",
    "erased-let",
    "erased-deref",
    "erased-deref-opaque",
    "erased-ref?",
    "erased-ref?-opaque",
    "erased-ref",
    "erased-ref-opaque",
    "erased-assign?",
    "erased-assign?-opaque",
    "erased-assign",
    "erased-assign-opaque",
};

}  // namespace

std::string_view to_string(Rule r) { return kNames.at(static_cast<std::size_t>(r)); }

RuleFamily family(Rule r) {
  if (r < Rule::cast_base_id) return RuleFamily::small_step;
  if (r < Rule::big_val) return RuleFamily::apply_cast;
  if (r < Rule::erased_val) return RuleFamily::big_step;
  return RuleFamily::erased;
}

std::string_view to_string(RuleFamily f) {
  switch (f) {
    case RuleFamily::small_step:
      return "small-step";
    case RuleFamily::apply_cast:
      return "apply-cast";
    case RuleFamily::big_step:
      return "big-step";
    case RuleFamily::erased:
      return "erased";
  }
  return "?";
}

std::vector<Rule> all_rules() {
  std::vector<Rule> out;
  for (std::size_t i = 0; i < kRuleCount; ++i) out.push_back(static_cast<Rule>(i));
  return out;
}

std::vector<Rule> rules_of(RuleFamily f) {
  std::vector<Rule> out;
  for (Rule r : all_rules()) {
    if (family(r) == f) out.push_back(r);
  }
  return out;
}

std::vector<Rule> Coverage::missing() const {
  std::vector<Rule> out;
  for (Rule r : all_rules()) {
    if (!fired(r)) out.push_back(r);
  }
  return out;
}

}  // namespace lamsec
