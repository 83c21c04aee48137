#pragma once

// Names of every reduction, cast-application and evaluation rule, and a
// recorder for which ones fired.

#include <array>
#include <cstdint>
#include <set>
#include <string_view>
#include <vector>

namespace lamsec {

enum class Rule : std::uint8_t {
  // small-step
  xi,
  xi_err,
  prot_val,
  prot_ctx,
  prot_err,
  beta,
  beta_if_true,
  beta_if_false,
  beta_let,
  ref_static,
  ref_nsu_ok,
  ref_nsu_fail,
  ref,
  deref,
  assign_static,
  assign_nsu_ok,
  assign_nsu_fail,
  assign,
  beta_cast_pc,
  cast,
  if_cast_true,
  if_cast_false,
  fun_cast,
  deref_cast,
  assign_nsu_cast,
  assign_cast,
  // cast application
  cast_base_id,
  cast_base_proj,
  cast_base_proj_blame,
  cast_fun_id_star,
  cast_fun_proj,
  cast_fun_proj_blame,
  cast_fun_pc_id_star,
  cast_fun_pc_proj,
  cast_fun_pc_proj_blame,
  cast_ref_id_star,
  cast_ref_proj,
  cast_ref_proj_blame,
  cast_ref_ref_id_star,
  cast_ref_ref_proj,
  cast_ref_ref_proj_blame,
  // big-step
  big_val,
  big_app,
  big_if_true,
  big_if_false,
  big_let,
  big_deref,
  big_ref_nsu,
  big_ref,
  big_assign_nsu,
  big_assign,
  big_cast,
  big_if_cast_true,
  big_if_cast_false,
  big_fun_cast,
  big_deref_cast,
  big_assign_nsu_cast,
  big_assign_cast,
  // erased big-step
  erased_val,
  erased_app,
  erased_app_opaque,
  erased_if_true,
  erased_if_false,
  erased_if_opaque,
  erased_let,
  erased_deref,
  erased_deref_opaque,
  erased_ref_nsu,
  erased_ref_nsu_opaque,
  erased_ref,
  erased_ref_opaque,
  erased_assign_nsu,
  erased_assign_nsu_opaque,
  erased_assign,
  erased_assign_opaque,
};

inline constexpr std::size_t kRuleCount = static_cast<std::size_t>(Rule::erased_assign_opaque) + 1;

enum class RuleFamily : std::uint8_t { small_step, apply_cast, big_step, erased };

std::string_view to_string(Rule r);
RuleFamily family(Rule r);
std::vector<Rule> all_rules();
std::vector<Rule> rules_of(RuleFamily f);
std::string_view to_string(RuleFamily f);

/// Records fired rules. Evaluators accept a nullable pointer to one.
class Coverage {
 public:
  void hit(Rule r) { fired_.insert(r); }
  bool fired(Rule r) const { return fired_.contains(r); }
  const std::set<Rule>& all() const { return fired_; }
  void merge(const Coverage& other) { fired_.insert(other.fired_.begin(), other.fired_.end()); }
  std::vector<Rule> missing() const;

 private:
  std::set<Rule> fired_;
};

inline void hit(Coverage* cov, Rule r) {
  if (cov != nullptr) cov->hit(r);
}

}  // namespace lamsec
