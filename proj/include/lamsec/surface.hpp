#pragma once

// The gradual surface language: AST and the syntax-directed type checker.

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lamsec/types.hpp"

namespace lamsec {

enum class Const : std::uint8_t { unit, tt, ff };

std::string_view to_string(Const k);

struct SourcePos {
  int line = 0;
  int column = 0;
};

namespace surface {

struct Node;
using Term = std::shared_ptr<const Node>;

struct Var {
  std::string name;
};
struct Constant {
  Const value;
  Label label;
};
struct Lam {
  Label pc;
  std::string param;
  Type param_type;
  Term body;
  Label label;
};
struct App {
  Term fun;
  Term arg;
  std::string blame;
};
struct If {
  Term cond;
  Term then_branch;
  Term else_branch;
  std::string blame;
};
struct Let {
  std::string name;
  Term bound;
  Term body;
};
struct Ref {
  Label label;
  Term init;
  std::string blame;
};
struct Deref {
  Term ref;
};
struct Assign {
  Term ref;
  Term value;
  std::string blame;
};
struct Ann {
  Term term;
  Type type;
  std::string blame;
};

using NodeKind = std::variant<Var, Constant, Lam, App, If, Let, Ref, Deref, Assign, Ann>;

struct Node {
  NodeKind kind;
  SourcePos pos;
};

Term make(NodeKind kind, SourcePos pos = {});

/// Structural equality; source positions are ignored.
bool equal(const Term& a, const Term& b);

// ---- typing ----------------------------------------------------------------

using Context = std::vector<std::pair<std::string, Type>>;

class TypeError : public std::runtime_error {
 public:
  TypeError(std::string rule, std::string premise, SourcePos pos, const std::string& detail);

  const std::string& rule() const { return rule_; }
  const std::string& premise() const { return premise_; }
  SourcePos pos() const { return pos_; }

 private:
  std::string rule_;
  std::string premise_;
  SourcePos pos_;
};

/// A typing derivation: one node per surface node, recording the static PC
/// the node was checked under and its type. Children follow the order of
/// the sub-terms in the node.
struct Typed {
  Term term;
  GLabel gc;
  Type type;
  std::vector<Typed> children;

  bool operator==(const Typed& other) const;
};

Typed typecheck(const Context& ctx, GLabel gc, const Term& term);

/// Re-derives every node and reports whether the annotations agree.
bool recheck(const Context& ctx, const Typed& typed);

}  // namespace surface
}  // namespace lamsec
