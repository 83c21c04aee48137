#pragma once

// The cast calculus: terms with explicit casts, NSU-checked heap writes,
// protection terms, PC casts, errors, and the opaque value.

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lamsec/surface.hpp"
#include "lamsec/types.hpp"

namespace lamsec::cc {

/// A heap address n_ℓ̂: an index into the half of the heap selected by `half`.
struct Address {
  int index = 0;
  Label half = Label::low;
  bool operator==(const Address&) const = default;
};

std::string to_string(Address a);

struct Cast {
  Type source;
  Type target;
  std::string blame;
  bool operator==(const Cast&) const = default;
};

std::string to_string(const Cast& c);

enum class CastKind : std::uint8_t { active, inert };

/// Precondition: consistent(c.source, c.target); throws LatticeError otherwise.
CastKind classify_cast(const Cast& c);
inline bool is_active(const Cast& c) { return classify_cast(c) == CastKind::active; }
inline bool is_inert(const Cast& c) { return classify_cast(c) == CastKind::inert; }

/// Heap writes come in three flavours: statically enforced, NSU-checked at
/// runtime, and already checked.
enum class WriteMode : std::uint8_t { static_, nsu, checked };

struct Node;
using Term = std::shared_ptr<const Node>;

struct Var {
  std::string name;
};
struct Constant {
  Const value;
  Label label;
};
struct Addr {
  Address addr;
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
};
struct If {
  Term cond;
  Type type;
  Term then_branch;
  Term else_branch;
};
struct Let {
  std::string name;
  Term bound;
  Term body;
};
/// `cell` is the raw type of the new cell; the cell's type is cell_label.
struct Ref {
  WriteMode mode;
  Label label;
  RawType cell;
  Term init;
};
struct Deref {
  Term ref;
};
struct Assign {
  WriteMode mode;
  Term ref;
  Term value;
};
struct CastE {
  Term term;
  Cast cast;
};
struct CastPC {
  GLabel label;
  Term term;
};
struct Prot {
  Label label;
  Term term;
};

enum class ErrorKind : std::uint8_t { blame, nsu };

struct Error {
  ErrorKind kind;
  std::string blame;  // empty for nsu
};
struct Opaque {};

using NodeKind = std::variant<Var, Constant, Addr, Lam, App, If, Let, Ref, Deref, Assign, CastE,
                              CastPC, Prot, Error, Opaque>;

struct Node {
  NodeKind kind;
};

// ---- construction ----------------------------------------------------------

Term make(NodeKind kind);
Term var(std::string name);
Term constant(Const k, Label l);
Term unit(Label l);
Term boolean(bool b, Label l);
Term addr(Address a, Label l);
Term lam(Label pc, std::string param, Type param_type, Term body, Label l);
Term app(Term fun, Term arg);
Term if_(Term cond, Type type, Term then_branch, Term else_branch);
Term let(std::string name, Term bound, Term body);
Term ref(WriteMode mode, Label l, RawType cell, Term init);
Term deref(Term ref);
Term assign(WriteMode mode, Term ref, Term value);
Term cast(Term term, Cast c);
Term cast_pc(GLabel g, Term term);
Term prot(Label l, Term term);
Term blame(std::string label);
Term nsu_error();
Term opaque();

template <class T>
const T* as(const Term& t) {
  return std::get_if<T>(&t->kind);
}

bool equal(const Term& a, const Term& b);

// ---- values ----------------------------------------------------------------

bool is_value(const Term& t);
bool is_error(const Term& t);

/// V ∨ ℓ. Wrapped values stamp the inner value and both cast endpoints.
/// Precondition: is_value(v).
Term stamp_value(const Term& v, Label l);

// ---- substitution ------------------------------------------------------------

std::set<std::string> free_vars(const Term& t);

/// Capture-avoiding M[x := V].
Term subst(const Term& m, const std::string& x, const Term& v);

// ---- printing ----------------------------------------------------------------

std::string to_string(const Term& t);
std::string_view to_string(WriteMode m);

// ---- typing ------------------------------------------------------------------

/// Σ: per half, an association list from index to raw type.
struct HeapContext {
  std::vector<std::pair<int, RawType>> low;
  std::vector<std::pair<int, RawType>> high;

  /// Σ(n_ℓ) = (Σ_ℓ(n))_ℓ
  std::optional<Type> lookup(Address a) const;
  bool contains(Address a) const { return lookup(a).has_value(); }
  void extend(Address a, RawType t);
  std::size_t size() const { return low.size() + high.size(); }

  bool operator==(const HeapContext&) const = default;
};

class TypeError : public std::runtime_error {
 public:
  TypeError(std::string rule, std::string premise, const std::string& detail);

  const std::string& rule() const { return rule_; }
  const std::string& premise() const { return premise_; }

 private:
  std::string rule_;
  std::string premise_;
};

using Context = surface::Context;

struct CheckOptions {
  /// Re-check pc-quantified premises at high as well as low.
  bool recheck_high = false;
};

/// Synthesizes the least type of M. An absent result is the bottom type,
/// produced by `error e`, which is a subtype of every type.
std::optional<Type> typecheck(const Context& ctx, const HeapContext& sigma, GLabel gc, Label pc,
                              const Term& m, CheckOptions opts = {});

/// A <: B where an absent A is the bottom type.
bool below(const std::optional<Type>& a, const Type& b);

}  // namespace lamsec::cc
