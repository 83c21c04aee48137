#pragma once

// The result of running a program under any of the evaluators.

#include <string>

#include "lamsec/cc.hpp"
#include "lamsec/heap.hpp"

namespace lamsec {

enum class OutcomeKind : std::uint8_t { value, blame, nsu_error, timeout, stuck };

std::string_view to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::stuck;
  cc::Term value;      // set when kind == value
  Heap heap;           // final heap when kind == value
  std::string blame;   // set when kind == blame
  std::string detail;  // diagnostics for timeout and stuck

  static Outcome of_value(cc::Term v, Heap mu);
  static Outcome of_error(const cc::Term& error);
  static Outcome timeout(std::string why);
  static Outcome stuck(std::string why);

  bool is_value() const { return kind == OutcomeKind::value; }
};

/// Short human-readable rendering, e.g. "value true_low" or "blame p".
std::string describe(const Outcome& o);

/// Process exit code for an outcome: 0 value, 2 blame, 3 nsu-error, 4 timeout or stuck.
int exit_code(const Outcome& o);

/// Thrown on violated preconditions of the evaluators (implementation bugs,
/// as opposed to stuck ill-typed configurations).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lamsec
