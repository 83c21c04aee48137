#pragma once

// Fueled big-step evaluation for the cast calculus.

#include <functional>
#include <vector>

#include "lamsec/cc.hpp"
#include "lamsec/heap.hpp"
#include "lamsec/outcome.hpp"
#include "lamsec/rules.hpp"

namespace lamsec::big {

struct Options {
  long fuel = 100000;
  /// Called whenever a sub-evaluation entered at pc=high from pc=low returns
  /// a value, with the heaps before and after it and the sub-term.
  std::function<void(const Heap& before, const Heap& after, const cc::Term& m)> on_high_pc;
};

struct Result {
  Outcome outcome;
  std::vector<Allocation> allocations;  // in allocation order
  long steps = 0;                       // number of evaluation judgements
};

Result eval_big(const Heap& mu, Label pc, const cc::Term& m, const Options& opts = {},
                Coverage* cov = nullptr);

}  // namespace lamsec::big
