#pragma once

// Erasure of terms and heaps, and big-step evaluation of erased terms.

#include "lamsec/cc.hpp"
#include "lamsec/heap.hpp"
#include "lamsec/outcome.hpp"
#include "lamsec/rules.hpp"

namespace lamsec::erasure {

/// Replaces everything a low observer cannot see with the opaque value.
cc::Term erase(const cc::Term& m);

/// Point-wise erasure of the low half; the high half is dropped.
HalfHeap erase(const HalfHeap& h);
HalfHeap erase(const Heap& mu);

struct Result {
  Outcome outcome;     // on success, outcome.heap.low holds the erased heap
  long steps = 0;      // evaluation judgements
  int ambiguous = 0;   // judgements where more than one rule matched
};

/// Big-step evaluation of an erased term over an erased heap.
Result eval_erased(const HalfHeap& mu, Label pc, const cc::Term& m, long fuel = 100000,
                   Coverage* cov = nullptr);

}  // namespace lamsec::erasure
