#pragma once

// The split heap: two association lists, newest entry first. Writes prepend,
// so a cell may appear several times and lookup returns the newest binding.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lamsec/cc.hpp"

namespace lamsec {

using HalfHeap = std::vector<std::pair<int, cc::Term>>;

struct Heap {
  HalfHeap low;
  HalfHeap high;

  const HalfHeap& half(Label l) const { return l == Label::low ? low : high; }
  HalfHeap& half(Label l) { return l == Label::low ? low : high; }
};

/// A cell allocated during evaluation, with the raw type it was created at.
struct Allocation {
  cc::Address addr;
  RawType cell;
};

bool equal(const HalfHeap& a, const HalfHeap& b);
bool equal(const Heap& a, const Heap& b);

std::optional<cc::Term> lookup(const HalfHeap& h, int index);
std::optional<cc::Term> lookup(const Heap& mu, cc::Address a);

/// cons a V μ. Precondition: is_value(v).
Heap extend(Heap mu, cc::Address a, cc::Term v);

/// The fresh address in half ℓ: its index is the length of that half.
cc::Address fresh(const Heap& mu, Label l);

/// Σ ⊢ μ: every address in Σ maps to a value typed (up to subtyping) at Σ(a).
bool heap_typed(const cc::HeapContext& sigma, const Heap& mu);

/// low:[i=V,...] high:[i=V,...], newest first.
std::string to_string(const HalfHeap& h);
std::string to_string(const Heap& mu);

}  // namespace lamsec
