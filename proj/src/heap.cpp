#include "lamsec/heap.hpp"

#include <algorithm>
#include <stdexcept>

namespace lamsec {

bool equal(const HalfHeap& a, const HalfHeap& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](const auto& x, const auto& y) {
    return x.first == y.first && cc::equal(x.second, y.second);
  });
}

bool equal(const Heap& a, const Heap& b) { return equal(a.low, b.low) && equal(a.high, b.high); }

std::optional<cc::Term> lookup(const HalfHeap& h, int index) {
  auto it = std::find_if(h.begin(), h.end(), [&](const auto& e) { return e.first == index; });
  if (it == h.end()) return std::nullopt;
  return it->second;
}

std::optional<cc::Term> lookup(const Heap& mu, cc::Address a) { return lookup(mu.half(a.half), a.index); }

Heap extend(Heap mu, cc::Address a, cc::Term v) {
  if (!cc::is_value(v)) throw std::logic_error("extend: not a value: " + cc::to_string(v));
  auto& h = mu.half(a.half);
  h.insert(h.begin(), {a.index, std::move(v)});
  return mu;
}

cc::Address fresh(const Heap& mu, Label l) {
  return cc::Address{static_cast<int>(mu.half(l).size()), l};
}

bool heap_typed(const cc::HeapContext& sigma, const Heap& mu) {
  auto half_ok = [&](const auto& entries, Label half) {
    return std::all_of(entries.begin(), entries.end(), [&](const auto& e) {
      auto v = lookup(mu.half(half), e.first);
      if (!v) return false;
      try {
        auto t = cc::typecheck({}, sigma, Label::low, Label::low, *v);
        return cc::below(t, Type{e.second, half});
      } catch (const cc::TypeError&) {
        return false;
      }
    });
  };
  return half_ok(sigma.low, Label::low) && half_ok(sigma.high, Label::high);
}

std::string to_string(const HalfHeap& h) {
  std::string out = "[";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(h[i].first) + "=" + cc::to_string(h[i].second);
  }
  return out + "]";
}

std::string to_string(const Heap& mu) {
  return "low:" + to_string(mu.low) + " high:" + to_string(mu.high);
}

}  // namespace lamsec
