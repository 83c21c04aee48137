#pragma once

// Security labels and security types.
//
// A type pairs a raw type with a gradual label (written T_g). Raw types
// recurse through types, so nodes are held in immutable shared boxes: a copy
// of a Type is cheap and behaves as a value.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace lamsec {

enum class Label : std::uint8_t { low, high };

constexpr bool leq(Label a, Label b) { return a == Label::low || b == Label::high; }

constexpr Label join(Label a, Label b) {
  return (a == Label::high || b == Label::high) ? Label::high : Label::low;
}

constexpr Label meet(Label a, Label b) {
  return (a == Label::low || b == Label::low) ? Label::low : Label::high;
}

std::string_view to_string(Label l);

/// A concrete label or the unknown label ★.
class GLabel {
 public:
  constexpr GLabel(Label l) : concrete_(l) {}  // NOLINT: implicit by design of the calculus
  static constexpr GLabel star() { return GLabel(); }

  constexpr bool is_star() const { return !concrete_.has_value(); }
  constexpr bool is_concrete() const { return concrete_.has_value(); }
  /// Precondition: is_concrete().
  constexpr Label concrete() const { return *concrete_; }
  constexpr std::optional<Label> as_concrete() const { return concrete_; }

  friend constexpr bool operator==(GLabel, GLabel) = default;

 private:
  constexpr GLabel() = default;
  std::optional<Label> concrete_;
};

inline constexpr GLabel kStar = GLabel::star();
inline constexpr Label kLow = Label::low;
inline constexpr Label kHigh = Label::high;

std::string to_string(GLabel g);

/// Immutable, shared, value-semantic box for recursive variants.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}  // NOLINT

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) {
    return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
  }

 private:
  std::shared_ptr<const T> ptr_;
};

struct Type;

struct UnitType {
  bool operator==(const UnitType&) const = default;
};
struct BoolType {
  bool operator==(const BoolType&) const = default;
};
struct RefType {
  Box<Type> inner;
  bool operator==(const RefType&) const = default;
};
struct FunType {
  Box<Type> dom;
  GLabel pc;
  Box<Type> cod;
  bool operator==(const FunType&) const = default;
};

using RawType = std::variant<UnitType, BoolType, RefType, FunType>;

struct Type {
  RawType raw;
  GLabel label;
  bool operator==(const Type&) const = default;
};

inline bool is_base(const RawType& t) {
  return std::holds_alternative<UnitType>(t) || std::holds_alternative<BoolType>(t);
}

Type unit_t(GLabel g);
Type bool_t(GLabel g);
Type ref_t(Type inner, GLabel g);
Type fun_t(Type dom, GLabel pc, Type cod, GLabel g);

/// Compact notation: Bool_low, (Ref Bool_*)_low, (Bool_low ->[low] Unit_low)_high.
std::string to_string(const RawType& t);
std::string to_string(const Type& t);

}  // namespace lamsec
