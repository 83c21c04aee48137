#pragma once

// Gradual predicates and operators over labels, raw types, and types.
//
// Partial operators return std::nullopt where no equation applies. The label
// versions of consistent join/meet are total and return a plain GLabel.

#include <optional>
#include <stdexcept>

#include "lamsec/types.hpp"

namespace lamsec {

/// Violated precondition of a lattice operator (a caller bug).
class LatticeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool subtype(GLabel a, GLabel b);
bool subtype(const RawType& a, const RawType& b);
bool subtype(const Type& a, const Type& b);

bool consistent(GLabel a, GLabel b);
bool consistent(const RawType& a, const RawType& b);
bool consistent(const Type& a, const Type& b);

bool cons_subtype(GLabel a, GLabel b);
bool cons_subtype(const RawType& a, const RawType& b);
bool cons_subtype(const Type& a, const Type& b);

std::optional<GLabel> gradual_meet(GLabel a, GLabel b);
std::optional<RawType> gradual_meet(const RawType& a, const RawType& b);
std::optional<Type> gradual_meet(const Type& a, const Type& b);

GLabel cons_join(GLabel a, GLabel b);
std::optional<RawType> cons_join(const RawType& a, const RawType& b);
std::optional<Type> cons_join(const Type& a, const Type& b);

GLabel cons_meet(GLabel a, GLabel b);
std::optional<RawType> cons_meet(const RawType& a, const RawType& b);
std::optional<Type> cons_meet(const Type& a, const Type& b);

/// a ← b. Requires cons_subtype(a, b); the result C satisfies a ∼ C <: b.
/// Throws LatticeError when the precondition fails.
GLabel merge(GLabel a, GLabel b);
RawType merge(const RawType& a, const RawType& b);
Type merge(const Type& a, const Type& b);

/// a ⇐ b, the dual merge. Requires cons_subtype(a, b); the result C
/// satisfies a <: C ∼ b. Used in contravariant positions.
GLabel merge_dual(GLabel a, GLabel b);
RawType merge_dual(const RawType& a, const RawType& b);
Type merge_dual(const Type& a, const Type& b);

/// T_g ∨̃ g' = T_{g ∨̃ g'}.
Type stamp_type(const Type& a, GLabel g);

}  // namespace lamsec
