#pragma once

// Type-directed cast insertion from the surface language to the cast calculus.

#include "lamsec/cc.hpp"
#include "lamsec/surface.hpp"

namespace lamsec {

/// Compiles a typing derivation. Only static and NSU heap writes are emitted.
/// Throws LatticeError if the derivation is not one the checker produces.
cc::Term compile(const surface::Typed& typed);

}  // namespace lamsec
