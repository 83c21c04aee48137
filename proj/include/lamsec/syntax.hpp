#pragma once

// Concrete S-expression syntax for surface programs and types.
//
//   label  ::= low | high          glabel ::= label | *
//   type   ::= (Unit @ g) | (Bool @ g) | (Ref type @ g) | (type -> [g] type @ g)
//   term   ::= x | (unit @ l) | (true @ l) | (false @ l)
//            | (lam [l] x : type . term @ l) | (app term term ^p)
//            | (if term term term ^p) | (let x term term) | (ref l term ^p)
//            | (! term) | (:= term term ^p) | (ann term : type ^p)
//
// An omitted `@ l` means low and an omitted `^p` becomes p<line>:<col>.
// A `;` starts a comment running to the end of the line.

#include <stdexcept>
#include <string>
#include <string_view>

#include "lamsec/surface.hpp"

namespace lamsec::syntax {

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, const std::string& what);
  SourcePos pos() const { return pos_; }

 private:
  SourcePos pos_;
};

surface::Term parse_program(std::string_view text);
Type parse_type(std::string_view text);

/// Prints with every label and blame label explicit, so parsing the output
/// yields an equal term.
std::string print(const surface::Term& t);
std::string print(const Type& t);
std::string print(GLabel g);

}  // namespace lamsec::syntax
