#pragma once

#include "superdiff/derivation.hpp"
#include "superdiff/grassmann.hpp"
#include "superdiff/morphism.hpp"
#include "superdiff/sdiff.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace superdiff {

// Text syntax.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | atom ('^' N)?
//   atom   := N ['/' N] | x<k> | th<k> | th[i,...] | t<k> | t[i,...]
//           | d/dx<k> | d/dth<k> | '(' expr ')'
//
// Index lists must be strictly increasing; t[] and th[] are 1. A function
// times a vector field is a vector field; nothing multiplies a field on the
// right.
//
// Morphism documents are `gen -> expr` entries separated by ';' or line
// breaks, with an optional `dims: m n p` header and an optional
// `inverse: { ... }` block. Unlisted generators are fixed. Dimensions not
// fixed by the header are inferred from the largest index used anywhere in
// the document; `at_least` raises them further.

using Value = std::variant<Superfunction, SuperDerivation>;

Value parse_value(std::string_view src, Dims at_least = {});
Superfunction parse_superfunction(std::string_view src, Dims at_least = {});
/// A bare 0 is accepted as the zero field.
SuperDerivation parse_derivation(std::string_view src, Dims at_least = {});
/// Rationals and t's only.
GrassmannElement parse_grassmann(std::string_view src, unsigned n_at_least = 0);

/// An inverse block is verified (both composites must be the identity) and
/// certifies the underlying morphism; InvertibilityError otherwise.
SuperMorphism parse_morphism(std::string_view src, Dims at_least = {});
/// `p: k`, `phi0: { morphism }` and `X[i,...]: field` entries.
FactoredForm parse_factored(std::string_view src, Dims at_least = {});
/// `nil: { morphism }` and `body: { morphism }`.
SplitPoint parse_split(std::string_view src, Dims at_least = {});
/// Optional `gr: s -> t` header, then `t<i> -> expr` entries. Unlisted t_i
/// map to t_i when i <= t and to 0 otherwise. Without the header s is the
/// largest listed generator and t the largest index used in an image.
GrassmannMorphism parse_grassmann_morphism(std::string_view src);

/// Dimensions a document would be evaluated at, without evaluating it.
Dims infer_dims(std::string_view src);

enum class DocumentKind { expression, morphism, factored, split, grassmann_morphism };
/// Looks at the leading keyword / arrow structure only.
DocumentKind detect_kind(std::string_view src);

std::string print(Superfunction const &f);
std::string print(SuperDerivation const &x);
std::string print(GrassmannElement const &g);
std::string print(Value const &v);

/// Canonical morphism document. When the underlying morphism is certified an
/// inverse block holding the full inverse is appended.
std::string print_morphism(SuperMorphism const &phi);
std::string print_morphism(UnderlyingMorphism const &phi);
std::string print_factored(FactoredForm const &form);
std::string print_split(SplitPoint const &s);
std::string print_grassmann_morphism(GrassmannMorphism const &mor);

} // namespace superdiff
