#pragma once
#include <string>
#include <vector>

#include "webflat/mpoly.hpp"

namespace webflat {

/// Parse a polynomial expression.
///
/// Grammar (whitespace insignificant, no implicit multiplication):
///   expr     := term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' uint)?
///   base     := var | rational | 'sqrt' '(' int ')' | '(' expr ')'
///   rational := int ('/' uint)?
///
/// vars lists the allowed variable names. sqrt(N) is only legal when kind is
/// quadext and N equals its discriminant D. Unary minus exists only through
/// integer literals: write 0 - x or -1*x, not -x.
MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars,
                 FieldKind kind = FieldKind::rational, long long D = 0);

mpq_class parse_rational(const std::string& text);

} // namespace webflat
