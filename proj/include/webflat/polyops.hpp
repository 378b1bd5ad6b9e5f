#pragma once
#include <optional>

#include "webflat/mpoly.hpp"

namespace webflat {

/// Exact division attempt over an exact coefficient field: returns g/f when f
/// divides g, nullopt otherwise. Recursive univariate long division; leading
/// coefficients are divided recursively in the remaining variables.
std::optional<MPoly> try_divide(const MPoly& g, const MPoly& f);

/// Does f divide g exactly? Exact kinds only.
bool divides(const MPoly& f, const MPoly& g);

/// Multivariate gcd by primitive PRS with recursive content extraction.
/// Result is normalized so its graded-lex leading coefficient is 1.
/// Exact kinds only; gcd(0, 0) = 0.
MPoly poly_gcd(const MPoly& a, const MPoly& b);

/// Sylvester resultant of f and g with respect to var: raw determinant of the
/// Sylvester matrix, deg_var(g) rows of f coefficients first. deg_var(g) == 0
/// gives g^deg_var(f). Exact kinds only (fraction-free Bareiss elimination).
MPoly resultant(const MPoly& f, const MPoly& g, const std::string& var);

/// Res_var(f, df/dvar) / lc_var(f). The leading-coefficient division is exact
/// and drops the spurious factor the raw resultant picks up from the locus
/// where deg_var collapses; all downstream comparisons are up to scalar.
MPoly discriminant_in(const MPoly& f, const std::string& var);

/// Largest k with c^k | f. Requires f != 0 and c non-constant.
int valuation_along(const MPoly& f, const MPoly& c);

/// f / gcd(f, df/dvar): strips repeated factors that depend on var.
MPoly squarefree_part_in(const MPoly& f, const std::string& var);

/// f / gcd(f, all partials): the full squarefree part (char 0).
MPoly squarefree_part(const MPoly& f);

/// Exact squarefree test. Fast path: restrict to a random line and check the
/// univariate restriction (degree-preserving squarefree restriction is a sound
/// certificate); falls back to the gcd computation when the line is unlucky.
bool is_squarefree(const MPoly& f);

/// Lowest-degree homogeneous part of f recentred at an affine point
/// (point[i] matches f.vars()[i]). Exact kinds.
MPoly tangent_cone_at(const MPoly& f, const std::vector<FieldElem>& point);

/// Remainder-based division of g by a linear form, valid for any kind
/// including complex: returns quotient and remainder with deg_var(rem) = 0
/// where var is the pivot variable of ell (largest-coefficient variable for
/// numeric stability). ell must be linear.
struct LinearDivision {
    MPoly quotient;
    MPoly remainder;
};
LinearDivision divide_by_linear(const MPoly& g, const MPoly& ell);

/// Numeric valuation of f along a linear form: repeated synthetic division
/// while the remainder stays below rel_tol * |f|.
int valuation_along_linear_numeric(const MPoly& f, const MPoly& ell, long double rel_tol);

/// Largest coefficient magnitude (all kinds; exact coefficients are embedded).
long double coeff_scale(const MPoly& f);

/// Drop terms whose coefficient modulus is below rel * coeff_scale(f).
/// Identity on exact kinds; used to clean floating noise after recentering.
MPoly prune_small(const MPoly& f, long double rel);

} // namespace webflat
