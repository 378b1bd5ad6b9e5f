#pragma once
#include <array>
#include <optional>
#include <vector>

#include "webflat/mpoly.hpp"

namespace webflat {

/// Saturated homogeneous 1-form a dx + b dy + c dz on the projective plane.
/// a, b, c are homogeneous of degree d+1 where d is the foliation degree, and
/// x*a + y*b + z*c = 0 identically.
struct HomForm {
    MPoly a, b, c;
    int degree = 0; // foliation degree d; deg a = d + 1
};

/// Homogeneous vector field Z = E dx + F dy + G dz representing a form via
/// a = z*F - y*G, b = x*G - z*E, c = y*E - x*F.
struct HomVectorField {
    MPoly E, F, G;
    int degree = 0;
};

/// A reduced curve paired with a foliation. curve is the zero polynomial when
/// the co-degree is 0.
struct PreFoliation {
    MPoly curve;
    HomForm foliation;
    int total_degree = 0; // d = co_degree + foliation.degree
    int co_degree = 0;    // k = deg curve
    bool convex = false;  // foliation convex and curve invariant (exact kinds)
};

/// True iff x*a + y*b + z*c == 0 exactly. Throws when a coefficient is not
/// homogeneous or all three vanish.
bool euler_check(const MPoly& a, const MPoly& b, const MPoly& c);

/// Wrap a raw coefficient triple after validating homogeneity, the Euler
/// condition and saturation (constant gcd).
HomForm make_form(MPoly a, MPoly b, MPoly c);

/// Build the saturated homogeneous form whose z = 1 restriction is
/// A dx + B dy (up to nonzero scalar). A and B must be coprime.
HomForm homogenize_foliation(const MPoly& A, const MPoly& B);

/// Restriction of the form to the chart z = 1: coefficients of dx and dy.
std::pair<MPoly, MPoly> dehomogenize(const HomForm& w);

/// Solve a = z*F - y*G, b = x*G - z*E, c = y*E - x*F for (E, F, G) by exact
/// division; the identity is re-verified before returning.
HomVectorField vector_field_from_form(const HomForm& w);

/// Derivation along Z: E*dP/dx + F*dP/dy + G*dP/dz.
MPoly z_contract(const HomVectorField& Z, const MPoly& P);

/// det [[x, E, Z(E)], [y, F, Z(F)], [z, G, Z(G)]]: homogeneous of degree 3d.
/// Throws for degree 0 (pencils have no inflection divisor). The two-argument
/// overload evaluates the determinant for a caller-supplied generator of the
/// same foliation; the result does not depend on that choice.
MPoly inflection_divisor(const HomForm& w);
MPoly inflection_divisor(const HomForm& w, const HomVectorField& Z);

/// Is the curve {P = 0} invariant? Exact kinds: P | Z(P) exactly. Complex
/// kind: linear P only, remainder of the synthetic division of Z(P) compared
/// against tol * coefficient scale.
bool is_invariant_curve(const HomForm& w, const MPoly& P, long double tol = 1e-9L);

/// Split of the inflection divisor along a list of certified invariant lines:
/// inv = product of the lines to their multiplicity in I, tr = I / inv.
struct InflectionSplit {
    MPoly inflection; // full divisor
    MPoly invariant_part;
    MPoly transverse_part;
    bool numeric = false; // some line needed floating division
};
InflectionSplit split_inflection(const HomForm& w);
InflectionSplit split_inflection(const HomForm& w, const std::vector<MPoly>& lines);

/// Convex: the inflection divisor is itself an invariant curve. Reduced on
/// top of that: the divisor is squarefree (3d distinct invariant lines).
bool is_convex(const HomForm& w);
bool is_convex_reduced(const HomForm& w);

/// Pair a reduced curve with a foliation; pass the zero polynomial for a bare
/// foliation. Throws when the curve is not squarefree or not homogeneous.
PreFoliation pre_foliation(const MPoly& curve, const HomForm& F);

/// Pullback of the form under the linear substitution x_i -> sum_j M[i][j] u_j.
/// M must be invertible over the coefficient field.
HomForm transform_form(const HomForm& w, const std::array<std::array<FieldElem, 3>, 3>& M);

/// Does prod F_t^{e_t} cut out the leaves? Checks the cleared logarithmic
/// derivative sum_t e_t * Z(F_t) * prod_{s != t} F_s == 0 exactly.
bool first_integral_check(const HomForm& w, const std::vector<MPoly>& factors,
                          const std::vector<int>& exponents);

/// One-form with polynomial coefficients in (x, y, z, eps) used by the
/// degeneration identities: the limit eps -> 0 of phi^*(theta) / normalizer.
struct EpsForm {
    MPoly a, b, c;
};

/// Pull back theta under the substitution phi (three polynomials in x, y, z,
/// eps), divide exactly by normalizer (a scalar times a monomial in all four
/// variables) and take the eps^0 part. Errors when the division fails or the
/// limit vanishes identically.
EpsForm pullback_limit(const std::array<MPoly, 3>& phi, const EpsForm& theta,
                       const FieldElem& norm_scalar, const MPoly& norm_monomial);

} // namespace webflat
