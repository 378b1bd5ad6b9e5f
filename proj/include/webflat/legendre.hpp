#pragma once
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "webflat/foliation.hpp"
#include "webflat/singularities.hpp"

namespace webflat {

/// Implicit d-web on the dual plane: zero locus of poly(p, q, x), where the
/// point (p, q) stands for the line {y = p*x - q} of the source plane and x
/// is the slope variable, x = dq/dp along the leaves.
struct ImplicitWeb {
    MPoly poly;             // squarefree in x, deg_x = degree
    int degree = 0;
    MPoly curve_factor;     // restriction of the curve to the moving line, 1 if no curve
    MPoly foliation_factor; // slope equation of the foliation part
    std::string chart;      // "z", or the coordinate change applied before dualizing
};

/// Dual web of a pre-foliation. Substitutes y = p*x - q into the chart data
/// f * (A dx + B dy) and multiplies the curve restriction f(x, px - q) by the
/// slope equation A(x, px - q) + p * B(x, px - q). The chart z = 1 is tried
/// first; if a factor loses x-degree there (curve through the chart's line at
/// infinity, say) up to five random exact coordinate changes are attempted.
/// Throws for a degree-zero foliation part: a pencil of lines has a point,
/// not a web, for its dual.
ImplicitWeb legendre_web(const PreFoliation& pf);

/// Same, in the chart reached by the substitution x_i -> sum_j M[i][j] u_j.
/// Throws when that particular chart is degenerate.
ImplicitWeb legendre_web(const PreFoliation& pf,
                         const std::array<std::array<FieldElem, 3>, 3>& M);

/// Pencil of lines through s, as a linear polynomial in (p, q): the line
/// {y = p*x - q} passes through (x0, y0) iff q - x0*p + y0 = 0, and through
/// the infinite point [X:Y:0], X != 0, iff p = Y/X. The dual of [0:1:0] is
/// the chart's own line at infinity and has no affine equation: error.
MPoly dual_line(const ProjPoint& s);

/// Singular points of a reduced plane curve: common zeros of the gradient.
/// Affine input is homogenized with z first. Smooth curves and lines give an
/// empty list.
std::vector<ProjPoint> curve_singular_points(const MPoly& P, const SingOptions& opts = {});

/// Dual curve computation: full is the x-discriminant of P(x, px - q, 1),
/// which picks up the pencil of every singular point of the curve; curve is
/// what remains after those pencils are divided out to their full power.
struct DualCurveParts {
    MPoly full;
    MPoly curve;
    std::vector<std::pair<MPoly, int>> singular_duals; // pencil and its power in full
};

/// Dual of the reduced curve {P = 0}, degree >= 2 (the dual of a line is a
/// point). P may be affine in (x, y) or homogeneous in (x, y, z); the curve
/// must not contain the line z = 0, change coordinates upstream if it does.
DualCurveParts dual_curve(const MPoly& P, const SingOptions& opts = {});

/// Closure of the image of {C = 0} under the tangent map of the foliation:
/// eliminate the contact point from the incidence condition C(x, px - q) = 0
/// and the slope condition (A + pB)(x, px - q) = 0, then strip the pencils of
/// the base points C intersect Sing w, which the elimination picks up whole.
/// C as in dual_curve; the curve must not lie in {B = 0} (vertical slopes
/// everywhere would push the image into the line at infinity).
MPoly gauss_image(const HomForm& w, const MPoly& C, const SingOptions& opts = {});

/// Slope resultant Res_x(poly, d poly/dx), unreduced: repeated components
/// keep their powers and the leading-coefficient factors are not divided out.
/// Needs degree >= 2.
MPoly web_discriminant(const ImplicitWeb& W);

/// One expected component of the web discriminant. expected_valuation 0
/// means "at least one", a positive value is an exact claim.
struct PredictedComponent {
    std::string label;
    MPoly poly; // in (p, q)
    int expected_valuation = 0;
};

/// Component list for the discriminant of the dual web in the chart z = 1,
/// assembled case by case: general position, invariant curve, convex, convex
/// reduced. Points dual to the chart's line at infinity cannot contribute an
/// affine component and are reported separately. Floating inputs keep the
/// pencil components but skip the transverse-inflection image, which needs
/// exact elimination.
struct DiscriminantPrediction {
    std::string formula; // which case applied
    std::vector<PredictedComponent> components;
    std::vector<ProjPoint> infinite_duals;          // [0:1:0]-type points, pencil invisible here
    std::vector<ProjPoint> curve_points_not_radial; // curve singularities away from radial points
};

DiscriminantPrediction predict_discriminant(const PreFoliation& pf, const SingOptions& opts = {});

struct ComponentCheck {
    std::string label;
    MPoly poly;
    int multiplicity = 0;       // valuation in the computed discriminant
    int expected_valuation = 0; // copied from the prediction, 0 = ">= 1"
    std::string verdict;        // "divides", "missing" or "unchecked"
};

/// Outcome of matching predicted components against the computed
/// discriminant. computed is the x-discriminant of the web polynomial: the
/// raw resultant also vanishes along the pencils of tangency points sitting
/// on the chart's line at infinity, an artifact of the leading coefficient,
/// so the leading coefficient is divided out first. resultant keeps the raw
/// value for reference. residual is the squarefree part of computed with
/// every matched component removed; a match leaves a constant.
struct DiscriminantReport {
    MPoly computed;
    MPoly resultant;
    std::vector<ComponentCheck> components;
    MPoly residual;
    std::string verdict; // "match", "missing components", "extraneous residual", "inconclusive"
    bool numeric = false;
};

/// Predict and verify in one step (chart z = 1 only).
DiscriminantReport verify_discriminant(const PreFoliation& pf, const SingOptions& opts = {});

/// Verify a caller-supplied prediction. Exact kinds use exact divisibility
/// and valuations; the complex kind falls back to tolerance-based synthetic
/// division and only handles linear components, anything else is reported as
/// "unchecked" and the verdict degrades to "inconclusive".
DiscriminantReport verify_discriminant(const PreFoliation& pf,
                                       const DiscriminantPrediction& prediction,
                                       const SingOptions& opts = {});

/// Valuation of the unreduced slope resultant along a component. Throws when
/// the component does not divide it at all.
int discriminant_multiplicity(const ImplicitWeb& W, const MPoly& component);

} // namespace webflat
