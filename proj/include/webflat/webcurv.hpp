#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "webflat/field.hpp"
#include "webflat/jet.hpp"
#include "webflat/legendre.hpp"

namespace webflat {

using CJet = Jet2<Cplx>;

/// Conditioning thresholds for slope solving and curvature evaluation. All
/// are relative to the local magnitude of the web polynomial's coefficients.
struct CurvOptions {
    long double sep_tol = 1e-8L;   // pairwise slope distance below this invalidates a sample
    long double fx_tol = 1e-10L;   // minimum |dF/dx| at a slope, relative to the local scale
    long double resid_tol = 1e-9L; // re-substitution residual allowed for a slope jet
};

/// Order-2 jets of the web's slope functions x_i(p, q) at (p, q): the roots
/// of the defining polynomial in x together with their implicit first and
/// second partials, sorted by real then imaginary part. Throws when the
/// degree drops at the point, roots collide (the point lies on the
/// discriminant), the x-derivative at a root falls under fx_tol, or the jets
/// fail to annihilate the polynomial to second order.
std::vector<CJet> slope_jets(const ImplicitWeb& W, Cplx p, Cplx q, const CurvOptions& opts = {});

/// Blaschke curvature of the 3-web with slope jets f1, f2, f3 at a common
/// point: the dp^dq coefficient of d(eta), where eta is the unique 1-form
/// with d(omega_i) = eta ^ omega_i for the normalized leaf forms
/// omega_i = g_i (dq - f_i dp). Symmetric in its arguments. Throws on
/// coincident slope values or an ill-conditioned solve.
Cplx curvature3(const CJet& f1, const CJet& f2, const CJet& f3);

struct CurvatureSample {
    Cplx p{}, q{};
    Cplx K{};                  // coefficient of dp ^ dq, summed over 3-subwebs
    long double min_sep = 0;   // smallest pairwise slope distance
    long double min_fx = 0;    // smallest |dF/dx| across the slopes
    long double spread = 0;    // largest pairwise slope distance
    long double K_scaled = 0;  // |K| divided by the slope spread
    long double noise = 0;     // rounding floor on |K| from the eta solve magnitudes
    bool valid = false;        // false when conditioning fell below the thresholds
};

/// Curvature of the d-web at (p, q): the sum of the curvatures of all
/// C(d, 3) 3-subwebs. Requires d >= 3 and throws when the point lies on the
/// web discriminant; conditioning failures inside the thresholds come back
/// as a sample flagged invalid instead.
CurvatureSample curvature(const ImplicitWeb& W, Cplx p, Cplx q, const CurvOptions& opts = {});

/// Independent finite-difference evaluation of the same curvature: re-solves
/// the slope values on a 5-point stencil, takes their first derivatives from
/// implicit differentiation, assembles the eta coefficients per stencil point
/// and differences them centrally. No jet arithmetic involved. Throws when
/// any stencil point sits too close to the discriminant for the step.
Cplx curvature_fd_oracle(const ImplicitWeb& W, Cplx p, Cplx q, long double step = 1e-4L);

/// Residual of the subweb decomposition identity at (p, q): splitting the d
/// slopes into the n-element first_group A and the complement B checks
///   K(W) = K(A) - (n-2) sum_{i in A} K({i} u B)
///        + sum_{i<j in A} K({i,j} u B) + C(n-1, 2) K(B),
/// every term a sum of 3-subweb curvatures and sets with fewer than three
/// slopes contributing zero. Requires d >= 4 and 2 <= n <= d-2; indices must
/// be distinct positions into the sorted slope list.
long double decomposition_identity_check(const ImplicitWeb& W, const std::vector<int>& first_group,
                                         Cplx p, Cplx q, const CurvOptions& opts = {});

struct HolomorphyProbe {
    std::string component;       // printed form of the component polynomial
    long double pole_order = 0;  // negated slope of the log|K| vs log(distance) fit
    long double fit_quality = 0; // R^2 of that fit
    long double max_abs_K = 0;   // largest |K| seen along the approach
    bool holomorphic = false;
    bool inconclusive = false;
};

/// Estimate the growth of the curvature along a component of the web
/// discriminant: pick a generic smooth point of the component, approach it
/// along the gradient transversal at distances eps * 2^-j and fit log|K|
/// against log(distance). Uniformly tiny or bounded |K| counts as
/// holomorphic; growing |K| with a good fit reports the pole order; a bad
/// fit on growing data comes back inconclusive. The seed drives the choice
/// of base point, re-drawn up to five times when a sample degenerates.
/// Throws when the component involves the slope variable or does not divide
/// the discriminant.
HolomorphyProbe holomorphy_probe(const ImplicitWeb& W, const MPoly& component,
                                 uint64_t seed = 0x5eedULL, const CurvOptions& opts = {},
                                 long double pole_threshold = 0.25L);

struct FlatnessConfig {
    int samples = 200;                  // generic curvature samples requested
    uint64_t seed = 0x77ebf1a7ULL;
    long double tol = 1e-6L;            // flatness threshold on the normalized |K|
    long double pole_threshold = 0.25L; // estimated orders below this count as holomorphic
    CurvOptions curv{};
};

struct FlatnessVerdict {
    std::string verdict = "inconclusive"; // "flat", "non-flat" or "inconclusive"
    long double max_abs_K = 0;            // largest normalized |K| over the valid samples
    int samples_valid = 0;
    int samples_requested = 0;
    uint64_t seed = 0;
    std::vector<HolomorphyProbe> probes;
};

/// Sample the curvature at seeded points of the unit bidisk, skipping points
/// that land too close to the discriminant, and probe the growth of K along
/// each supplied component. Flat means every valid sample stays under the
/// tolerance and no probe reports a pole; a pole or an over-tolerance sample
/// means non-flat; too few valid samples means inconclusive.
FlatnessVerdict flatness_scan(const ImplicitWeb& W, const std::vector<MPoly>& components,
                              const FlatnessConfig& cfg = {});

/// Same scan for the dual web of a pre-foliation, probing along every finite
/// component of the predicted discriminant.
FlatnessVerdict flatness_scan(const PreFoliation& pf, const FlatnessConfig& cfg = {});

} // namespace webflat
