#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "webflat/foliation.hpp"
#include "webflat/mpoly.hpp"

namespace webflat {

/// Point of the projective plane with exact or floating coordinates.
/// Exact points are normalized so the last nonzero coordinate is 1; floating
/// points so the largest coordinate has modulus 1.
struct ProjPoint {
    std::array<FieldElem, 3> coords;

    bool exact() const;
    ProjPoint normalized() const;
    std::array<Cplx, 3> approx() const;
    std::string str() const;

    static ProjPoint of(FieldElem x, FieldElem y, FieldElem z);
    static ProjPoint numeric(Cplx x, Cplx y, Cplx z);
};

/// Chordal distance between projective points: the sine of the angle between
/// the coordinate vectors. 0 for equal points, 1 for orthogonal ones.
long double proj_dist(const ProjPoint& p, const ProjPoint& q);

/// Line through two distinct points (cross product), monic/max-normalized.
MPoly line_through(const ProjPoint& p, const ProjPoint& q);

/// Evaluate a homogeneous polynomial at the point.
FieldElem eval_at(const MPoly& P, const ProjPoint& s);

struct SingOptions {
    long double tol = 1e-10L;       // acceptance threshold relative to coefficient scale
    unsigned max_den = 1000000;     // denominator bound for exact upgrades of floats
    std::vector<ProjPoint> candidates; // exact points to test and prefer over floats
};

/// All singular points of the form (a = b = c = 0): resultant elimination and
/// root pairing in the chart z = 1, a second chart for the line at infinity,
/// direct check of [1:0:0], projective dedup. Exact rational points are
/// recognized; exact candidates that verify replace matching floats.
/// Throws when the singular locus has positive dimension.
std::vector<ProjPoint> singular_points(const HomForm& w, const SingOptions& opts = {});

/// Local multiplicity data at a singular point: nu = min vanishing order of
/// the chart vector field components, tau = least k whose k-jet is not
/// proportional to the radial field.
struct NuTau {
    int nu = 0;
    int tau = 0;
    int chart = 2; // coordinate set to 1 for the local computation
};
NuTau nu_tau(const HomForm& w, const ProjPoint& s);

inline bool is_radial(const NuTau& nt) { return nt.nu == 1 && nt.tau >= 2; }

/// Camacho-Sad index of the invariant line at a singular point on it:
/// in coordinates where the line is {v = 0} and the form is v*abar du + b dv,
/// the negative residue of abar(u,0)/b(u,0) at u = 0. Exact for exact kinds.
FieldElem cs_index(const HomForm& w, const MPoly& line, const ProjPoint& s);

/// All invariant lines, found as lines through pairs of singular points and
/// certified by the invariance test (exactly when kinds permit, within the
/// tolerance otherwise). At most 3d lines can exist; more is an internal error.
std::vector<MPoly> invariant_lines(const HomForm& w, const SingOptions& opts = {});

/// Invariant lines dividing the homogeneous polynomial Phi. Candidates join a
/// singular point to a root of Phi on a probe line, which covers every linear
/// factor: an invariant line passes through a singularity, and the divisors we
/// split vanish along their invariant lines. Exact certificates are preferred,
/// floating ones are the fallback.
std::vector<MPoly> invariant_linear_factors(const HomForm& w, const MPoly& Phi,
                                            const SingOptions& opts = {});

/// Is s an ordinary point of the curve {P = 0}: the tangent cone at s is
/// squarefree (all tangent directions distinct). Requires P(s) = 0.
bool is_ordinary_point(const MPoly& P, const ProjPoint& s);

/// Full per-singularity report for a pre-foliation.
struct SingularityRecord {
    ProjPoint point;
    int nu = 0;
    int tau = 0;
    int chart = 2;
    bool radial = false;
    int radiality_order = 0; // tau - 1 when radial
    bool on_curve = false;
    std::optional<bool> ordinary_on_curve;
    std::vector<std::pair<MPoly, FieldElem>> cs_indices; // line and index, non-radial points
};

std::vector<SingularityRecord> analyze_singularities(const PreFoliation& pf,
                                                     const SingOptions& opts = {});

} // namespace webflat
