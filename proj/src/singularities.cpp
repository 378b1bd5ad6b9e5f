#include "webflat/singularities.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "webflat/errors.hpp"
#include "webflat/polyops.hpp"
#include "webflat/roots.hpp"

namespace webflat {

namespace {

bool kind_exact(const FieldElem& e) { return e.kind() != FieldKind::complex_approx; }

// value of a polynomial at named coordinates (vars not listed must be absent)
FieldElem eval_named(const MPoly& P, const std::map<std::string, FieldElem>& at) {
    std::vector<FieldElem> point;
    point.reserve(P.vars().size());
    for (const auto& v : P.vars()) {
        auto it = at.find(v);
        if (it == at.end()) throw internal_error("eval_named: no value for " + v);
        point.push_back(it->second);
    }
    return P.eval(point);
}

// continued fraction convergent within tol of v, denominator capped
std::optional<mpq_class> rationalize(long double v, unsigned long max_den, long double tol) {
    if (!std::isfinite(v)) return std::nullopt;
    mpz_class p0 = 1, q0 = 0; // convergent h_{-1}/k_{-1}
    mpz_class p1, q1 = 1;     // h_0/k_0 = floor(v)
    long double x = v;
    long double fl = std::floor(x);
    p1 = static_cast<long>(fl);
    for (int it = 0; it < 48; ++it) {
        mpq_class cand(p1, q1);
        cand.canonicalize();
        if (std::abs(mpq_to_ld(cand) - v) <= tol) return cand;
        long double frac = x - std::floor(x);
        if (frac < 1e-18L) break;
        x = 1.0L / frac;
        if (x > 1e18L) break;
        mpz_class a(static_cast<long>(std::floor(x)));
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > static_cast<long>(max_den)) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    mpq_class cand(p1, q1);
    cand.canonicalize();
    if (q1 != 0 && std::abs(mpq_to_ld(cand) - v) <= tol) return cand;
    return std::nullopt;
}

std::optional<FieldElem> rationalize_value(Cplx v, unsigned long max_den,
                                           long double tol = 1e-8L) {
    long double scale = std::max(1.0L, std::abs(v));
    if (std::abs(v.imag()) > tol * scale) return std::nullopt;
    auto r = rationalize(v.real(), max_den, tol * scale);
    if (!r) return std::nullopt;
    return FieldElem(*r);
}

std::vector<Cplx> cplx_coeffs(const MPoly& f, const std::string& var) {
    std::vector<Cplx> out;
    for (const MPoly& c : f.coeffs_in(var)) {
        if (!c.is_constant()) throw internal_error("cplx_coeffs: polynomial is not univariate");
        out.push_back(c.constant_value().to_complex());
    }
    return out;
}

// determinant by partial-pivot elimination
Cplx lu_det(std::vector<std::vector<Cplx>> m) {
    size_t n = m.size();
    Cplx det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) == 0.0L) return Cplx(0);
        if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
        det *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            Cplx f = m[r][col] / m[col][col];
            for (size_t cc = col; cc < n; ++cc) m[r][cc] -= f * m[col][cc];
        }
    }
    return det;
}

// resultant of two complex-coefficient bivariate polynomials, eliminating
// elim: evaluate the Sylvester determinant at roots of unity in keep and
// interpolate by inverse DFT
MPoly numeric_resultant(const MPoly& f, const MPoly& g, const std::string& elim,
                        const std::string& keep) {
    int mf = f.deg_in(elim), mg = g.deg_in(elim);
    if (f.is_zero() || g.is_zero()) return MPoly(FieldKind::complex_approx, 0, {keep});
    if (mf == 0 && mg == 0)
        throw internal_error("numeric_resultant: neither input involves " + elim);
    auto univ = [&](const MPoly& p) {
        std::vector<std::vector<Cplx>> rows;
        for (const MPoly& c : p.coeffs_in(elim)) rows.push_back(cplx_coeffs(c, keep));
        return rows;
    };
    if (mf == 0) {
        MPoly r = MPoly::constant(FieldElem(1), f.vars()).with_kind(FieldKind::complex_approx, 0);
        for (int i = 0; i < mg; ++i) r *= f;
        return r.drop_unused_vars().with_vars({keep});
    }
    if (mg == 0) {
        MPoly r = MPoly::constant(FieldElem(1), g.vars()).with_kind(FieldKind::complex_approx, 0);
        for (int i = 0; i < mf; ++i) r *= g;
        return r.drop_unused_vars().with_vars({keep});
    }
    std::vector<std::vector<Cplx>> fc = univ(f), gc = univ(g);
    int bound = mg * f.deg_in(keep) + mf * g.deg_in(keep);
    int N = bound + 1;
    auto coeff_at = [&](const std::vector<std::vector<Cplx>>& cs, int k, Cplx x) {
        if (k < 0 || k >= static_cast<int>(cs.size())) return Cplx(0);
        Cplx acc(0);
        for (size_t i = cs[k].size(); i-- > 0;) acc = acc * x + cs[k][i];
        return acc;
    };
    size_t n = static_cast<size_t>(mf + mg);
    std::vector<Cplx> values(static_cast<size_t>(N));
    const long double tau = 6.28318530717958647692L;
    for (int j = 0; j < N; ++j) {
        Cplx x = std::polar(1.0L, tau * j / N);
        std::vector<std::vector<Cplx>> m(n, std::vector<Cplx>(n, Cplx(0)));
        for (int r = 0; r < mg; ++r)
            for (int k = 0; k <= mf; ++k) m[r][r + mf - k] = coeff_at(fc, k, x);
        for (int r = 0; r < mf; ++r)
            for (int k = 0; k <= mg; ++k) m[mg + r][r + mg - k] = coeff_at(gc, k, x);
        values[static_cast<size_t>(j)] = lu_det(std::move(m));
    }
    MPoly out(FieldKind::complex_approx, 0, {keep});
    MPoly t = MPoly::variable(keep, FieldKind::complex_approx, 0);
    for (int k = 0; k < N; ++k) {
        Cplx ck(0);
        for (int j = 0; j < N; ++j)
            ck += values[static_cast<size_t>(j)] * std::polar(1.0L, -tau * j * k / N);
        ck /= static_cast<long double>(N);
        out += t.pow(static_cast<unsigned>(k)).scaled(FieldElem::complex(ck));
    }
    return prune_small(out, 1e-13L);
}

std::vector<Cplx> poly_roots(const MPoly& f, const std::string& var) {
    std::vector<Cplx> cs = cplx_coeffs(f, var);
    if (cs.size() <= 1) return {};
    RootResult<Cplx> r = roots_univariate<Cplx>(cs);
    std::vector<Cplx> out;
    for (size_t i = 0; i < r.roots.size(); ++i)
        for (int k = 0; k < r.mults[i]; ++k) out.push_back(r.roots[i]);
    return out;
}

struct Chart {
    int one;            // index of the coordinate set to 1
    int c1, c2;         // indices of the two affine coordinates
    const char* v1;     // their variable names
    const char* v2;
};

Chart chart_info(int one) {
    switch (one) {
        case 0: return {0, 1, 2, "y", "z"};
        case 1: return {1, 0, 2, "x", "z"};
        default: return {2, 0, 1, "x", "y"};
    }
}

const char* coord_name(int i) { return i == 0 ? "x" : i == 1 ? "y" : "z"; }

// substitute coordinate `one` = 1 into P; the result lives in the two chart
// variables only
MPoly in_chart(const MPoly& P, int one) {
    MPoly onep = MPoly::constant(FieldElem(1)).with_kind(P.kind(), P.quad_D());
    Chart ch = chart_info(one);
    return P.substitute(coord_name(one), onep)
        .drop_unused_vars()
        .with_vars(canonical_vars({ch.v1, ch.v2}));
}

int pick_chart(const ProjPoint& s) {
    if (s.exact()) {
        for (int i = 2; i >= 0; --i)
            if (!s.coords[static_cast<size_t>(i)].is_zero()) return i;
        throw error("zero projective point");
    }
    auto a = s.approx();
    int best = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(a[static_cast<size_t>(i)]) >= std::abs(a[static_cast<size_t>(best)]))
            best = i;
    return best;
}

// the two 1-form coefficients in an affine chart: ds restricted to coord = 1.
// chart z: (a, b) in (x, y); chart y: (a, c) in (x, z); chart x: (b, c) in (y, z)
std::pair<MPoly, MPoly> form_in_chart(const HomForm& w, int one) {
    switch (one) {
        case 0: return {in_chart(w.b, 0), in_chart(w.c, 0)};
        case 1: return {in_chart(w.a, 1), in_chart(w.c, 1)};
        default: return {in_chart(w.a, 2), in_chart(w.b, 2)};
    }
}

MPoly shift_var(const MPoly& P, const std::string& from, const std::string& to,
                const FieldElem& by) {
    MPoly v = MPoly::variable(to, P.kind(), P.quad_D()) + MPoly::constant(by);
    return P.substitute(from, v.with_kind(P.kind(), P.quad_D()));
}

// truncate to total degree <= k
MPoly trunc_total(const MPoly& f, int k) {
    MPoly out(f.kind(), f.quad_D(), f.vars());
    for (int j = 0; j <= k; ++j) out += f.homogeneous_part(j);
    return out;
}

bool numerically_zero(const MPoly& f, long double ref, long double rel) {
    return coeff_scale(f) <= rel * ref;
}

} // namespace

bool ProjPoint::exact() const {
    return kind_exact(coords[0]) && kind_exact(coords[1]) && kind_exact(coords[2]);
}

ProjPoint ProjPoint::normalized() const {
    if (exact()) {
        int k = -1;
        for (int i = 2; i >= 0; --i)
            if (!coords[static_cast<size_t>(i)].is_zero()) { k = i; break; }
        if (k < 0) throw error("zero projective point");
        FieldElem inv = coords[static_cast<size_t>(k)].inv();
        return {{coords[0] * inv, coords[1] * inv, coords[2] * inv}};
    }
    int best = 0;
    long double bm = -1.0L;
    for (int i = 0; i < 3; ++i) {
        long double m = std::abs(coords[static_cast<size_t>(i)].to_complex());
        if (m >= bm) { bm = m; best = i; }
    }
    if (bm == 0.0L) throw error("zero projective point");
    FieldElem inv = FieldElem::complex(Cplx(1) / coords[static_cast<size_t>(best)].to_complex());
    std::array<FieldElem, 3> out;
    for (int i = 0; i < 3; ++i)
        out[static_cast<size_t>(i)] = FieldElem::complex(coords[static_cast<size_t>(i)].to_complex()) * inv;
    return {out};
}

std::array<Cplx, 3> ProjPoint::approx() const {
    return {coords[0].to_complex(), coords[1].to_complex(), coords[2].to_complex()};
}

std::string ProjPoint::str() const {
    return "[" + coords[0].str() + " : " + coords[1].str() + " : " + coords[2].str() + "]";
}

ProjPoint ProjPoint::of(FieldElem x, FieldElem y, FieldElem z) {
    return ProjPoint{{std::move(x), std::move(y), std::move(z)}}.normalized();
}

ProjPoint ProjPoint::numeric(Cplx x, Cplx y, Cplx z) {
    return ProjPoint{{FieldElem::complex(x), FieldElem::complex(y), FieldElem::complex(z)}}
        .normalized();
}

long double proj_dist(const ProjPoint& p, const ProjPoint& q) {
    auto a = p.approx(), b = q.approx();
    Cplx dot(0);
    long double na = 0, nb = 0;
    for (int i = 0; i < 3; ++i) {
        dot += a[static_cast<size_t>(i)] * std::conj(b[static_cast<size_t>(i)]);
        na += std::norm(a[static_cast<size_t>(i)]);
        nb += std::norm(b[static_cast<size_t>(i)]);
    }
    long double c2 = std::norm(dot) / (na * nb);
    return std::sqrt(std::max(0.0L, 1.0L - c2));
}

MPoly line_through(const ProjPoint& p, const ProjPoint& q) {
    FieldElem l0 = p.coords[1] * q.coords[2] - p.coords[2] * q.coords[1];
    FieldElem l1 = p.coords[2] * q.coords[0] - p.coords[0] * q.coords[2];
    FieldElem l2 = p.coords[0] * q.coords[1] - p.coords[1] * q.coords[0];
    if (l0.is_zero() && l1.is_zero() && l2.is_zero())
        throw error("line through equal points");
    FieldKind k = l0.kind();
    for (const FieldElem* e : {&l1, &l2})
        if (e->kind() == FieldKind::complex_approx) k = FieldKind::complex_approx;
    long long D = 0;
    for (const FieldElem* e : {&l0, &l1, &l2})
        if (e->kind() == FieldKind::quadext) { k = k == FieldKind::complex_approx ? k : FieldKind::quadext; D = e->quad_D(); }
    MPoly ell = MPoly::variable("x", k, D).scaled(l0) + MPoly::variable("y", k, D).scaled(l1) +
                MPoly::variable("z", k, D).scaled(l2);
    if (k != FieldKind::complex_approx) return ell.monic();
    // normalize by the largest coefficient
    FieldElem best = l0;
    for (const FieldElem* e : {&l1, &l2})
        if (std::abs(e->to_complex()) > std::abs(best.to_complex())) best = *e;
    return ell.scaled(best.inv());
}

FieldElem eval_at(const MPoly& P, const ProjPoint& s) {
    std::map<std::string, FieldElem> at{{"x", s.coords[0]}, {"y", s.coords[1]}, {"z", s.coords[2]}};
    return eval_named(P, at);
}

namespace {

bool verifies_singular(const HomForm& w, const ProjPoint& s, long double tol) {
    FieldElem va = eval_at(w.a, s), vb = eval_at(w.b, s), vc = eval_at(w.c, s);
    if (s.exact() && w.a.kind() != FieldKind::complex_approx)
        return va.is_zero() && vb.is_zero() && vc.is_zero();
    long double scale = std::max({coeff_scale(w.a), coeff_scale(w.b), coeff_scale(w.c)});
    long double m = std::max({std::abs(va.to_complex()), std::abs(vb.to_complex()),
                              std::abs(vc.to_complex())});
    return m <= tol * scale;
}

// Newton polish for the 2x2 system (P1, P2) = 0 in the chart variables
std::pair<Cplx, Cplx> newton_polish(const MPoly& P1, const MPoly& P2, const std::string& v1,
                                    const std::string& v2, Cplx x, Cplx y) {
    MPoly d11 = P1.derivative(v1), d12 = P1.derivative(v2);
    MPoly d21 = P2.derivative(v1), d22 = P2.derivative(v2);
    auto ev = [&](const MPoly& p, Cplx a, Cplx b) {
        return eval_named(p, {{v1, FieldElem::complex(a)}, {v2, FieldElem::complex(b)}})
            .to_complex();
    };
    // enough steps that even linear convergence near a degenerate zero lands
    for (int it = 0; it < 40; ++it) {
        Cplx f1 = ev(P1, x, y), f2 = ev(P2, x, y);
        Cplx a = ev(d11, x, y), b = ev(d12, x, y), c = ev(d21, x, y), d = ev(d22, x, y);
        Cplx det = a * d - b * c;
        if (std::abs(det) < 1e-30L) break;
        Cplx dx = (f1 * d - f2 * b) / det, dy = (a * f2 - c * f1) / det;
        x -= dx;
        y -= dy;
        if (std::abs(dx) + std::abs(dy) < 1e-19L * (1 + std::abs(x) + std::abs(y))) break;
    }
    return {x, y};
}

// all isolated common zeros of two bivariate polynomials (complex kind)
std::vector<std::pair<Cplx, Cplx>> common_zeros_2d(const MPoly& P1c, const MPoly& P2c,
                                                   const std::string& v1, const std::string& v2,
                                                   bool exact_inputs, const MPoly& P1e,
                                                   const MPoly& P2e, long double tol) {
    std::vector<std::pair<Cplx, Cplx>> out;
    if (P1c.is_zero() || P2c.is_zero()) {
        const MPoly& other = P1c.is_zero() ? P2c : P1c;
        if (!other.is_constant()) throw error("singular locus has positive dimension");
        return out;
    }
    if (P1c.is_constant() || P2c.is_constant()) return out;
    int d1a = P1c.deg_in(v1), d1b = P2c.deg_in(v1);
    int d2a = P1c.deg_in(v2), d2b = P2c.deg_in(v2);
    if ((d1a == 0 && d1b == 0) || (d2a == 0 && d2b == 0))
        throw error("singular locus has positive dimension");
    MPoly rx = exact_inputs ? resultant(P1e, P2e, v2).with_kind(FieldKind::complex_approx, 0)
                            : numeric_resultant(P1c, P2c, v2, v1);
    MPoly ry = exact_inputs ? resultant(P1e, P2e, v1).with_kind(FieldKind::complex_approx, 0)
                            : numeric_resultant(P1c, P2c, v1, v2);
    long double in_scale = std::max(coeff_scale(P1c), coeff_scale(P2c));
    int steps = std::max(P1c.degree(), P2c.degree());
    long double res_floor = 1e-10L * std::pow(std::max(1.0L, in_scale), steps);
    if (rx.is_zero() || ry.is_zero() ||
        (!exact_inputs && (coeff_scale(rx) <= res_floor || coeff_scale(ry) <= res_floor)))
        throw error("singular locus has positive dimension");
    rx = rx.drop_unused_vars().with_vars({v1});
    ry = ry.drop_unused_vars().with_vars({v2});
    std::vector<Cplx> xs = rx.is_constant() ? std::vector<Cplx>{} : poly_roots(rx, v1);
    std::vector<Cplx> ys = ry.is_constant() ? std::vector<Cplx>{} : poly_roots(ry, v2);
    long double s1 = coeff_scale(P1c), s2 = coeff_scale(P2c);
    int deg1 = P1c.degree(), deg2 = P2c.degree();
    auto ev = [&](const MPoly& p, Cplx a, Cplx b) {
        return eval_named(p, {{v1, FieldElem::complex(a)}, {v2, FieldElem::complex(b)}})
            .to_complex();
    };
    auto grow_at = [&](Cplx x, Cplx y) {
        return std::pow(std::max({1.0L, std::abs(x), std::abs(y)}), std::max(deg1, deg2));
    };
    auto push = [&](Cplx px, Cplx py) {
        for (auto& [ox, oy] : out)
            if (std::abs(px - ox) + std::abs(py - oy) < 1e-9L * (1 + std::abs(px) + std::abs(py)))
                return;
        out.emplace_back(px, py);
    };
    long double strict = std::max(tol, 1e-12L);
    for (Cplx x : xs) {
        for (Cplx y : ys) {
            // a root of multiplicity m only carries eps^(1/m) digits, so the
            // pre-polish gate has to be generous; the polished residual decides
            long double grow = grow_at(x, y);
            if (std::abs(ev(P1c, x, y)) > 1e-2L * s1 * grow) continue;
            if (std::abs(ev(P2c, x, y)) > 1e-2L * s2 * grow) continue;
            auto [px, py] = newton_polish(P1c, P2c, v1, v2, x, y);
            long double pg = grow_at(px, py);
            if (std::abs(ev(P1c, px, py)) <= strict * s1 * pg &&
                std::abs(ev(P2c, px, py)) <= strict * s2 * pg) {
                push(px, py);
                continue;
            }
            // Newton stalls on degenerate zeros (singular Jacobian); keep a
            // medium-confidence candidate and let the caller verify it
            if (std::abs(ev(P1c, x, y)) <= 3e-6L * s1 * grow &&
                std::abs(ev(P2c, x, y)) <= 3e-6L * s2 * grow)
                push(x, y);
        }
    }
    return out;
}

} // namespace

std::vector<ProjPoint> singular_points(const HomForm& w, const SingOptions& opts) {
    bool exact_form = w.a.kind() != FieldKind::complex_approx;
    std::vector<ProjPoint> found;
    auto add_point = [&](const ProjPoint& p) {
        ProjPoint n = p.normalized();
        for (auto& q : found) {
            if (proj_dist(n, q) < 1e-7L) {
                if (n.exact() && !q.exact()) q = n; // upgrade in place
                return;
            }
        }
        found.push_back(n);
    };

    // exact candidates first so later floats dedupe against them
    for (const ProjPoint& c : opts.candidates)
        if (verifies_singular(w, c, opts.tol)) add_point(c);

    // chart sweeps: z = 1 for the affine points, y = 1 for the line at
    // infinity (x = 1 would only add [1:0:0], checked directly)
    for (int one : {2, 1}) {
        auto [P1e, P2e] = form_in_chart(w, one);
        Chart ch = chart_info(one);
        MPoly P1c = P1e.with_kind(FieldKind::complex_approx, 0);
        MPoly P2c = P2e.with_kind(FieldKind::complex_approx, 0);
        auto zeros = common_zeros_2d(P1c, P2c, ch.v1, ch.v2, exact_form, P1e, P2e, opts.tol);
        for (auto [u, v] : zeros) {
            std::array<Cplx, 3> h;
            h[static_cast<size_t>(ch.one)] = Cplx(1);
            h[static_cast<size_t>(ch.c1)] = u;
            h[static_cast<size_t>(ch.c2)] = v;
            ProjPoint p = ProjPoint::numeric(h[0], h[1], h[2]);
            if (exact_form) {
                // try the exact upgrade before settling for the float; the
                // proposal is loose because exact verification follows, and a
                // degenerate zero may arrive with few correct digits
                auto r1 = rationalize_value(u, opts.max_den, 1e-4L);
                auto r2 = rationalize_value(v, opts.max_den, 1e-4L);
                if (r1 && r2) {
                    std::array<FieldElem, 3> e;
                    e[static_cast<size_t>(ch.one)] = FieldElem(1);
                    e[static_cast<size_t>(ch.c1)] = *r1;
                    e[static_cast<size_t>(ch.c2)] = *r2;
                    ProjPoint pe{{e[0], e[1], e[2]}};
                    if (verifies_singular(w, pe, opts.tol)) {
                        add_point(pe);
                        continue;
                    }
                }
            }
            if (verifies_singular(w, p, std::max(opts.tol, 1e-8L))) add_point(p);
        }
    }

    // the one point both charts miss
    ProjPoint e100 = ProjPoint::of(FieldElem(1), FieldElem(0), FieldElem(0));
    if (!exact_form)
        e100 = ProjPoint::numeric(Cplx(1), Cplx(0), Cplx(0));
    if (verifies_singular(w, e100, opts.tol)) add_point(e100);

    std::sort(found.begin(), found.end(), [](const ProjPoint& p, const ProjPoint& q) {
        auto a = p.approx(), b = q.approx();
        for (int i = 0; i < 3; ++i) {
            size_t ii = static_cast<size_t>(i);
            if (a[ii].real() != b[ii].real()) return a[ii].real() < b[ii].real();
            if (a[ii].imag() != b[ii].imag()) return a[ii].imag() < b[ii].imag();
        }
        return false;
    });
    return found;
}

NuTau nu_tau(const HomForm& w, const ProjPoint& s) {
    if (!verifies_singular(w, s, 1e-8L)) throw error("nu_tau: point is not singular");
    NuTau out;
    out.chart = pick_chart(s);
    Chart ch = chart_info(out.chart);
    auto [W1, W2] = form_in_chart(w, out.chart);
    // chart tangent field (-second, first): X = -B d/du + A d/dv for A du + B dv
    FieldElem inv = s.coords[static_cast<size_t>(ch.one)].inv();
    FieldElem c1 = s.coords[static_cast<size_t>(ch.c1)] * inv;
    FieldElem c2 = s.coords[static_cast<size_t>(ch.c2)] * inv;
    MPoly U = -shift_var(shift_var(W2, ch.v1, "u", c1), ch.v2, "v", c2);
    MPoly V = shift_var(shift_var(W1, ch.v1, "u", c1), ch.v2, "v", c2);
    long double ref = std::max(coeff_scale(U), coeff_scale(V));
    U = prune_small(U, 1e-10L);
    V = prune_small(V, 1e-10L);
    if (U.is_zero() && V.is_zero()) throw error("nu_tau: vector field vanishes identically");
    int lu = U.is_zero() ? INT32_MAX : U.low_degree();
    int lv = V.is_zero() ? INT32_MAX : V.low_degree();
    out.nu = std::min(lu, lv);
    if (out.nu < 1) throw internal_error("nu_tau: vanishing order 0 at a singular point");
    MPoly u = MPoly::variable("u", U.kind(), U.quad_D());
    MPoly v = MPoly::variable("v", U.kind(), U.quad_D());
    int cap = std::max(w.degree, out.nu);
    for (int k = 1; k <= cap; ++k) {
        MPoly tk = trunc_total(U, k) * v - trunc_total(V, k) * u;
        bool zero = U.kind() == FieldKind::complex_approx
                        ? numerically_zero(tk, ref, 1e-8L)
                        : tk.is_zero();
        if (!zero) {
            out.tau = k;
            return out;
        }
    }
    throw error("nu_tau: jet stays radial beyond the degree bound (degenerate input)");
}

FieldElem cs_index(const HomForm& w, const MPoly& line, const ProjPoint& s) {
    if (line.degree() != 1) throw error("cs_index: not a line");
    if (!is_invariant_curve(w, line)) throw error("cs_index: line is not invariant");
    bool exact = w.a.kind() != FieldKind::complex_approx && line.kind() != FieldKind::complex_approx &&
                 s.exact();
    FieldElem lv = eval_at(line.with_kind(exact ? line.kind() : FieldKind::complex_approx,
                                          line.quad_D()),
                           s);
    long double lscale = coeff_scale(line);
    if (exact ? !lv.is_zero() : std::abs(lv.to_complex()) > 1e-8L * lscale)
        throw error("cs_index: point is not on the line");

    int one = pick_chart(s);
    Chart ch = chart_info(one);
    auto [W1, W2] = form_in_chart(w, one);
    FieldElem inv = s.coords[static_cast<size_t>(ch.one)].inv();
    FieldElem c1 = s.coords[static_cast<size_t>(ch.c1)] * inv;
    FieldElem c2 = s.coords[static_cast<size_t>(ch.c2)] * inv;
    MPoly P1 = shift_var(shift_var(W1, ch.v1, "u1", c1), ch.v2, "u2", c2);
    MPoly P2 = shift_var(shift_var(W2, ch.v1, "u1", c1), ch.v2, "u2", c2);
    // the line in recentered chart coordinates: alpha*u1 + beta*u2
    MPoly lc = in_chart(line, one);
    MPoly lrec = shift_var(shift_var(lc, ch.v1, "u1", c1), ch.v2, "u2", c2);
    if (!exact) {
        P1 = P1.with_kind(FieldKind::complex_approx, 0);
        P2 = P2.with_kind(FieldKind::complex_approx, 0);
        lrec = prune_small(lrec.with_kind(FieldKind::complex_approx, 0), 1e-8L);
    }
    MPoly::Exp e1(lrec.vars().size(), 0), e2(lrec.vars().size(), 0);
    int i1 = lrec.var_index("u1"), i2 = lrec.var_index("u2");
    FieldElem alpha(0), beta(0);
    if (i1 >= 0) { e1[static_cast<size_t>(i1)] = 1; alpha = lrec.coeff_of(e1); }
    if (i2 >= 0) { e2[static_cast<size_t>(i2)] = 1; beta = lrec.coeff_of(e2); }

    MPoly u = MPoly::variable("u", P1.kind(), P1.quad_D());
    MPoly v = MPoly::variable("v", P1.kind(), P1.quad_D());
    bool use_beta = exact ? !beta.is_zero()
                          : std::abs(beta.to_complex()) >= std::abs(alpha.to_complex());
    MPoly P, Q;
    if (use_beta) {
        // v = alpha*u1 + beta*u2, u = u1
        MPoly sub2 = (v - u.scaled(alpha)).scaled(beta.inv());
        auto subs = [&](const MPoly& p) {
            return p.substitute("u1", u.with_kind(p.kind(), p.quad_D()))
                .substitute("u2", sub2.with_kind(p.kind(), p.quad_D()));
        };
        MPoly p1 = subs(P1), p2 = subs(P2);
        P = p1 - p2.scaled(alpha / beta);
        Q = p2.scaled(beta.inv());
    } else {
        // v = alpha*u1, u = u2
        MPoly sub1 = v.scaled(alpha.inv());
        auto subs = [&](const MPoly& p) {
            return p.substitute("u1", sub1.with_kind(p.kind(), p.quad_D()))
                .substitute("u2", u.with_kind(p.kind(), p.quad_D()));
        };
        P = subs(P2);
        Q = subs(P1).scaled(alpha.inv());
    }

    // P = v * abar exactly (that is what invariance of the line means here)
    MPoly abar;
    if (P.is_zero()) {
        abar = P;
    } else if (P.kind() != FieldKind::complex_approx) {
        auto q = try_divide(P, v.with_kind(P.kind(), P.quad_D()));
        if (!q) throw internal_error("cs_index: line factor missing from the du coefficient");
        abar = *q;
    } else {
        auto dv = divide_by_linear(P, v.with_kind(FieldKind::complex_approx, 0));
        if (coeff_scale(dv.remainder) > 1e-7L * coeff_scale(P))
            throw internal_error("cs_index: line factor missing from the du coefficient");
        abar = dv.quotient;
    }

    MPoly zero = MPoly::constant(FieldElem(0)).with_kind(P1.kind(), P1.quad_D());
    MPoly anum = abar.is_zero() ? abar : abar.substitute("v", zero);
    MPoly bden = Q.substitute("v", zero);
    MPoly bres = P1.kind() == FieldKind::complex_approx ? prune_small(bden, 1e-10L) : bden;
    if (bres.is_zero()) throw error("cs_index: residue undefined (degenerate dv coefficient)");
    std::vector<MPoly> bc = bres.coeffs_in("u");
    std::vector<MPoly> ac = anum.is_zero() ? std::vector<MPoly>{} : anum.coeffs_in("u");
    auto cval = [](const std::vector<MPoly>& cs, size_t k) {
        return k < cs.size() ? cs[k].constant_value() : FieldElem(0);
    };
    size_t m = 0;
    while (m < bc.size() && cval(bc, m).is_zero()) ++m;
    if (m >= bc.size()) throw error("cs_index: residue undefined");
    if (m == 0) return FieldElem(0); // no pole, index vanishes
    // invert the unit series of b to order m-1
    std::vector<FieldElem> d(m, FieldElem(0));
    FieldElem c0 = cval(bc, m);
    d[0] = c0.inv();
    for (size_t j = 1; j < m; ++j) {
        FieldElem acc(0);
        for (size_t i = 1; i <= j; ++i) acc = acc + cval(bc, m + i) * d[j - i];
        d[j] = -(acc * d[0]);
    }
    FieldElem res(0);
    for (size_t k = 0; k < m; ++k) res = res + cval(ac, k) * d[m - 1 - k];
    return -res;
}

std::vector<MPoly> invariant_lines(const HomForm& w, const SingOptions& opts) {
    std::vector<ProjPoint> pts = singular_points(w, opts);
    std::vector<MPoly> lines;
    auto seen = [&](const MPoly& ell) {
        for (const MPoly& known : lines) {
            if (known.kind() != FieldKind::complex_approx &&
                ell.kind() != FieldKind::complex_approx) {
                if (MPoly::proportional(known, ell)) return true;
            } else {
                auto c = [&](const MPoly& p, const char* v) {
                    MPoly::Exp e(p.vars().size(), 0);
                    int i = p.var_index(v);
                    if (i < 0) return FieldElem(0);
                    e[static_cast<size_t>(i)] = 1;
                    return p.coeff_of(e);
                };
                ProjPoint a{{c(known, "x"), c(known, "y"), c(known, "z")}};
                ProjPoint b{{c(ell, "x"), c(ell, "y"), c(ell, "z")}};
                if (proj_dist(a, b) < 1e-7L) return true;
            }
        }
        return false;
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (proj_dist(pts[i], pts[j]) < 1e-7L) continue;
            MPoly ell = line_through(pts[i], pts[j]);
            if (seen(ell)) continue;
            if (is_invariant_curve(w, ell)) lines.push_back(ell);
        }
    }
    if (static_cast<int>(lines.size()) > 3 * w.degree)
        throw internal_error("more invariant lines than the 3d bound allows");
    std::sort(lines.begin(), lines.end(), [](const MPoly& a, const MPoly& b) {
        return a.str() < b.str();
    });
    return lines;
}

std::vector<MPoly> invariant_linear_factors(const HomForm& w, const MPoly& Phi,
                                            const SingOptions& opts) {
    if (Phi.is_zero()) throw error("linear factor search needs a nonzero polynomial");
    MPoly P = Phi.with_vars(canonical_vars({"x", "y", "z"}));
    if (!P.is_homogeneous()) throw error("linear factor search needs a homogeneous polynomial");
    bool exact = w.a.kind() != FieldKind::complex_approx && P.kind() != FieldKind::complex_approx;
    MPoly Pc = P.with_kind(FieldKind::complex_approx, 0);
    long double pscale = std::max(1.0L, coeff_scale(Pc));

    // Probe lines y = s*x + c*z. A linear factor meets each probe in exactly
    // one point, so pairing roots across two probes spans it, except when both
    // intersections coincide at the meeting point of the probes; three probes
    // in general position close that gap. Probes dividing P are skipped (each
    // such skip certifies the probe itself as a factor of P, but none of the
    // constants below occur as lines of interest).
    struct Probe {
        FieldElem s, c;
        std::vector<ProjPoint> pts;
    };
    static const long pool[9][4] = {{3, 7, 5, 11}, {2, 5, 7, 13}, {5, 9, 2, 7},
                                    {7, 4, 3, 8},  {9, 11, 10, 7}, {4, 3, 6, 5},
                                    {8, 5, 12, 11}, {11, 6, 13, 9}, {1, 2, 1, 3}};
    std::vector<Probe> probes;
    MPoly tvar = MPoly::variable("t", FieldKind::complex_approx, 0);
    for (const auto& row : pool) {
        if (probes.size() == 3) break;
        Probe pr;
        pr.s = FieldElem::rational(row[0], row[1]);
        pr.c = FieldElem::rational(row[2], row[3]);
        if (probes.size() == 2) {
            // the third probe must miss the first two probes' intersection
            FieldElem x12 = (probes[1].c - probes[0].c) * (probes[0].s - probes[1].s).inv();
            FieldElem y12 = probes[0].s * x12 + probes[0].c;
            if ((y12 - pr.s * x12 - pr.c).is_zero()) continue;
        }
        MPoly r = Pc.substitute("z", MPoly::constant(FieldElem::complex(Cplx(1))))
                      .substitute("y", tvar.scaled(FieldElem::complex(pr.s.to_complex())) +
                                           MPoly::constant(FieldElem::complex(pr.c.to_complex())))
                      .substitute("x", tvar)
                      .drop_unused_vars();
        if (r.is_zero() || coeff_scale(r) <= 1e-12L * pscale) continue; // probe divides P
        if (!r.is_constant())
            for (Cplx root : poly_roots(r.with_vars({"t"}), "t"))
                pr.pts.push_back(ProjPoint::numeric(root, pr.s.to_complex() * root + pr.c.to_complex(),
                                                    Cplx(1)));
        // factors through [1 : s : 0] never meet the affine parametrization
        bool at_inf;
        ProjPoint inf = ProjPoint::numeric(Cplx(1), pr.s.to_complex(), Cplx(0));
        if (exact) {
            at_inf = eval_at(P, ProjPoint{{FieldElem(1), pr.s, FieldElem(0)}}).is_zero();
        } else {
            at_inf = std::abs(eval_at(Pc, inf).to_complex()) <= 1e-8L * pscale;
        }
        if (at_inf) pr.pts.push_back(inf);
        probes.push_back(std::move(pr));
    }
    if (probes.size() < 3) throw internal_error("probe pool exhausted during factor search");

    std::vector<MPoly> lines;
    auto seen = [&](const MPoly& ell) {
        for (const MPoly& known : lines) {
            if (known.kind() != FieldKind::complex_approx &&
                ell.kind() != FieldKind::complex_approx) {
                if (MPoly::proportional(known, ell)) return true;
            } else {
                auto c = [&](const MPoly& p, const char* v) {
                    MPoly::Exp e(p.vars().size(), 0);
                    int i = p.var_index(v);
                    if (i < 0) return FieldElem(0);
                    e[static_cast<size_t>(i)] = 1;
                    return p.coeff_of(e);
                };
                ProjPoint a{{c(known, "x"), c(known, "y"), c(known, "z")}};
                ProjPoint b{{c(ell, "x"), c(ell, "y"), c(ell, "z")}};
                if (proj_dist(a, b) < 1e-7L) return true;
            }
        }
        return false;
    };
    auto consider = [&](const ProjPoint& r1, const ProjPoint& r2) {
        if (proj_dist(r1, r2) < 1e-7L) return;
        MPoly elln = line_through(r1, r2);
        if (seen(elln)) return;
        if (exact) {
            // propose a rational upgrade; exact division is the judge
            std::array<std::optional<FieldElem>, 3> cs;
            bool ok = true;
            for (int i = 0; i < 3; ++i) {
                const char* names[3] = {"x", "y", "z"};
                MPoly::Exp e(elln.vars().size(), 0);
                int vi = elln.var_index(names[i]);
                if (vi >= 0) e[static_cast<size_t>(vi)] = 1;
                Cplx cv = vi >= 0 ? elln.coeff_of(e).to_complex() : Cplx(0);
                cs[static_cast<size_t>(i)] = rationalize_value(cv, opts.max_den);
                if (!cs[static_cast<size_t>(i)]) ok = false;
            }
            if (ok) {
                MPoly ellq = MPoly::variable("x", P.kind(), P.quad_D()).scaled(*cs[0]) +
                             MPoly::variable("y", P.kind(), P.quad_D()).scaled(*cs[1]) +
                             MPoly::variable("z", P.kind(), P.quad_D()).scaled(*cs[2]);
                if (!ellq.is_zero() && try_divide(P, ellq).has_value() &&
                    is_invariant_curve(w, ellq)) {
                    lines.push_back(ellq.monic());
                    return;
                }
            }
        }
        if (valuation_along_linear_numeric(Pc, elln, 1e-9L) >= 1 &&
            is_invariant_curve(w, elln))
            lines.push_back(elln);
    };
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            for (const ProjPoint& r1 : probes[i].pts)
                for (const ProjPoint& r2 : probes[j].pts) consider(r1, r2);
    if (static_cast<int>(lines.size()) > P.degree())
        throw internal_error("more invariant linear factors than the degree allows");
    std::sort(lines.begin(), lines.end(), [](const MPoly& a, const MPoly& b) {
        return a.str() < b.str();
    });
    return lines;
}

bool is_ordinary_point(const MPoly& P, const ProjPoint& s) {
    FieldElem val = eval_at(P.with_kind(s.exact() && P.kind() != FieldKind::complex_approx
                                            ? P.kind()
                                            : FieldKind::complex_approx,
                                        P.quad_D()),
                            s);
    bool exact = s.exact() && P.kind() != FieldKind::complex_approx;
    if (exact ? !val.is_zero() : std::abs(val.to_complex()) > 1e-8L * std::max(1.0L, coeff_scale(P)))
        throw error("is_ordinary_point: point is not on the curve");
    int one = pick_chart(s);
    Chart ch = chart_info(one);
    MPoly Pc = in_chart(exact ? P : P.with_kind(FieldKind::complex_approx, 0), one)
                   .drop_unused_vars()
                   .with_vars(canonical_vars({ch.v1, ch.v2}));
    FieldElem inv = s.coords[static_cast<size_t>(ch.one)].inv();
    std::vector<FieldElem> center;
    for (const auto& vn : Pc.vars())
        center.push_back((vn == ch.v1 ? s.coords[static_cast<size_t>(ch.c1)]
                                      : s.coords[static_cast<size_t>(ch.c2)]) *
                         inv);
    if (!exact)
        for (auto& c : center) c = FieldElem::complex(c.to_complex());
    MPoly cone = tangent_cone_at(Pc, center);
    if (cone.is_constant()) throw internal_error("is_ordinary_point: empty tangent cone");
    if (exact) return is_squarefree(cone);
    // floating path: distinct roots of the binary form, dehomogenized in the
    // second chart variable
    MPoly onep = MPoly::constant(FieldElem(1)).with_kind(cone.kind(), cone.quad_D());
    MPoly bu = cone.vars().size() > 1 ? cone.substitute(cone.vars()[1], onep) : cone;
    std::vector<Cplx> uc;
    for (const auto& c : bu.coeffs_in(bu.vars()[0])) {
        MPoly cc = c.drop_unused_vars();
        uc.push_back(cc.is_zero() ? Cplx(0) : cc.constant_value().to_complex());
    }
    while (!uc.empty() && std::abs(uc.back()) == 0.0L) uc.pop_back();
    int inf_mult = cone.degree() - (static_cast<int>(uc.size()) - 1);
    if (inf_mult > 1) return false;
    if (uc.size() <= 1) return true;
    RootResult<Cplx> rr = roots_univariate<Cplx>(uc);
    for (int m : rr.mults)
        if (m > 1) return false;
    return true;
}

std::vector<SingularityRecord> analyze_singularities(const PreFoliation& pf,
                                                     const SingOptions& opts) {
    const HomForm& w = pf.foliation;
    std::vector<ProjPoint> pts = singular_points(w, opts);
    std::vector<MPoly> lines = invariant_lines(w, opts);
    std::vector<SingularityRecord> out;
    bool exact_curve = !pf.curve.is_zero() && pf.curve.kind() != FieldKind::complex_approx;
    for (const ProjPoint& p : pts) {
        SingularityRecord rec;
        rec.point = p;
        NuTau nt = nu_tau(w, p);
        rec.nu = nt.nu;
        rec.tau = nt.tau;
        rec.chart = nt.chart;
        rec.radial = is_radial(nt);
        rec.radiality_order = rec.radial ? nt.tau - 1 : 0;
        if (!pf.curve.is_zero()) {
            FieldElem cv = eval_at(exact_curve && p.exact()
                                       ? pf.curve
                                       : pf.curve.with_kind(FieldKind::complex_approx, 0),
                                   p);
            rec.on_curve = exact_curve && p.exact()
                               ? cv.is_zero()
                               : std::abs(cv.to_complex()) <=
                                     1e-8L * std::max(1.0L, coeff_scale(pf.curve));
            if (rec.on_curve) rec.ordinary_on_curve = is_ordinary_point(pf.curve, p);
        }
        if (!rec.radial) {
            for (const MPoly& ell : lines) {
                bool on;
                if (ell.kind() != FieldKind::complex_approx && p.exact()) {
                    on = eval_at(ell, p).is_zero();
                } else {
                    FieldElem lv = eval_at(ell.with_kind(FieldKind::complex_approx, 0), p);
                    on = std::abs(lv.to_complex()) <= 1e-8L * coeff_scale(ell);
                }
                if (on) rec.cs_indices.emplace_back(ell, cs_index(w, ell, p));
            }
        }
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace webflat
