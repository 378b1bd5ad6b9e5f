#include "webflat/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <unordered_map>

#include "webflat/errors.hpp"
#include "webflat/polyops.hpp"

namespace webflat {
namespace {

MPoly named(const char* n, const MPoly& like) {
    return MPoly::variable(n, like.kind(), like.quad_D());
}

MPoly const_like(long v, const MPoly& like) {
    return MPoly::constant(FieldElem(v)).with_kind(like.kind(), like.quad_D());
}

MPoly zero_like(const MPoly& like) { return MPoly(like.kind(), like.quad_D(), {}); }

bool exact_kind(const MPoly& f) { return f.kind() != FieldKind::complex_approx; }

// thrown while probing a chart; the caller either retries another chart or
// rewraps into a user-facing error
struct chart_degenerate {
    std::string what;
};

// restriction of a homogeneous polynomial to the chart z = 1
MPoly chart_z(const MPoly& f) {
    return f.substitute("z", const_like(1, f)).drop_unused_vars();
}

// substitute y = p*x - q, the running point of the line the slopes refer to
MPoly on_moving_line(const MPoly& f) {
    MPoly p = named("p", f), q = named("q", f), x = named("x", f);
    return f.substitute("y", p * x - q);
}

// homogenize an affine (x, y) polynomial with z up to its total degree
MPoly homogenize_z(const MPoly& f) {
    int d = f.degree();
    if (d <= 0) return f;
    MPoly z = named("z", f);
    MPoly out = zero_like(f);
    for (int j = 0; j <= d; ++j) out += f.homogeneous_part(j) * z.pow(unsigned(d - j));
    return out;
}

// accept affine (x, y) or homogeneous (x, y, z) curve input
MPoly ensure_projective(const MPoly& P) {
    if (P.var_index("z") >= 0) {
        if (!P.is_homogeneous()) throw error("a curve written with z must be homogeneous");
        return P;
    }
    return homogenize_z(P);
}

// x_i -> sum_j M[i][j] x_j, the same convention as transform_form
MPoly transform_poly(const MPoly& f, const std::array<std::array<FieldElem, 3>, 3>& M) {
    const char* plane[3] = {"x", "y", "z"};
    const char* fresh[3] = {"ux", "uy", "uz"};
    MPoly out = f;
    for (int i = 0; i < 3; ++i) {
        MPoly repl = zero_like(f);
        for (int j = 0; j < 3; ++j)
            repl += MPoly::variable(fresh[j], f.kind(), f.quad_D()).scaled(M[i][j]);
        out = out.substitute(plane[i], repl);
    }
    for (int j = 0; j < 3; ++j)
        out = out.substitute(fresh[j], MPoly::variable(plane[j], f.kind(), f.quad_D()));
    return out.drop_unused_vars().with_vars(canonical_vars({"x", "y", "z"}));
}

FieldElem det3(const std::array<std::array<FieldElem, 3>, 3>& M) {
    return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
           M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
           M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

std::string matrix_label(const std::array<std::array<FieldElem, 3>, 3>& M) {
    std::string s = "chart[";
    for (int i = 0; i < 3; ++i) {
        if (i) s += ";";
        for (int j = 0; j < 3; ++j) {
            if (j) s += ",";
            s += M[i][j].str();
        }
    }
    return s + "]";
}

ImplicitWeb assemble(const MPoly& curve, const HomForm& w, int co_degree, int total,
                     std::string chart) {
    auto [A, B] = dehomogenize(w);
    MPoly curve_factor = const_like(1, A);
    if (co_degree > 0) {
        MPoly caff = chart_z(curve);
        if (caff.degree() < co_degree)
            throw chart_degenerate{"curve contains this chart's line at infinity"};
        curve_factor = on_moving_line(caff);
        if (curve_factor.deg_in("x") != co_degree)
            throw chart_degenerate{"curve factor lost slope degree"};
    }
    MPoly slope = on_moving_line(A) + named("p", A) * on_moving_line(B);
    if (slope.deg_in("x") != w.degree)
        throw chart_degenerate{"slope equation lost degree"};
    MPoly poly = curve_factor * slope;
    if (exact_kind(poly)) {
        // a repeated slope factor survives every specialization that keeps the
        // x-degree, so one squarefree sample certifies the whole polynomial;
        // the full gcd only runs when every sample lands on the discriminant
        bool certified = false;
        std::mt19937_64 rng(0x51f5c9a2b44dULL);
        std::uniform_int_distribution<long> pick(-9973, 9973);
        for (int attempt = 0; attempt < 6 && !certified; ++attempt) {
            MPoly sp = poly.substitute("p", const_like(pick(rng), poly))
                           .substitute("q", const_like(pick(rng), poly));
            if (sp.deg_in("x") != poly.deg_in("x")) continue;
            certified = poly_gcd(sp, sp.derivative("x")).deg_in("x") == 0;
        }
        if (!certified) {
            MPoly g = poly_gcd(poly, poly.derivative("x"));
            if (g.deg_in("x") > 0)
                throw error("dual web polynomial is not squarefree in the slope variable");
        }
    }
    poly = poly.drop_unused_vars().with_vars(canonical_vars({"x", "p", "q"}));
    return ImplicitWeb{std::move(poly), total, std::move(curve_factor), std::move(slope),
                       std::move(chart)};
}

ImplicitWeb assemble_chart(const PreFoliation& pf,
                           const std::array<std::array<FieldElem, 3>, 3>& M) {
    HomForm w2 = transform_form(pf.foliation, M);
    MPoly c2 = pf.co_degree > 0 ? transform_poly(pf.curve, M) : pf.curve;
    return assemble(c2, w2, pf.co_degree, pf.total_degree, matrix_label(M));
}

void require_web(const PreFoliation& pf) {
    if (pf.foliation.degree == 0)
        throw error("the foliation part is a pencil of lines; its dual is a point, not a web");
}

// Sylvester determinant by minor expansion with memoization on column masks.
// Division-free, so it works for floating coefficients where the fraction-free
// elimination behind resultant() cannot.
MPoly sylvester_det_numeric(const MPoly& f, const MPoly& g, const std::string& var) {
    int df = f.deg_in(var), dg = g.deg_in(var);
    if (df < 1) throw internal_error("numeric resultant: first argument is constant in " + var);
    int n = df + dg;
    if (n > 14) throw error("numeric web discriminant is limited to low degrees");
    auto fc = f.coeffs_in(var);
    auto gc = g.coeffs_in(var);
    std::vector<std::vector<MPoly>> rows(size_t(n), std::vector<MPoly>(size_t(n), zero_like(f)));
    for (int r = 0; r < dg; ++r)
        for (int j = 0; j <= df; ++j) rows[size_t(r)][size_t(r + j)] = fc[size_t(df - j)];
    for (int r = 0; r < df; ++r)
        for (int j = 0; j <= dg; ++j) rows[size_t(dg + r)][size_t(r + j)] = gc[size_t(dg - j)];
    std::unordered_map<uint32_t, MPoly> memo;
    std::function<MPoly(int, uint32_t)> minor = [&](int r, uint32_t cols) -> MPoly {
        if (r == n) return const_like(1, f);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        MPoly acc = zero_like(f);
        int sign = 1;
        for (int c = 0; c < n; ++c) {
            if (!(cols & (uint32_t(1) << c))) continue;
            if (!rows[size_t(r)][size_t(c)].is_zero()) {
                MPoly term = rows[size_t(r)][size_t(c)] * minor(r + 1, cols & ~(uint32_t(1) << c));
                acc += sign > 0 ? term : -term;
            }
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return minor(0, (uint32_t(1) << n) - 1);
}

MPoly res_any(const MPoly& f, const MPoly& g, const std::string& var) {
    if (exact_kind(f) && exact_kind(g)) return resultant(f, g, var);
    return sylvester_det_numeric(f, g, var);
}

bool is_infinity_pencil(const ProjPoint& s) {
    ProjPoint n = s.normalized();
    if (n.exact()) return n.coords[2].is_zero() && n.coords[0].is_zero();
    auto a = n.approx();
    long double sc = std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
    return std::abs(a[2]) <= 1e-7L * sc && std::abs(a[0]) <= 1e-7L * sc;
}

MPoly strip_linear_numeric(MPoly f, const MPoly& ell, int times) {
    MPoly ec = exact_kind(ell) ? ell.with_kind(FieldKind::complex_approx, 0) : ell;
    for (int i = 0; i < times; ++i)
        f = prune_small(divide_by_linear(f, ec).quotient, 1e-12L);
    return f;
}

// strip the pencil of s out of R to its full power; exact points keep R
// exact, floating points push R into the complex kind
void strip_point_dual(MPoly& R, const ProjPoint& s,
                      std::vector<std::pair<MPoly, int>>* record) {
    MPoly ell = dual_line(s);
    int m = 0;
    if (exact_kind(R) && exact_kind(ell)) {
        m = valuation_along(R, ell);
        for (int i = 0; i < m; ++i) R = *try_divide(R, ell);
    } else {
        if (exact_kind(R)) R = R.with_kind(FieldKind::complex_approx, 0);
        m = valuation_along_linear_numeric(R, ell, 1e-8L);
        R = strip_linear_numeric(R, ell, m);
    }
    if (record) record->emplace_back(std::move(ell), m);
}

bool numeric_proportional(const MPoly& a, const MPoly& b, long double tol) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    std::vector<std::string> names = a.vars();
    for (const std::string& v : b.vars()) names.push_back(v);
    std::vector<std::string> u = canonical_vars(names);
    MPoly av = a.with_vars(u), bv = b.with_vars(u);
    const MPoly::Exp* best = nullptr;
    long double bm = 0;
    for (const auto& [e, c] : bv.terms()) {
        long double m = std::abs(c.to_complex());
        if (m > bm) { bm = m; best = &e; }
    }
    Cplx ac = av.coeff_of(*best).to_complex();
    if (std::abs(ac) <= tol * coeff_scale(av)) return false;
    MPoly diff = av - bv.scaled(FieldElem::complex(ac / bv.coeff_of(*best).to_complex()));
    return coeff_scale(diff) <= tol * std::max(coeff_scale(av), 1e-30L);
}

MPoly tidy(const MPoly& f) {
    if (f.is_zero()) return f;
    return exact_kind(f) ? f.monic() : prune_small(f, 1e-12L);
}

} // namespace

ImplicitWeb legendre_web(const PreFoliation& pf) {
    require_web(pf);
    try {
        return assemble(pf.curve, pf.foliation, pf.co_degree, pf.total_degree, "z");
    } catch (const chart_degenerate&) {
    }
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> entry(-3, 3);
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::array<std::array<FieldElem, 3>, 3> M;
        for (auto& row : M)
            for (auto& e : row) e = FieldElem(entry(rng));
        if (det3(M).is_zero()) continue;
        try {
            return assemble_chart(pf, M);
        } catch (const chart_degenerate&) {
        }
    }
    throw error("no usable chart for the dual web after five attempts");
}

ImplicitWeb legendre_web(const PreFoliation& pf,
                         const std::array<std::array<FieldElem, 3>, 3>& M) {
    require_web(pf);
    if (det3(M).is_zero()) throw error("chart change must be invertible");
    try {
        return assemble_chart(pf, M);
    } catch (const chart_degenerate& cd) {
        throw error("degenerate chart: " + cd.what);
    }
}

MPoly dual_line(const ProjPoint& s_in) {
    ProjPoint s = s_in.normalized();
    if (s.exact()) {
        FieldKind kd = FieldKind::rational;
        long long D = 0;
        for (const FieldElem& c : s.coords)
            if (c.kind() == FieldKind::quadext) { kd = FieldKind::quadext; D = c.quad_D(); }
        MPoly p = MPoly::variable("p", kd, D), q = MPoly::variable("q", kd, D);
        const FieldElem& X = s.coords[0];
        const FieldElem& Y = s.coords[1];
        const FieldElem& Z = s.coords[2];
        if (!Z.is_zero()) // normalized, so Z = 1 and (X, Y) is the affine point
            return q - p.scaled(X) + MPoly::constant(Y).with_kind(kd, D);
        if (X.is_zero())
            throw error("the pencil through [0:1:0] is this chart's line at infinity");
        return p - MPoly::constant(Y * X.inv()).with_kind(kd, D);
    }
    auto a = s.approx();
    long double sc = std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
    MPoly p = MPoly::variable("p", FieldKind::complex_approx, 0);
    MPoly q = MPoly::variable("q", FieldKind::complex_approx, 0);
    auto cc = [](Cplx v) {
        return MPoly::constant(FieldElem::complex(v)).with_kind(FieldKind::complex_approx, 0);
    };
    if (std::abs(a[2]) > 1e-9L * sc)
        return q - p.scaled(FieldElem::complex(a[0] / a[2])) + cc(a[1] / a[2]);
    if (std::abs(a[0]) > 1e-9L * sc) return p - cc(a[1] / a[0]);
    throw error("the pencil through [0:1:0] is this chart's line at infinity");
}

std::vector<ProjPoint> curve_singular_points(const MPoly& P_in, const SingOptions& opts) {
    MPoly P = ensure_projective(P_in);
    int k = P.degree();
    if (k <= 1) return {};
    if (exact_kind(P) && !is_squarefree(P)) throw error("curve must be reduced");
    MPoly px = P.derivative("x"), py = P.derivative("y"), pz = P.derivative("z");
    int nz = int(px.is_zero()) + int(py.is_zero()) + int(pz.is_zero());
    if (nz >= 2) throw internal_error("reduced curve of degree >= 2 in one variable");
    if (nz == 1) {
        // binary form in the other two variables: at least two lines through
        // the point where both of them vanish, so that point and nothing else
        FieldElem e0(0), e1(1);
        if (px.is_zero()) return {ProjPoint::of(e1, e0, e0)};
        if (py.is_zero()) return {ProjPoint::of(e0, e1, e0)};
        return {ProjPoint::of(e0, e0, e1)};
    }
    HomForm grad{px, py, pz, k - 2};
    return singular_points(grad, opts);
}

DualCurveParts dual_curve(const MPoly& P_in, const SingOptions& opts) {
    MPoly P = ensure_projective(P_in);
    if (!exact_kind(P)) throw error("dual curves need exact coefficients");
    int k = P.degree();
    if (k < 2) throw error("the dual of a line is a point, not a curve");
    if (!is_squarefree(P)) throw error("curve must be reduced");
    MPoly caff = chart_z(P);
    if (caff.degree() < k)
        throw error("curve contains the line z = 0; change coordinates first");
    MPoly G = on_moving_line(caff);
    if (G.deg_in("x") != k) throw internal_error("incidence polynomial lost degree");
    DualCurveParts out;
    out.full = discriminant_in(G, "x");
    out.curve = out.full;
    for (const ProjPoint& s : curve_singular_points(P, opts)) {
        if (is_infinity_pencil(s)) continue;
        strip_point_dual(out.curve, s, &out.singular_duals);
    }
    return out;
}

MPoly gauss_image(const HomForm& w, const MPoly& C_in, const SingOptions& opts) {
    MPoly C = ensure_projective(C_in);
    if (!exact_kind(C) || !exact_kind(w.a))
        throw error("tangent images need exact coefficients");
    int k = C.degree();
    if (k < 1) throw error("tangent image needs a curve");
    MPoly caff = chart_z(C);
    if (caff.degree() < k)
        throw error("curve contains the line z = 0; change coordinates first");
    auto [A, B] = dehomogenize(w);
    if (divides(squarefree_part(caff), B))
        throw error("slopes are vertical along the curve in this chart; change coordinates first");
    MPoly Ct = on_moving_line(caff);
    MPoly Ft = on_moving_line(A) + named("p", A) * on_moving_line(B);
    if (Ft.deg_in("x") != w.degree)
        throw error("slope equation degenerates in this chart; change coordinates first");
    MPoly R = resultant(Ct, Ft, "x");
    if (R.is_zero())
        throw error("curve shares a component with the tangency locus");
    // the elimination picks up the whole pencil of every point of the curve
    // that is singular for the foliation: strip those
    for (const ProjPoint& s : singular_points(w, opts)) {
        bool on;
        if (s.exact()) {
            on = eval_at(C, s).is_zero();
        } else {
            FieldElem cv = eval_at(C.with_kind(FieldKind::complex_approx, 0), s);
            on = std::abs(cv.to_complex()) <= 1e-8L * std::max(1.0L, coeff_scale(C));
        }
        if (!on || is_infinity_pencil(s)) continue;
        strip_point_dual(R, s, nullptr);
    }
    return R;
}

MPoly web_discriminant(const ImplicitWeb& W) {
    if (W.degree < 2 || W.poly.deg_in("x") < 2)
        throw error("web discriminant needs at least two slopes");
    return res_any(W.poly, W.poly.derivative("x"), "x");
}

DiscriminantPrediction predict_discriminant(const PreFoliation& pf, const SingOptions& opts) {
    require_web(pf);
    const HomForm& w = pf.foliation;
    bool exact = exact_kind(w.a);
    int k = pf.co_degree;
    DiscriminantPrediction out;

    auto records = analyze_singularities(pf, opts);

    bool invariant = false;
    if (k > 0 && (exact || pf.curve.degree() == 1))
        invariant = is_invariant_curve(w, pf.curve);

    if (exact && pf.convex)
        out.formula = is_convex_reduced(w) ? "convex-reduced" : "convex";
    else if (k > 0 && invariant)
        out.formula = "invariant-curve";
    else
        out.formula = "general";

    std::vector<ProjPoint> used;
    auto add_point = [&](const ProjPoint& s, int expv) {
        for (const ProjPoint& t : used)
            if (proj_dist(s, t) < 1e-7L) return;
        used.push_back(s);
        if (is_infinity_pencil(s)) {
            out.infinite_duals.push_back(s);
            return;
        }
        out.components.push_back({"dual-line-of " + s.normalized().str(), dual_line(s), expv});
    };

    for (const auto& rec : records) {
        bool tangency = rec.tau >= 2;
        bool on_c = k > 0 && rec.on_curve;
        if (!tangency && !on_c) continue;
        int expv = (k == 0 && rec.radial) ? rec.tau - 1 : 0;
        add_point(rec.point, expv);
    }

    if (k > 0) {
        for (const ProjPoint& s : curve_singular_points(pf.curve, opts)) {
            bool near_radial = false;
            for (const auto& rec : records)
                if (rec.radial && proj_dist(s, rec.point) < 1e-7L) { near_radial = true; break; }
            if (!near_radial) out.curve_points_not_radial.push_back(s);
            if (!invariant) add_point(s, 0);
        }
        if (k >= 2) {
            // a union of lines dualizes to points only; nothing is left after
            // stripping the singular pencils
            MPoly dc = dual_curve(pf.curve, opts).curve;
            if (!dc.is_constant()) out.components.push_back({"dual-curve", tidy(dc), 0});
        }
        if (!invariant)
            out.components.push_back({"gauss-image-of curve", tidy(gauss_image(w, pf.curve, opts)), 0});
    }

    // the transverse part of the inflection divisor needs exact elimination;
    // floating inputs leave it out and rely on the pencil components alone
    if (exact) {
        InflectionSplit split = split_inflection(w);
        if (!split.transverse_part.is_constant())
            out.components.push_back({"gauss-image-of inflection-transverse",
                                      tidy(gauss_image(w, squarefree_part(split.transverse_part), opts)),
                                      0});
    }

    std::sort(out.components.begin(), out.components.end(),
              [](const PredictedComponent& a, const PredictedComponent& b) {
                  if (a.label != b.label) return a.label < b.label;
                  return a.poly.str() < b.poly.str();
              });
    return out;
}

DiscriminantReport verify_discriminant(const PreFoliation& pf,
                                       const DiscriminantPrediction& pred,
                                       const SingOptions& opts) {
    ImplicitWeb W = legendre_web(pf);
    if (W.chart != "z")
        throw error("the prediction lives in the chart z = 1 but the dual web needed " +
                    W.chart + "; transform the input first");
    DiscriminantReport rep;
    rep.resultant = web_discriminant(W);
    bool exact = exact_kind(W.poly);
    rep.numeric = !exact;
    long double rtol = std::max(opts.tol, 1e-8L);
    bool missing = false, wrong = false, unchecked = false;

    if (exact) {
        rep.computed = discriminant_in(W.poly, "x");
        MPoly sqc = squarefree_part(rep.computed);
        MPoly residual = sqc;
        for (const auto& comp : pred.components) {
            if (comp.poly.is_constant()) throw error("constant predicted component");
            ComponentCheck c{comp.label, comp.poly, 0, comp.expected_valuation, ""};
            MPoly sq = squarefree_part(comp.poly);
            bool div = divides(sq, sqc);
            c.multiplicity = div ? valuation_along(rep.computed, sq) : 0;
            if (!div) {
                c.verdict = "missing";
                missing = true;
            } else if (comp.expected_valuation > 0 &&
                       c.multiplicity != comp.expected_valuation) {
                c.verdict = "wrong multiplicity";
                wrong = true;
            } else {
                c.verdict = "divides";
            }
            if (div) {
                MPoly g = poly_gcd(residual, sq);
                if (!g.is_constant()) residual = *try_divide(residual, g);
            }
            rep.components.push_back(std::move(c));
        }
        rep.residual = residual;
        rep.verdict = missing || wrong          ? "missing components"
                      : residual.is_constant() ? "match"
                                                : "extraneous residual";
        return rep;
    }

    // floating input: the leading coefficient cannot be divided out of the
    // resultant, so multiplicities are corrected by its own valuations and the
    // residual is compared against what remains of it
    rep.computed = rep.resultant;
    MPoly L = W.poly.lc_in("x").drop_unused_vars();
    MPoly residual = rep.resultant;
    MPoly lc_rest = L;
    for (const auto& comp : pred.components) {
        ComponentCheck c{comp.label, comp.poly, 0, comp.expected_valuation, ""};
        if (comp.poly.degree() != 1) {
            c.verdict = "unchecked";
            unchecked = true;
            rep.components.push_back(std::move(c));
            continue;
        }
        MPoly ell = exact_kind(comp.poly) ? comp.poly.with_kind(FieldKind::complex_approx, 0)
                                          : comp.poly;
        int vR = valuation_along_linear_numeric(residual, ell, rtol);
        int vL = lc_rest.is_constant() ? 0 : valuation_along_linear_numeric(lc_rest, ell, rtol);
        c.multiplicity = vR - vL;
        if (c.multiplicity < 1) {
            c.verdict = "missing";
            missing = true;
        } else if (comp.expected_valuation > 0 && c.multiplicity != comp.expected_valuation) {
            c.verdict = "wrong multiplicity";
            wrong = true;
        } else {
            c.verdict = "divides";
        }
        residual = strip_linear_numeric(residual, ell, vR);
        lc_rest = strip_linear_numeric(lc_rest, ell, vL);
        rep.components.push_back(std::move(c));
    }
    rep.residual = prune_small(residual, 1e-10L);
    if (missing || wrong)
        rep.verdict = "missing components";
    else if (unchecked)
        rep.verdict = "inconclusive";
    else if (numeric_proportional(rep.residual, lc_rest, 1e-7L))
        rep.verdict = "match";
    else
        rep.verdict = "extraneous residual";
    return rep;
}

DiscriminantReport verify_discriminant(const PreFoliation& pf, const SingOptions& opts) {
    return verify_discriminant(pf, predict_discriminant(pf, opts), opts);
}

int discriminant_multiplicity(const ImplicitWeb& W, const MPoly& component) {
    if (component.is_constant()) throw error("component must be non-constant");
    MPoly R = web_discriminant(W);
    int v = 0;
    if (exact_kind(R) && exact_kind(component)) {
        v = valuation_along(R, component);
    } else {
        if (component.degree() != 1)
            throw error("floating multiplicities are only computed along lines");
        MPoly Rc = exact_kind(R) ? R.with_kind(FieldKind::complex_approx, 0) : R;
        MPoly ec = exact_kind(component) ? component.with_kind(FieldKind::complex_approx, 0)
                                         : component;
        v = valuation_along_linear_numeric(Rc, ec, 1e-8L);
    }
    if (v == 0) throw error("component does not divide the web discriminant");
    return v;
}

} // namespace webflat
