#include "webflat/webcurv.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "webflat/errors.hpp"
#include "webflat/roots.hpp"

namespace webflat {
namespace {

// one monomial of a polynomial in (x, p, q), coefficient lowered to complex
struct TriTerm {
    Cplx c;
    int ex = 0, ep = 0, eq = 0;
};

std::vector<TriTerm> compile3(const MPoly& f) {
    for (const auto& v : f.vars())
        if (v != "x" && v != "p" && v != "q" && f.deg_in(v) > 0)
            throw error("expected a polynomial in x, p, q; found variable " + v);
    int ix = f.var_index("x"), ip = f.var_index("p"), iq = f.var_index("q");
    std::vector<TriTerm> out;
    out.reserve(f.terms().size());
    for (const auto& [e, c] : f.terms())
        out.push_back({c.to_complex(),
                       ix >= 0 ? int(e[size_t(ix)]) : 0,
                       ip >= 0 ? int(e[size_t(ip)]) : 0,
                       iq >= 0 ? int(e[size_t(iq)]) : 0});
    return out;
}

Cplx pw(Cplx b, int e) {
    Cplx r(1);
    while (e-- > 0) r *= b;
    return r;
}

Cplx eval_pq(const std::vector<TriTerm>& ts, Cplx p, Cplx q) {
    Cplx r(0);
    for (const auto& t : ts) r += t.c * pw(p, t.ep) * pw(q, t.eq);
    return r;
}

// coefficients in x after fixing (p, q), plus a magnitude scale for thresholds
struct XEval {
    std::vector<Cplx> coeff;
    long double scale = 0;
};

XEval specialize(const std::vector<TriTerm>& ts, Cplx p, Cplx q) {
    int dx = 0;
    for (const auto& t : ts) dx = std::max(dx, t.ex);
    XEval out;
    out.coeff.assign(size_t(dx) + 1, Cplx(0));
    long double ap = std::max(1.0L, std::abs(p)), aq = std::max(1.0L, std::abs(q));
    for (const auto& t : ts) {
        out.coeff[size_t(t.ex)] += t.c * pw(p, t.ep) * pw(q, t.eq);
        out.scale += std::abs(t.c) * std::pow(ap, t.ep) * std::pow(aq, t.eq);
    }
    return out;
}

Cplx horner(const std::vector<Cplx>& c, Cplx x) {
    Cplx r(0);
    for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
}

CJet eval_jet(const std::vector<TriTerm>& ts, const CJet& X, const CJet& P, const CJet& Q) {
    int mx = 0, mp = 0, mq = 0;
    for (const auto& t : ts) {
        mx = std::max(mx, t.ex);
        mp = std::max(mp, t.ep);
        mq = std::max(mq, t.eq);
    }
    auto powers = [](const CJet& b, int m) {
        std::vector<CJet> out(size_t(m) + 1, CJet::cst(Cplx(1)));
        for (int k = 1; k <= m; ++k) out[size_t(k)] = out[size_t(k) - 1] * b;
        return out;
    };
    std::vector<CJet> xp = powers(X, mx), pp = powers(P, mp), qp = powers(Q, mq);
    CJet acc = CJet::cst(Cplx(0));
    for (const auto& t : ts)
        acc = acc + (xp[size_t(t.ex)] * pp[size_t(t.ep)] * qp[size_t(t.eq)]).scaled(t.c);
    return acc;
}

long double jet_mag(const CJet& j) {
    return std::max({std::abs(j.v), std::abs(j.dp), std::abs(j.dq), std::abs(j.dpp),
                     std::abs(j.dpq), std::abs(j.dqq)});
}

struct SlopeData {
    std::vector<CJet> jets;
    long double min_sep = 0, min_fx = 0, spread = 0, scale = 1;
};

SlopeData solve_slopes(const MPoly& web, Cplx p, Cplx q, const CurvOptions& opts) {
    auto ts = compile3(web);
    auto dts = compile3(web.derivative("x"));
    XEval f = specialize(ts, p, q);
    int d = int(f.coeff.size()) - 1;
    if (d < 1) throw error("web polynomial has no slope variable");
    if (std::abs(f.coeff.back()) <= 1e-12L * std::max(f.scale, 1.0L))
        throw error("slope equation drops degree at this point");
    RootOpts ro;
    ro.cluster_sep = std::min(1e-10L, opts.sep_tol / 100);
    auto rr = roots_univariate(f.coeff, ro);
    if (!rr.converged) throw error("slope roots did not converge");
    if (int(rr.roots.size()) != d)
        throw error("repeated slopes: the point lies on the web discriminant");
    std::sort(rr.roots.begin(), rr.roots.end(), [](Cplx a, Cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    // conditioning is judged per root: a branch escaping to large |x| must not
    // inflate the thresholds applied to the well-behaved finite branches
    auto root_scale = [&](Cplx r) {
        long double m = std::max(1.0L, std::abs(r)), s = 0, pw = 1;
        for (size_t k = 0; k < f.coeff.size(); ++k, pw *= m) s += std::abs(f.coeff[k]) * pw;
        return std::max(s, 1.0L);
    };

    SlopeData out;
    out.scale = root_scale(rr.roots.back());
    for (Cplx r : rr.roots) out.scale = std::max(out.scale, root_scale(r));
    out.min_sep = 1e300L;
    for (size_t i = 0; i < rr.roots.size(); ++i)
        for (size_t j = i + 1; j < rr.roots.size(); ++j) {
            long double sep = std::abs(rr.roots[i] - rr.roots[j]);
            out.min_sep = std::min(out.min_sep, sep);
            out.spread = std::max(out.spread, sep);
        }

    XEval fd = specialize(dts, p, q);
    out.min_fx = 1e300L;
    CJet P = CJet::var_p(p), Q = CJet::var_q(q);
    for (Cplx r : rr.roots) {
        long double rs = root_scale(r);
        Cplx fx = horner(fd.coeff, r);
        out.min_fx = std::min(out.min_fx, std::abs(fx));
        if (std::abs(fx) <= opts.fx_tol * rs)
            throw error("slope derivative too small: the point is too close to the discriminant");
        // two Newton steps in jet space land on the exact truncated jet; the
        // residual check below confirms it
        CJet X = CJet::cst(r);
        for (int it = 0; it < 2; ++it) X = X - eval_jet(ts, X, P, Q) / eval_jet(dts, X, P, Q);
        // the derivative slots of the residual scale with the jet magnitudes,
        // so bound each order against its own natural size
        CJet res = eval_jet(ts, X, P, Q);
        long double j1 = 1 + std::max(std::abs(X.dp), std::abs(X.dq));
        long double j2 = 1 + std::max({std::abs(X.dpp), std::abs(X.dpq), std::abs(X.dqq)});
        bool ok = std::abs(res.v) <= opts.resid_tol * rs &&
                  std::max(std::abs(res.dp), std::abs(res.dq)) <= opts.resid_tol * rs * j1 &&
                  std::max({std::abs(res.dpp), std::abs(res.dpq), std::abs(res.dqq)}) <=
                      opts.resid_tol * rs * (j1 * j1 + j2);
        if (!ok) throw error("slope jet failed the re-substitution check");
        out.jets.push_back(X);
    }
    return out;
}

long double jet1_mag(const Jet1<Cplx>& j) {
    return std::max({std::abs(j.v), std::abs(j.dp), std::abs(j.dq)});
}

// curvature of one triple plus the magnitude of the eta coefficients it went
// through; K comes out of a cancellation of terms of that magnitude, so the
// rounding noise left in it scales with mag
Cplx curvature3_mag(const CJet& f1, const CJet& f2, const CJet& f3, long double& mag);

// sum of curvature3 over all 3-subsets of the given slope indices
Cplx curvature_over(const std::vector<CJet>& jets, const std::vector<int>& idx,
                    long double& mag) {
    Cplx k(0);
    for (size_t a = 0; a + 2 < idx.size(); ++a)
        for (size_t b = a + 1; b + 1 < idx.size(); ++b)
            for (size_t c = b + 1; c < idx.size(); ++c)
                k += curvature3_mag(jets[size_t(idx[a])], jets[size_t(idx[b])],
                                    jets[size_t(idx[c])], mag);
    return k;
}

} // namespace

std::vector<CJet> slope_jets(const ImplicitWeb& W, Cplx p, Cplx q, const CurvOptions& opts) {
    return solve_slopes(W.poly, p, q, opts).jets;
}

namespace {

Cplx curvature3_mag(const CJet& f1, const CJet& f2, const CJet& f3, long double& mag) {
    const CJet* f[3] = {&f1, &f2, &f3};
    long double vs = std::max({std::abs(f1.v), std::abs(f2.v), std::abs(f3.v), 1.0L});
    long double msep = vs;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            long double d = std::abs(f[i]->v - f[j]->v);
            if (d <= 1e-12L * vs) throw error("coincident slopes in a curvature triple");
            msep = std::min(msep, d);
        }

    // leaf forms omega_i = g_i (dq - f_i dp) with g_i the cyclic slope
    // differences, so that the three forms sum to zero; eta = h1 dp + h2 dq
    // solves d(omega_i) = eta ^ omega_i, a linear system of which any two
    // equations determine (h1, h2) and the third must close
    CJet g[3] = {*f[1] - *f[2], *f[2] - *f[0], *f[0] - *f[1]};
    CJet gf[3];
    for (int i = 0; i < 3; ++i) gf[i] = g[i] * (*f[i]);

    Jet1<Cplx> a11 = g[0].trunc1(), a12 = gf[0].trunc1();
    Jet1<Cplx> a21 = g[1].trunc1(), a22 = gf[1].trunc1();
    Jet1<Cplx> r1 = g[0].d_p() + gf[0].d_q();
    Jet1<Cplx> r2 = g[1].d_p() + gf[1].d_q();
    Jet1<Cplx> det = a11 * a22 - a12 * a21;
    long double dscale = std::abs(a11.v) * std::abs(a22.v) + std::abs(a12.v) * std::abs(a21.v);
    if (std::abs(det.v) <= 1e-10L * std::max(dscale, 1e-300L))
        throw error("eta solve is ill-conditioned for this triple");
    Jet1<Cplx> h1 = (r1 * a22 - a12 * r2) / det;
    Jet1<Cplx> h2 = (a11 * r2 - r1 * a21) / det;

    Jet1<Cplx> lhs = g[2].trunc1() * h1 + gf[2].trunc1() * h2;
    Jet1<Cplx> rhs = g[2].d_p() + gf[2].d_q();
    long double escale = std::abs(g[2].v) * std::abs(h1.v) + std::abs(gf[2].v) * std::abs(h2.v) +
                         std::abs(rhs.v) + 1e-30L;
    if (std::abs(lhs.v - rhs.v) > 1e-9L * escale)
        throw error("eta system failed to close on the third leaf form");

    // rounding in the eta solve amplifies like the square of the inverse
    // slope separation near a fold of the web, so weight this triple's
    // contribution to the cancellation magnitude accordingly
    long double kappa = (vs / msep) * (vs / msep);
    mag += (jet1_mag(h1) + jet1_mag(h2)) * kappa;
    return h2.dp - h1.dq;
}

} // namespace

Cplx curvature3(const CJet& f1, const CJet& f2, const CJet& f3) {
    long double mag = 0;
    return curvature3_mag(f1, f2, f3, mag);
}

CurvatureSample curvature(const ImplicitWeb& W, Cplx p, Cplx q, const CurvOptions& opts) {
    if (W.degree < 3) throw error("curvature needs a web with at least 3 slopes");
    SlopeData sd = solve_slopes(W.poly, p, q, opts);
    CurvatureSample s;
    s.p = p;
    s.q = q;
    s.min_sep = sd.min_sep;
    s.min_fx = sd.min_fx;
    s.spread = sd.spread;
    long double vs = 1;
    for (const CJet& j : sd.jets) vs = std::max(vs, std::abs(j.v));
    if (sd.min_sep <= opts.sep_tol * vs) return s; // too degenerate to trust, leave invalid
    std::vector<int> all(sd.jets.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = int(i);
    long double mag = 0;
    try {
        s.K = curvature_over(sd.jets, all, mag);
    } catch (const error&) {
        return s;
    }
    s.noise = 1e-16L * mag;
    s.K_scaled = std::abs(s.K) / std::max(sd.spread, 1e-12L);
    s.valid = true;
    return s;
}

Cplx curvature_fd_oracle(const ImplicitWeb& W, Cplx p, Cplx q, long double step) {
    if (W.degree < 3) throw error("curvature needs a web with at least 3 slopes");
    if (!(step > 0)) throw error("step must be positive");
    auto ts = compile3(W.poly);
    auto dts = compile3(W.poly.derivative("x"));
    auto pts = compile3(W.poly.derivative("p"));
    auto qts = compile3(W.poly.derivative("q"));
    const int d = W.degree;

    auto solve_vals = [&](Cplx pp, Cplx qq) {
        XEval f = specialize(ts, pp, qq);
        if (int(f.coeff.size()) - 1 != d || std::abs(f.coeff.back()) <= 1e-12L * std::max(f.scale, 1.0L))
            throw error("slope equation drops degree at this point");
        auto rr = roots_univariate(f.coeff);
        if (!rr.converged || int(rr.roots.size()) != d)
            throw error("stencil crosses the web discriminant");
        return rr.roots;
    };

    auto center = solve_vals(p, q);
    std::sort(center.begin(), center.end(), [](Cplx a, Cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    long double msep = 1e300L;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) msep = std::min(msep, std::abs(center[i] - center[j]));
    if (msep <= 4 * step)
        throw error("step too large this close to the web discriminant");

    // eta coefficients (summed over triples) from slope values and their
    // implicit first derivatives at one stencil point, labels matched to the
    // center roots so differencing tracks the same branches
    auto eta_sums = [&](Cplx pp, Cplx qq) {
        auto rs = solve_vals(pp, qq);
        std::vector<Cplx> x(static_cast<size_t>(d));
        std::vector<bool> used(static_cast<size_t>(d), false);
        for (int ci = 0; ci < d; ++ci) {
            int best = -1;
            long double bd = 1e300L;
            for (int k = 0; k < d; ++k) {
                if (used[size_t(k)]) continue;
                long double dist = std::abs(rs[size_t(k)] - center[size_t(ci)]);
                if (dist < bd) {
                    bd = dist;
                    best = k;
                }
            }
            if (best < 0 || bd > msep / 3)
                throw error("stencil crosses the web discriminant");
            used[size_t(best)] = true;
            x[size_t(ci)] = rs[size_t(best)];
        }
        XEval fx_ = specialize(dts, pp, qq);
        XEval fp_ = specialize(pts, pp, qq);
        XEval fq_ = specialize(qts, pp, qq);
        XEval f_ = specialize(ts, pp, qq);
        std::vector<Cplx> xp(static_cast<size_t>(d)), xq(static_cast<size_t>(d));
        for (int i = 0; i < d; ++i) {
            Cplx fx = horner(fx_.coeff, x[size_t(i)]);
            if (std::abs(fx) <= 1e-10L * std::max(f_.scale, 1.0L))
                throw error("stencil crosses the web discriminant");
            xp[size_t(i)] = -horner(fp_.coeff, x[size_t(i)]) / fx;
            xq[size_t(i)] = -horner(fq_.coeff, x[size_t(i)]) / fx;
        }
        Cplx H1(0), H2(0);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                for (int k = j + 1; k < d; ++k) {
                    int t[3] = {i, j, k};
                    Cplx fv[3], fpv[3], fqv[3];
                    for (int m = 0; m < 3; ++m) {
                        fv[m] = x[size_t(t[m])];
                        fpv[m] = xp[size_t(t[m])];
                        fqv[m] = xq[size_t(t[m])];
                    }
                    Cplx g[3] = {fv[1] - fv[2], fv[2] - fv[0], fv[0] - fv[1]};
                    Cplx gp[3] = {fpv[1] - fpv[2], fpv[2] - fpv[0], fpv[0] - fpv[1]};
                    Cplx gq[3] = {fqv[1] - fqv[2], fqv[2] - fqv[0], fqv[0] - fqv[1]};
                    Cplx rhs[2], a[2][2];
                    for (int m = 0; m < 2; ++m) {
                        rhs[m] = gp[m] + gq[m] * fv[m] + g[m] * fqv[m];
                        a[m][0] = g[m];
                        a[m][1] = g[m] * fv[m];
                    }
                    Cplx det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
                    long double dsc = std::abs(a[0][0]) * std::abs(a[1][1]) +
                                      std::abs(a[0][1]) * std::abs(a[1][0]);
                    if (std::abs(det) <= 1e-12L * std::max(dsc, 1e-300L))
                        throw error("eta solve is ill-conditioned for this triple");
                    H1 += (rhs[0] * a[1][1] - a[0][1] * rhs[1]) / det;
                    H2 += (a[0][0] * rhs[1] - rhs[0] * a[1][0]) / det;
                }
        return std::pair<Cplx, Cplx>(H1, H2);
    };

    (void)eta_sums(p, q); // center of the stencil must be solvable too
    auto ep = eta_sums(p + step, q), em = eta_sums(p - step, q);
    auto fp = eta_sums(p, q + step), fm = eta_sums(p, q - step);
    Cplx h(2 * step);
    return (ep.second - em.second) / h - (fp.first - fm.first) / h;
}

long double decomposition_identity_check(const ImplicitWeb& W, const std::vector<int>& first_group,
                                         Cplx p, Cplx q, const CurvOptions& opts) {
    const int d = W.degree;
    if (d < 4) throw error("the decomposition identity needs a web with at least 4 slopes");
    const int n = int(first_group.size());
    if (n < 2 || n > d - 2)
        throw error("degenerate partition: each side needs at least 2 slopes");
    std::vector<bool> in_a(size_t(d), false);
    for (int i : first_group) {
        if (i < 0 || i >= d) throw error("partition index out of range");
        if (in_a[size_t(i)]) throw error("partition index repeated");
        in_a[size_t(i)] = true;
    }

    SlopeData sd = solve_slopes(W.poly, p, q, opts);
    std::vector<int> A, B, all;
    for (int i = 0; i < d; ++i) {
        all.push_back(i);
        (in_a[size_t(i)] ? A : B).push_back(i);
    }

    long double mag = 0;
    Cplx lhs = curvature_over(sd.jets, all, mag);
    Cplx rhs = curvature_over(sd.jets, A, mag) +
               Cplx((long double)((n - 1) * (n - 2) / 2)) * curvature_over(sd.jets, B, mag);
    for (size_t ai = 0; ai < A.size(); ++ai) {
        std::vector<int> s = B;
        s.push_back(A[ai]);
        rhs -= Cplx((long double)(n - 2)) * curvature_over(sd.jets, s, mag);
        for (size_t aj = ai + 1; aj < A.size(); ++aj) {
            std::vector<int> s2 = s;
            s2.push_back(A[aj]);
            rhs += curvature_over(sd.jets, s2, mag);
        }
    }
    return std::abs(lhs - rhs);
}

HolomorphyProbe holomorphy_probe(const ImplicitWeb& W, const MPoly& component, uint64_t seed,
                                 const CurvOptions& opts, long double pole_threshold) {
    HolomorphyProbe out;
    out.component = component.str();
    if (component.deg_in("x") > 0)
        throw error("discriminant components live in the (p, q) plane");
    discriminant_multiplicity(W, component); // throws when it does not divide

    auto cts = compile3(component);
    auto cp = compile3(component.derivative("p"));
    auto cq = compile3(component.derivative("q"));
    const bool has_q = component.deg_in("q") > 0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<long double> uni(-1.0L, 1.0L);
    auto draw = [&]() { return Cplx(uni(rng), uni(rng)); };

    const long double eps0 = 1e-2L;
    const int J = 12;
    std::vector<long double> kv, fl; // |K| and its rounding floor per step
    bool located = false;
    for (int attempt = 0; attempt < 5 && !located; ++attempt) {
        try {
            // a random point of the component: fix one coordinate, solve for
            // the other along the component
            Cplx p0, q0;
            if (has_q) {
                p0 = draw();
                int deg = 0;
                for (const auto& t : cts) deg = std::max(deg, t.eq);
                std::vector<Cplx> c(size_t(deg) + 1, Cplx(0));
                for (const auto& t : cts) c[size_t(t.eq)] += t.c * pw(p0, t.ep);
                auto rr = roots_univariate(c);
                q0 = rr.roots[rng() % rr.roots.size()];
            } else {
                q0 = draw();
                int deg = 0;
                for (const auto& t : cts) deg = std::max(deg, t.ep);
                std::vector<Cplx> c(size_t(deg) + 1, Cplx(0));
                for (const auto& t : cts) c[size_t(t.ep)] += t.c * pw(q0, t.eq);
                auto rr = roots_univariate(c);
                p0 = rr.roots[rng() % rr.roots.size()];
            }
            Cplx gp = eval_pq(cp, p0, q0), gq = eval_pq(cq, p0, q0);
            long double gn = std::sqrt(std::norm(gp) + std::norm(gq));
            if (gn <= 1e-8L) throw error("component point is singular");
            // the conjugate gradient direction leaves the component as fast
            // as possible, so eps is the geometric distance to first order
            Cplx up = std::conj(gp) / gn, uq = std::conj(gq) / gn;

            std::vector<long double> vals, floors;
            for (int j = 0; j <= J; ++j) {
                long double eps = eps0 * std::pow(0.5L, (long double)j);
                CurvatureSample s = curvature(W, p0 + eps * up, q0 + eps * uq, opts);
                if (!s.valid) throw error("probe sample degenerated");
                vals.push_back(std::abs(s.K));
                floors.push_back(s.noise);
            }
            kv = vals;
            fl = floors;
            located = true;
        } catch (const error&) {
            continue;
        }
    }
    if (!located) {
        out.inconclusive = true;
        return out;
    }

    // keep only the part of |K| that rises above the rounding floor: the eta
    // magnitudes explode toward the component and the noise they leave grows
    // geometrically too, which a log fit would mistake for a pole
    const int m = int(kv.size());
    std::vector<long double> sig(size_t(m), 0);
    out.max_abs_K = 0;
    for (int j = 0; j < m; ++j) {
        if (kv[size_t(j)] > 3 * fl[size_t(j)]) sig[size_t(j)] = kv[size_t(j)];
        out.max_abs_K = std::max(out.max_abs_K, sig[size_t(j)]);
    }
    if (out.max_abs_K < 1e-8L) {
        // numerically zero all the way in: nothing to fit
        out.holomorphic = true;
        out.fit_quality = 1;
        return out;
    }

    // least squares of log(signal) against log(eps) where there is signal
    int used = 0;
    long double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int j = 0; j < m; ++j) {
        if (sig[size_t(j)] <= 0) continue;
        long double lx = std::log(eps0 * std::pow(0.5L, (long double)j));
        long double ly = std::log(sig[size_t(j)]);
        ++used;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    if (used < 6) {
        out.inconclusive = true;
        return out;
    }
    long double vxx = sxx - sx * sx / used, vxy = sxy - sx * sy / used,
                vyy = syy - sy * sy / used;
    long double slope = vxy / vxx;
    out.pole_order = -slope;
    out.fit_quality = vyy > 0 ? (vxy * vxy) / (vxx * vyy) : 1;

    // bounded |K| along the approach means no pole regardless of fit noise
    long double early = 0, late = 0;
    for (int j = 0; j < 4; ++j) early = std::max(early, sig[size_t(j)]);
    for (int j = m - 4; j < m; ++j) late = std::max(late, sig[size_t(j)]);
    if (late <= 2 * early) {
        out.holomorphic = true;
        return out;
    }
    if (out.fit_quality < 0.9L) {
        out.inconclusive = true;
        return out;
    }
    out.holomorphic = out.pole_order < pole_threshold;
    return out;
}

FlatnessVerdict flatness_scan(const ImplicitWeb& W, const std::vector<MPoly>& components,
                              const FlatnessConfig& cfg) {
    if (W.degree < 3) throw error("flatness needs a web with at least 3 slopes");
    FlatnessVerdict out;
    out.samples_requested = cfg.samples;
    out.seed = cfg.seed;

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<long double> uni(-1.0L, 1.0L);
    auto draw_disk = [&]() {
        while (true) {
            long double a = uni(rng), b = uni(rng);
            if (a * a + b * b <= 1) return Cplx(a, b);
        }
    };

    int draws = 0;
    const int cap = 10 * cfg.samples;
    while (out.samples_valid < cfg.samples && draws < cap) {
        ++draws;
        Cplx p = draw_disk(), q = draw_disk();
        try {
            CurvatureSample s = curvature(W, p, q, cfg.curv);
            if (!s.valid) continue;
            // a sample whose rounding floor reaches the tolerance carries no
            // information; treat it like a draw that landed on the discriminant
            if (3 * s.noise >= cfg.tol * std::max(s.spread, 1e-12L)) continue;
            ++out.samples_valid;
            out.max_abs_K = std::max(out.max_abs_K, s.K_scaled);
        } catch (const error&) {
            continue;
        }
    }

    uint64_t pseed = cfg.seed;
    for (const MPoly& comp : components) {
        ++pseed;
        try {
            out.probes.push_back(holomorphy_probe(W, comp, pseed, cfg.curv, cfg.pole_threshold));
        } catch (const error&) {
            HolomorphyProbe hp;
            hp.component = comp.str();
            hp.inconclusive = true;
            out.probes.push_back(hp);
        }
    }

    bool pole = false;
    for (const auto& hp : out.probes)
        if (!hp.holomorphic && !hp.inconclusive) pole = true;

    int quorum = std::min(cfg.samples, std::max(10, cfg.samples / 2));
    if (out.samples_valid < quorum)
        out.verdict = "inconclusive";
    else if (out.max_abs_K >= cfg.tol || pole)
        out.verdict = "non-flat";
    else
        out.verdict = "flat";
    return out;
}

FlatnessVerdict flatness_scan(const PreFoliation& pf, const FlatnessConfig& cfg) {
    ImplicitWeb W = legendre_web(pf);
    std::vector<MPoly> comps;
    if (W.chart == "z") {
        // predicted components live in the standard dual chart; a web that
        // needed a coordinate change cannot be probed against them, and a
        // foliation whose singularities escape exact arithmetic gets a
        // sampling-only scan
        try {
            DiscriminantPrediction pred = predict_discriminant(pf);
            for (const auto& c : pred.components) comps.push_back(c.poly);
        } catch (const error&) {
            comps.clear();
        }
    }
    return flatness_scan(W, comps, cfg);
}

} // namespace webflat
