#include "webflat/foliation.hpp"

#include <algorithm>

#include "webflat/errors.hpp"
#include "webflat/polyops.hpp"
#include "webflat/singularities.hpp"

namespace webflat {

namespace {

MPoly var(const std::string& n, const MPoly& like) {
    return MPoly::variable(n, like.kind(), like.quad_D());
}

void require_homogeneous(const MPoly& p, const char* what) {
    if (!p.is_homogeneous()) throw error(std::string(what) + " is not homogeneous");
}

// division by a bare variable is an exponent shift and works for every
// coefficient kind; floating inputs first shed terms below the noise floor so
// the shift stays structural
std::optional<MPoly> shift_out(const MPoly& f, const std::string& v) {
    MPoly g = f.kind() == FieldKind::complex_approx ? prune_small(f, 1e-12L) : f;
    if (g.is_zero()) return g;
    auto cs = g.coeffs_in(v);
    if (cs.empty() || !cs[0].is_zero()) return std::nullopt;
    cs.erase(cs.begin());
    return MPoly::from_coeffs_in(v, cs);
}

} // namespace

bool euler_check(const MPoly& a, const MPoly& b, const MPoly& c) {
    require_homogeneous(a, "a");
    require_homogeneous(b, "b");
    require_homogeneous(c, "c");
    if (a.is_zero() && b.is_zero() && c.is_zero()) throw error("zero form");
    MPoly s = var("x", a) * a + var("y", b) * b + var("z", c) * c;
    return s.is_zero();
}

HomForm make_form(MPoly a, MPoly b, MPoly c) {
    if (!euler_check(a, b, c)) throw error("Euler condition x*a + y*b + z*c = 0 fails");
    int deg = std::max({a.degree(), b.degree(), c.degree()});
    for (const MPoly* p : {&a, &b, &c})
        if (!p->is_zero() && p->degree() != deg)
            throw error("form coefficients have mixed degrees");
    if (deg < 1) throw error("form coefficients must have positive degree");
    if (a.kind() != FieldKind::complex_approx) {
        MPoly g = poly_gcd(a, poly_gcd(b, c));
        if (!g.is_constant()) throw error("form is not saturated: common factor " + g.str());
    }
    return HomForm{std::move(a), std::move(b), std::move(c), deg - 1};
}

HomForm homogenize_foliation(const MPoly& A, const MPoly& B) {
    if (A.is_zero() || B.is_zero()) throw error("affine form needs both coefficients");
    if (A.kind() != FieldKind::complex_approx && !poly_gcd(A, B).is_constant())
        throw error("affine coefficients are not coprime");
    int d0 = std::max(A.degree(), B.degree());
    MPoly z = var("z", A);
    auto lift = [&](const MPoly& P) {
        // z^d0 * P(x/z, y/z): pad each term with a power of z
        MPoly acc(P.kind(), P.quad_D(), canonical_vars({"x", "y", "z"}));
        MPoly Pz = P.with_vars(canonical_vars({"x", "y", "z"}));
        for (int k = 0; k <= d0; ++k) {
            MPoly part = Pz.homogeneous_part(k);
            if (part.is_zero()) continue;
            acc += part * z.pow(static_cast<unsigned>(d0 - k));
        }
        return acc;
    };
    MPoly at = lift(A), bt = lift(B);
    MPoly a = z * at;
    MPoly b = z * bt;
    // c vanishes identically for the radial pencil; saturation then strips z
    MPoly c = -(var("x", at) * at + var("y", bt) * bt);
    MPoly g = poly_gcd(a, poly_gcd(b, c));
    if (!g.is_constant()) {
        a = *try_divide(a, g);
        b = *try_divide(b, g);
        c = *try_divide(c, g);
    }
    return make_form(std::move(a), std::move(b), std::move(c));
}

std::pair<MPoly, MPoly> dehomogenize(const HomForm& w) {
    MPoly one = MPoly::constant(FieldElem(1)).with_kind(w.a.kind(), w.a.quad_D());
    return {w.a.substitute("z", one).drop_unused_vars().with_vars(canonical_vars({"x", "y"})),
            w.b.substitute("z", one).drop_unused_vars().with_vars(canonical_vars({"x", "y"}))};
}

HomVectorField vector_field_from_form(const HomForm& w) {
    // set z = 0 in a: the Euler relation at z = 0 forces y | a(x,y,0), and
    // G := -a(x,y,0)/y solves the first relation there. The other two follow
    // by exact division by z.
    MPoly zero = MPoly::constant(FieldElem(0)).with_kind(w.a.kind(), w.a.quad_D());
    MPoly a0 = w.a.substitute("z", zero);
    MPoly x = var("x", w.a), y = var("y", w.a), z = var("z", w.a);
    MPoly G;
    if (a0.is_zero()) {
        G = zero.with_vars(w.a.vars());
    } else {
        auto g = shift_out(a0, "y");
        if (!g) throw internal_error("vector field: y does not divide a(x,y,0)");
        G = -*g;
    }
    auto F = shift_out(w.a + y * G, "z");
    if (!F) throw internal_error("vector field: z does not divide a + y*G");
    auto E = shift_out(x * G - w.b, "z");
    if (!E) throw internal_error("vector field: z does not divide x*G - b");
    HomVectorField Z{*E, *F, G, w.degree};
    // re-derive the form from Z and compare
    MPoly da = z * Z.F - y * Z.G - w.a;
    MPoly db = x * Z.G - z * Z.E - w.b;
    MPoly dc = y * Z.E - x * Z.F - w.c;
    if (w.a.kind() == FieldKind::complex_approx) {
        long double s = std::max(
            {coeff_scale(w.a), coeff_scale(w.b), coeff_scale(w.c), 1.0L});
        if (coeff_scale(da) > 1e-9L * s || coeff_scale(db) > 1e-9L * s ||
            coeff_scale(dc) > 1e-9L * s)
            throw internal_error("vector field does not reproduce the form");
    } else if (!da.is_zero() || !db.is_zero() || !dc.is_zero()) {
        throw internal_error("vector field does not reproduce the form");
    }
    return Z;
}

MPoly z_contract(const HomVectorField& Z, const MPoly& P) {
    MPoly Q = P.with_vars(canonical_vars({"x", "y", "z"}));
    return Z.E * Q.derivative("x") + Z.F * Q.derivative("y") + Z.G * Q.derivative("z");
}

MPoly inflection_divisor(const HomForm& w) {
    if (w.degree < 1) throw error("pencils have no inflection divisor");
    return inflection_divisor(w, vector_field_from_form(w));
}

MPoly inflection_divisor(const HomForm& w, const HomVectorField& Z) {
    MPoly x = var("x", w.a), y = var("y", w.a), z = var("z", w.a);
    MPoly ZE = z_contract(Z, Z.E), ZF = z_contract(Z, Z.F), ZG = z_contract(Z, Z.G);
    // det [[x, E, Z(E)], [y, F, Z(F)], [z, G, Z(G)]]
    MPoly det = x * (Z.F * ZG - Z.G * ZF) - Z.E * (y * ZG - z * ZF) +
                ZE * (y * Z.G - z * Z.F);
    if (det.is_zero()) throw error("inflection determinant vanishes identically");
    if (det.degree() != 3 * w.degree)
        throw internal_error("inflection divisor has degree " + std::to_string(det.degree()) +
                             ", expected " + std::to_string(3 * w.degree));
    return det;
}

bool is_invariant_curve(const HomForm& w, const MPoly& P, long double tol) {
    if (P.is_zero()) throw error("invariance test needs a nonzero curve");
    bool exact = w.a.kind() != FieldKind::complex_approx && P.kind() != FieldKind::complex_approx;
    HomVectorField Z = vector_field_from_form(w);
    MPoly ZP = z_contract(Z, exact ? P : P.with_kind(FieldKind::complex_approx, 0));
    if (ZP.is_zero()) return true;
    if (exact) return try_divide(ZP, ZP.kind() == P.kind() && ZP.quad_D() == P.quad_D()
                                          ? P
                                          : P.with_kind(ZP.kind(), ZP.quad_D()))
                   .has_value();
    if (P.degree() != 1)
        throw error("numeric invariance test supports lines only");
    auto div = divide_by_linear(ZP, P.with_kind(FieldKind::complex_approx, 0));
    return coeff_scale(div.remainder) <= tol * coeff_scale(ZP);
}

InflectionSplit split_inflection(const HomForm& w, const std::vector<MPoly>& lines) {
    InflectionSplit out;
    out.inflection = inflection_divisor(w);
    MPoly rest = out.inflection;
    MPoly inv = MPoly::constant(FieldElem(1)).with_kind(rest.kind(), rest.quad_D());
    for (const MPoly& ell : lines) {
        if (ell.kind() != FieldKind::complex_approx && rest.kind() != FieldKind::complex_approx) {
            MPoly ellk = ell.with_kind(rest.kind(), rest.quad_D());
            while (auto q = try_divide(rest, ellk)) {
                rest = *q;
                inv *= ellk;
            }
        } else {
            out.numeric = true;
            MPoly restc = rest.with_kind(FieldKind::complex_approx, 0);
            MPoly ellc = ell.with_kind(FieldKind::complex_approx, 0);
            int v = valuation_along_linear_numeric(restc, ellc, 1e-9L);
            for (int i = 0; i < v; ++i) {
                restc = divide_by_linear(restc, ellc).quotient;
                inv = inv.with_kind(FieldKind::complex_approx, 0) * ellc;
            }
            rest = restc;
        }
    }
    out.invariant_part = inv;
    out.transverse_part = rest;
    return out;
}

InflectionSplit split_inflection(const HomForm& w) {
    return split_inflection(w, invariant_linear_factors(w, inflection_divisor(w)));
}

bool is_convex(const HomForm& w) {
    return is_invariant_curve(w, inflection_divisor(w));
}

bool is_convex_reduced(const HomForm& w) {
    return is_convex(w) && is_squarefree(inflection_divisor(w));
}

PreFoliation pre_foliation(const MPoly& curve, const HomForm& F) {
    PreFoliation out;
    out.foliation = F;
    out.curve = curve;
    if (curve.is_zero()) {
        out.co_degree = 0;
    } else {
        require_homogeneous(curve, "curve");
        if (curve.kind() != FieldKind::complex_approx && !is_squarefree(curve))
            throw error("curve is not reduced");
        out.co_degree = curve.degree();
    }
    out.total_degree = out.co_degree + F.degree;
    if (F.a.kind() != FieldKind::complex_approx)
        out.convex = is_convex(F) && (curve.is_zero() || is_invariant_curve(F, curve));
    return out;
}

HomForm transform_form(const HomForm& w, const std::array<std::array<FieldElem, 3>, 3>& M) {
    const char* names[3] = {"x", "y", "z"};
    // images x_i -> sum_j M[i][j] u_j, substituted via fresh variable names
    std::vector<MPoly> img(3);
    for (int i = 0; i < 3; ++i) {
        MPoly s = MPoly::constant(FieldElem(0)).with_kind(w.a.kind(), w.a.quad_D());
        for (int j = 0; j < 3; ++j)
            s += MPoly::variable(std::string("u") + names[j], w.a.kind(), w.a.quad_D())
                     .scaled(M[i][j]);
        img[i] = s;
    }
    auto sub_all = [&](const MPoly& p) {
        MPoly r = p;
        for (int i = 0; i < 3; ++i) r = r.substitute(names[i], img[i]);
        // rename ux, uy, uz back to x, y, z
        for (int i = 0; i < 3; ++i)
            r = r.substitute(std::string("u") + names[i],
                             MPoly::variable(names[i], w.a.kind(), w.a.quad_D()));
        return r.drop_unused_vars().with_vars(canonical_vars({"x", "y", "z"}));
    };
    std::vector<MPoly> old{w.a, w.b, w.c};
    std::vector<MPoly> comp(3);
    for (int i = 0; i < 3; ++i) comp[i] = sub_all(old[i]);
    MPoly na = MPoly::constant(FieldElem(0)).with_kind(w.a.kind(), w.a.quad_D());
    MPoly nb = na, nc = na;
    for (int i = 0; i < 3; ++i) {
        na += comp[i].scaled(M[i][0]);
        nb += comp[i].scaled(M[i][1]);
        nc += comp[i].scaled(M[i][2]);
    }
    return make_form(std::move(na), std::move(nb), std::move(nc));
}

bool first_integral_check(const HomForm& w, const std::vector<MPoly>& factors,
                          const std::vector<int>& exponents) {
    if (factors.size() != exponents.size() || factors.empty())
        throw error("first integral check needs matching factors and exponents");
    HomVectorField Z = vector_field_from_form(w);
    MPoly sum = MPoly::constant(FieldElem(0)).with_kind(w.a.kind(), w.a.quad_D());
    for (size_t t = 0; t < factors.size(); ++t) {
        MPoly term = z_contract(Z, factors[t]).scaled(FieldElem(exponents[t]));
        for (size_t s = 0; s < factors.size(); ++s)
            if (s != t) term *= factors[s];
        sum += term;
    }
    return sum.is_zero();
}

EpsForm pullback_limit(const std::array<MPoly, 3>& phi, const EpsForm& theta,
                       const FieldElem& norm_scalar, const MPoly& norm_monomial) {
    if (norm_scalar.is_zero()) throw error("normalizer scalar must be nonzero");
    if (norm_monomial.terms().size() != 1)
        throw error("normalizer must be a single monomial");
    const char* names[3] = {"x", "y", "z"};
    auto compose = [&](const MPoly& p) {
        // substitute through fresh names to avoid clobbering
        MPoly r = p.with_vars(canonical_vars({"x", "y", "z"}));
        for (int i = 0; i < 3; ++i) {
            const MPoly& im = phi[i];
            r = r.substitute(names[i], im.substitute("x", MPoly::variable("ux", im.kind(), im.quad_D()))
                                           .substitute("y", MPoly::variable("uy", im.kind(), im.quad_D()))
                                           .substitute("z", MPoly::variable("uz", im.kind(), im.quad_D())));
        }
        for (int i = 0; i < 3; ++i)
            r = r.substitute(std::string("u") + names[i],
                             MPoly::variable(names[i], r.kind(), r.quad_D()));
        return r;
    };
    std::vector<MPoly> comp(3);
    const MPoly* th[3] = {&theta.a, &theta.b, &theta.c};
    std::vector<MPoly> out(3);
    for (int j = 0; j < 3; ++j)
        out[j] = MPoly(theta.a.kind(), theta.a.quad_D(), canonical_vars({"x", "y", "z", "eps"}));
    for (int i = 0; i < 3; ++i) {
        comp[i] = compose(*th[i]);
        MPoly dphix = phi[i].derivative("x");
        MPoly dphiy = phi[i].derivative("y");
        MPoly dphiz = phi[i].derivative("z");
        out[0] += comp[i] * dphix;
        out[1] += comp[i] * dphiy;
        out[2] += comp[i] * dphiz;
    }
    FieldElem inv_scalar = norm_scalar.inv();
    bool all_zero = true;
    MPoly eps0 = MPoly::constant(FieldElem(0)).with_kind(theta.a.kind(), theta.a.quad_D());
    for (int j = 0; j < 3; ++j) {
        if (out[j].is_zero()) continue;
        auto q = try_divide(out[j], norm_monomial);
        if (!q) throw error("normalizer does not divide the pullback coefficients");
        out[j] = q->scaled(inv_scalar).substitute("eps", eps0);
        if (!out[j].is_zero()) all_zero = false;
        out[j] = out[j].drop_unused_vars().with_vars(canonical_vars({"x", "y", "z"}));
    }
    if (all_zero) throw error("pullback limit vanishes identically: normalizer overshoots");
    return EpsForm{out[0], out[1], out[2]};
}

} // namespace webflat
