#include "webflat/polyops.hpp"

#include <algorithm>
#include <cmath>

namespace webflat {

namespace {

void require_exact(const MPoly& p, const char* what) {
    if (p.kind() == FieldKind::complex_approx)
        throw error(std::string(what) + ": exact coefficient kinds only");
}

// first canonical variable with positive degree
std::string pivot_var(const MPoly& f) {
    for (const auto& v : f.vars())
        if (f.deg_in(v) > 0) return v;
    throw internal_error("pivot_var: constant polynomial");
}

// merge two polynomials into a common variable/kind context
void align(MPoly& a, MPoly& b) {
    MPoly sum = a + b; // cheap way to compute the promoted context
    a = a.with_vars(sum.vars()).with_kind(sum.kind(), sum.quad_D());
    b = b.with_vars(sum.vars()).with_kind(sum.kind(), sum.quad_D());
}

} // namespace

std::optional<MPoly> try_divide(const MPoly& g_in, const MPoly& f_in) {
    if (f_in.is_zero()) throw error("division by zero polynomial");
    require_exact(f_in, "try_divide");
    require_exact(g_in, "try_divide");
    MPoly g = g_in, f = f_in;
    align(g, f);
    if (g.is_zero()) return g;
    if (f.is_constant()) return g.scaled(f.constant_value().inv());
    const std::string v = pivot_var(f);
    const int m = f.deg_in(v);
    const int n = g.deg_in(v);
    if (n < m) return std::nullopt;
    auto fc = f.coeffs_in(v);
    auto gc = g.coeffs_in(v);
    std::vector<MPoly> q(static_cast<size_t>(n - m) + 1, MPoly(g.kind(), g.quad_D(), g.vars()));
    for (int k = n; k >= m; --k) {
        if (gc[k].is_zero()) continue;
        auto t = try_divide(gc[k], fc[m]);
        if (!t) return std::nullopt;
        q[k - m] = *t;
        for (int i = 0; i <= m; ++i) gc[k - m + i] -= *t * fc[i];
    }
    for (int i = 0; i < m; ++i)
        if (!gc[i].is_zero()) return std::nullopt;
    return MPoly::from_coeffs_in(v, q);
}

bool divides(const MPoly& f, const MPoly& g) { return try_divide(g, f).has_value(); }

namespace {

MPoly prem(const MPoly& A, const MPoly& B, const std::string& v) {
    MPoly lcB = B.lc_in(v);
    int db = B.deg_in(v);
    MPoly R = A;
    MPoly var = MPoly::variable(v, A.kind(), A.quad_D());
    while (!R.is_zero() && R.deg_in(v) >= db) {
        MPoly lcR = R.lc_in(v);
        int k = R.deg_in(v) - db;
        R = R * lcB - B * lcR * var.pow(static_cast<unsigned>(k));
    }
    return R;
}

MPoly gcd_rec(const MPoly& a, const MPoly& b);

MPoly content_in(const MPoly& p, const std::string& v) {
    MPoly g(p.kind(), p.quad_D(), p.vars());
    for (const auto& c : p.coeffs_in(v)) {
        if (c.is_zero()) continue;
        g = gcd_rec(g, c);
        if (g.is_constant() && !g.is_zero()) return g;
    }
    return g;
}

MPoly primitive_in(const MPoly& p, const std::string& v) {
    if (p.is_zero()) return p;
    MPoly c = content_in(p, v);
    if (c.is_constant()) return p;
    auto q = try_divide(p, c);
    if (!q) throw internal_error("primitive_in: content does not divide");
    return *q;
}

MPoly gcd_rec(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant())
        return MPoly::constant(FieldElem(1)).with_kind(a.kind(), a.quad_D());
    MPoly A = a, B = b;
    align(A, B);
    std::string v;
    for (const auto& w : A.vars())
        if (A.deg_in(w) > 0 || B.deg_in(w) > 0) { v = w; break; }
    MPoly ca = content_in(A, v), cb = content_in(B, v);
    MPoly cg = gcd_rec(ca, cb);
    MPoly pa = *try_divide(A, ca), pb = *try_divide(B, cb);
    if (pa.deg_in(v) == 0 || pb.deg_in(v) == 0)
        return cg; // one primitive part is constant in v, so the v-part of the gcd is trivial
    if (pa.deg_in(v) < pb.deg_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        MPoly R = prem(pa, pb, v);
        pa = pb;
        pb = R.is_zero() ? R : primitive_in(R, v);
        if (!pb.is_zero() && pb.deg_in(v) == 0) {
            // a constant-in-v pseudo remainder means the primitive parts are coprime in v
            return cg;
        }
    }
    return cg * primitive_in(pa, v);
}

} // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
    require_exact(a, "gcd");
    require_exact(b, "gcd");
    MPoly g = gcd_rec(a, b);
    return g.is_zero() ? g : g.monic();
}

MPoly resultant(const MPoly& f_in, const MPoly& g_in, const std::string& var) {
    require_exact(f_in, "resultant");
    require_exact(g_in, "resultant");
    MPoly f = f_in, g = g_in;
    align(f, g);
    MPoly zero(f.kind(), f.quad_D(), f.vars());
    if (f.is_zero() || g.is_zero()) return zero;
    const int m = f.deg_in(var);
    const int n = g.deg_in(var);
    MPoly one = MPoly::constant(FieldElem(1)).with_kind(f.kind(), f.quad_D());
    if (m == 0 && n == 0) return one;
    auto fc = f.coeffs_in(var);
    auto gc = g.coeffs_in(var);
    const int N = m + n;
    std::vector<std::vector<MPoly>> M(N, std::vector<MPoly>(N, zero));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = fc[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = gc[n - j];

    // fraction-free Bareiss elimination; every division is exact
    int sign = 1;
    MPoly prev = one;
    for (int k = 0; k + 1 < N; ++k) {
        int pr = -1;
        size_t best = 0;
        for (int r = k; r < N; ++r) {
            if (M[r][k].is_zero()) continue;
            size_t sz = M[r][k].terms().size();
            if (pr < 0 || sz < best) { pr = r; best = sz; }
        }
        if (pr < 0) return zero;
        if (pr != k) { std::swap(M[pr], M[k]); sign = -sign; }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                MPoly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                auto d = try_divide(num, prev);
                if (!d) throw internal_error("resultant: non-exact Bareiss division");
                M[i][j] = *d;
            }
            M[i][k] = zero;
        }
        prev = M[k][k];
    }
    MPoly det = M[N - 1][N - 1];
    return sign < 0 ? -det : det;
}

MPoly discriminant_in(const MPoly& f, const std::string& var) {
    int m = f.deg_in(var);
    if (m <= 0) throw error("discriminant in " + var + " of a polynomial of degree " + std::to_string(m));
    MPoly R = resultant(f, f.derivative(var), var);
    auto q = try_divide(R, f.lc_in(var));
    if (!q) throw internal_error("discriminant: leading coefficient division failed");
    return *q;
}

int valuation_along(const MPoly& f, const MPoly& c) {
    if (f.is_zero()) throw error("valuation of the zero polynomial");
    if (c.is_constant()) throw error("valuation along a constant");
    int k = 0;
    MPoly g = f;
    while (true) {
        auto q = try_divide(g, c);
        if (!q) return k;
        g = *q;
        ++k;
    }
}

MPoly squarefree_part_in(const MPoly& f, const std::string& var) {
    if (f.is_constant()) return f;
    MPoly g = poly_gcd(f, f.derivative(var));
    if (g.is_constant()) return f;
    return *try_divide(f, g);
}

MPoly squarefree_part(const MPoly& f) {
    if (f.is_constant()) return f;
    MPoly g = f;
    for (const auto& v : f.vars()) {
        if (f.deg_in(v) == 0) continue;
        g = poly_gcd(g, f.derivative(v));
        if (g.is_constant()) return f;
    }
    auto q = try_divide(f, g);
    if (!q) throw internal_error("squarefree_part: gcd does not divide");
    return *q;
}

bool is_squarefree(const MPoly& f) {
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    require_exact(f, "is_squarefree");
    // restrict to a line: a degree-preserving squarefree restriction certifies
    // squarefreeness; an unlucky (tangent) line only costs us the fallback
    static const long dirs[2][8] = {{3, -2, 5, 1, -4, 7, 2, -1}, {1, 4, -3, 2, 5, -1, -2, 3}};
    static const long offs[2][8] = {{1, 2, -1, 3, 1, -2, 0, 1}, {-2, 1, 3, -1, 2, 1, 4, -3}};
    for (int attempt = 0; attempt < 2; ++attempt) {
        MPoly line = MPoly::variable("t", f.kind(), f.quad_D());
        MPoly r = f;
        for (size_t i = 0; i < f.vars().size(); ++i) {
            size_t j = i % 8;
            MPoly sub = line.scaled(FieldElem(dirs[attempt][j])) +
                        MPoly::constant(FieldElem(offs[attempt][j]));
            r = r.substitute(f.vars()[i], sub);
        }
        if (r.degree() != f.degree()) continue;
        MPoly g = poly_gcd(r, r.derivative("t"));
        if (g.is_constant()) return true;
    }
    return squarefree_part(f).degree() == f.degree();
}

MPoly tangent_cone_at(const MPoly& f, const std::vector<FieldElem>& point) {
    if (point.size() != f.vars().size())
        throw error("tangent_cone_at: expected one coordinate per variable");
    MPoly r = f;
    for (size_t i = 0; i < point.size(); ++i) {
        MPoly shifted = MPoly::variable(f.vars()[i], f.kind(), f.quad_D()) +
                        MPoly::constant(point[i]);
        r = r.substitute(f.vars()[i], shifted);
    }
    // strip recentring roundoff before reading off the lowest part
    r = prune_small(r, 1e-12L);
    return r.lowest_part();
}

LinearDivision divide_by_linear(const MPoly& g, const MPoly& ell) {
    if (ell.degree() != 1) throw error("divide_by_linear: divisor is not linear");
    MPoly G = g, L = ell;
    align(G, L);
    // pivot: variable with the largest linear coefficient
    std::string pv;
    FieldElem cp;
    long double best = -1.0L;
    for (const auto& v : L.vars()) {
        MPoly::Exp e(L.vars().size(), 0);
        e[L.var_index(v)] = 1;
        FieldElem c = L.coeff_of(e);
        if (c.is_zero()) continue;
        long double a = std::abs(c.to_complex());
        if (a > best) { best = a; pv = v; cp = c; }
    }
    if (pv.empty()) throw internal_error("divide_by_linear: no linear term");
    // ell = cp*(v - S), synthetic division by the root v = S
    MPoly S = (MPoly::variable(pv, L.kind(), L.quad_D()).scaled(cp) - L).scaled(cp.inv());
    auto gc = G.coeffs_in(pv);
    int m = static_cast<int>(gc.size()) - 1;
    std::vector<MPoly> b(std::max(m, 1), MPoly(G.kind(), G.quad_D(), G.vars()));
    MPoly rem(G.kind(), G.quad_D(), G.vars());
    if (m == 0) {
        rem = gc[0];
    } else {
        b[m - 1] = gc[m];
        for (int k = m - 1; k >= 1; --k) b[k - 1] = gc[k] + b[k] * S;
        rem = gc[0] + b[0] * S;
    }
    LinearDivision out;
    out.remainder = rem;
    std::vector<MPoly> qc;
    for (auto& c : b) qc.push_back(c.scaled(cp.inv()));
    if (qc.empty()) qc.push_back(MPoly(G.kind(), G.quad_D(), G.vars()));
    out.quotient = MPoly::from_coeffs_in(pv, qc);
    return out;
}

int valuation_along_linear_numeric(const MPoly& f, const MPoly& ell, long double rel_tol) {
    long double scale = coeff_scale(f);
    if (scale == 0.0L) throw error("valuation of the zero polynomial");
    MPoly g = f;
    int k = 0;
    while (true) {
        LinearDivision d = divide_by_linear(g, ell);
        if (coeff_scale(d.remainder) > rel_tol * scale) return k;
        g = d.quotient;
        ++k;
        if (g.is_zero()) return k;
    }
}

long double coeff_scale(const MPoly& f) {
    long double s = 0.0L;
    for (const auto& [e, c] : f.terms()) s = std::max(s, std::abs(c.to_complex()));
    return s;
}

MPoly prune_small(const MPoly& f, long double rel) {
    if (f.kind() != FieldKind::complex_approx) return f;
    long double cut = rel * coeff_scale(f);
    MPoly out(f.kind(), f.quad_D(), f.vars());
    for (const auto& [e, c] : f.terms()) {
        if (std::abs(c.to_complex()) <= cut) continue;
        MPoly term = MPoly::constant(c, f.vars());
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) term *= MPoly::variable(f.vars()[i], f.kind(), f.quad_D()).pow(e[i]);
        out += term;
    }
    return out;
}

} // namespace webflat
