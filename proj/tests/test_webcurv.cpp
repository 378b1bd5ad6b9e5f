#include <doctest.h>
#include <webflat/foliation.hpp>
#include <webflat/parser.hpp>
#include <webflat/roots.hpp>
#include <webflat/webcurv.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

using namespace webflat;

namespace {

const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> XYZ{"x", "y", "z"};
const std::vector<std::string> XPQ{"x", "p", "q"};
const std::vector<std::string> PQ{"p", "q"};

MPoly P(const std::string& text, const std::vector<std::string>& vars = XPQ) {
    return parse_poly(text, vars);
}

HomForm fermat(int d) {
    std::string n = std::to_string(d);
    return homogenize_foliation(P("y^" + n + " - y", XY), P("x - x^" + n, XY));
}

PreFoliation bare(const HomForm& w) { return pre_foliation(MPoly(), w); }

ImplicitWeb raw_web(const MPoly& f) {
    ImplicitWeb W;
    W.poly = f;
    W.degree = f.deg_in("x");
    W.curve_factor = MPoly::constant(FieldElem(1));
    W.foliation_factor = f;
    W.chart = "z";
    return W;
}

// the three-slope web {0, 1, p}; its curvature is 1/(p-1)^2 - 1/p^2
ImplicitWeb oracle_web() { return raw_web(P("x^3 - x^2*p - x^2 + x*p")); }

Cplx oracle_K(Cplx p) { return Cplx(1) / ((p - Cplx(1)) * (p - Cplx(1))) - Cplx(1) / (p * p); }

// product of pencils of lines through the given vertices
ImplicitWeb pencil_web(const std::vector<std::pair<int, int>>& vertices) {
    MPoly f = MPoly::constant(FieldElem(1));
    for (auto [a, b] : vertices) {
        std::string s = "(p - " + std::to_string(a) + ")*x - q + " + std::to_string(b);
        f = f * P(s);
    }
    return raw_web(f);
}

std::vector<Cplx> xroots_at(const MPoly& f, Cplx p0, Cplx q0) {
    int ix = f.var_index("x"), ip = f.var_index("p"), iq = f.var_index("q");
    auto pw = [](Cplx b, int e) {
        Cplx r(1);
        while (e-- > 0) r *= b;
        return r;
    };
    std::vector<Cplx> c(size_t(f.deg_in("x")) + 1, Cplx(0));
    for (const auto& [e, co] : f.terms())
        c[ix >= 0 ? e[size_t(ix)] : 0] +=
            co.to_complex() * pw(p0, ip >= 0 ? e[size_t(ip)] : 0) * pw(q0, iq >= 0 ? e[size_t(iq)] : 0);
    return roots_univariate(c).roots;
}

FieldElem eval_pq(const MPoly& f, const FieldElem& pv, const FieldElem& qv) {
    std::vector<FieldElem> vals;
    for (const auto& v : f.vars()) vals.push_back(v == "p" ? pv : qv);
    return f.eval(vals);
}

using QJ = Jet2<FieldElem>;

QJ jet_of(const MPoly& f, const FieldElem& pv, const FieldElem& qv) {
    int ip = f.var_index("p"), iq = f.var_index("q");
    QJ Pj = QJ::var_p(pv), Qj = QJ::var_q(qv);
    QJ acc = QJ::cst(FieldElem(0));
    for (const auto& [e, c] : f.terms()) {
        QJ t = QJ::cst(c);
        for (int k = 0; k < (ip >= 0 ? int(e[size_t(ip)]) : 0); ++k) t = t * Pj;
        for (int k = 0; k < (iq >= 0 ? int(e[size_t(iq)]) : 0); ++k) t = t * Qj;
        acc = acc + t;
    }
    return acc;
}

bool close(Cplx a, Cplx b, long double tol) { return std::abs(a - b) < tol; }

} // namespace

TEST_CASE("jet arithmetic follows the truncated Taylor rules") {
    CJet t = CJet::var_p(Cplx(0));
    CJet f = (CJet::cst(Cplx(1)) + t) * (CJet::cst(Cplx(1)) - t);
    CHECK(f.v == Cplx(1));
    CHECK(f.dp == Cplx(0));
    CHECK(f.dq == Cplx(0));
    CHECK(f.dpp == Cplx(-2));
    CHECK(f.dpq == Cplx(0));
    CHECK(f.dqq == Cplx(0));

    CJet a{Cplx(2, 1), Cplx(3), Cplx(-1, 2), Cplx(5), Cplx(7, -3), Cplx(-2)};
    CJet one = a / a;
    CHECK(close(one.v, Cplx(1), 1e-17L));
    CHECK(close(one.dp, Cplx(0), 1e-16L));
    CHECK(close(one.dq, Cplx(0), 1e-16L));
    CHECK(close(one.dpp, Cplx(0), 1e-15L));
    CHECK(close(one.dpq, Cplx(0), 1e-15L));
    CHECK(close(one.dqq, Cplx(0), 1e-15L));

    CJet pq = CJet::var_p(Cplx(2)) * CJet::var_q(Cplx(3));
    CHECK(pq.v == Cplx(6));
    CHECK(pq.dp == Cplx(3));
    CHECK(pq.dq == Cplx(2));
    CHECK(pq.dpp == Cplx(0));
    CHECK(pq.dpq == Cplx(1));
    CHECK(pq.dqq == Cplx(0));
}

TEST_CASE("jet quotients match symbolic derivatives exactly") {
    std::mt19937_64 rng(0x2b7e151628aeULL);
    std::uniform_int_distribution<int> ci(-4, 4);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 7);
    const char* mono[6] = {"1", "p", "q", "p^2", "p*q", "q^2"};

    auto rand_poly = [&]() {
        std::string s;
        for (int k = 0; k < 6; ++k) {
            int c = ci(rng);
            if (c == 0) continue;
            if (s.empty())
                s = std::to_string(c) + "*" + mono[k];
            else if (c > 0)
                s += " + " + std::to_string(c) + "*" + mono[k];
            else
                s += " - " + std::to_string(-c) + "*" + mono[k];
        }
        if (s.empty()) s = "1";
        return parse_poly(s, PQ);
    };

    int done = 0;
    while (done < 100) {
        MPoly A = rand_poly(), B = rand_poly();
        FieldElem pv = FieldElem::rational(num(rng), den(rng));
        FieldElem qv = FieldElem::rational(num(rng), den(rng));
        FieldElem b = eval_pq(B, pv, qv);
        if (b.is_zero()) continue;
        ++done;

        QJ j = jet_of(A, pv, qv) / jet_of(B, pv, qv);

        FieldElem a = eval_pq(A, pv, qv);
        MPoly N1 = A.derivative("p") * B - A * B.derivative("p");
        MPoly N2 = A.derivative("q") * B - A * B.derivative("q");
        FieldElem n1 = eval_pq(N1, pv, qv), n2 = eval_pq(N2, pv, qv);
        FieldElem bp = eval_pq(B.derivative("p"), pv, qv);
        FieldElem bq = eval_pq(B.derivative("q"), pv, qv);
        FieldElem b2 = b * b, b3 = b2 * b;
        FieldElem two(2);

        CHECK(j.v == a / b);
        CHECK(j.dp == n1 / b2);
        CHECK(j.dq == n2 / b2);
        CHECK(j.dpp == (eval_pq(N1.derivative("p"), pv, qv) * b - two * n1 * bp) / b3);
        CHECK(j.dpq == (eval_pq(N1.derivative("q"), pv, qv) * b - two * n1 * bq) / b3);
        CHECK(j.dqq == (eval_pq(N2.derivative("q"), pv, qv) * b - two * n2 * bq) / b3);
    }
}

TEST_CASE("slope jets solve the web equation implicitly") {
    // (px - q)^2 - p x^2 at (2, 1): slopes are the roots of 2x^2 - 4x + 1
    ImplicitWeb W = legendre_web(bare(homogenize_foliation(P("y^2", XY), P("-1*x^2", XY))));
    Cplx p0(2), q0(1);
    auto js = slope_jets(W, p0, q0);
    REQUIRE(js.size() == 2);
    long double r = std::sqrt(0.5L);
    CHECK(close(js[0].v, Cplx(1 - r), 1e-12L));
    CHECK(close(js[1].v, Cplx(1 + r), 1e-12L));

    long double h = 1e-6L;
    auto ap = slope_jets(W, p0 + h, q0), am = slope_jets(W, p0 - h, q0);
    auto bp = slope_jets(W, p0, q0 + h), bm = slope_jets(W, p0, q0 - h);
    for (size_t i = 0; i < 2; ++i) {
        Cplx fd_p = (ap[i].v - am[i].v) / (2 * h);
        Cplx fd_q = (bp[i].v - bm[i].v) / (2 * h);
        CHECK(close(fd_p, js[i].dp, 1e-6L * std::max(1.0L, std::abs(js[i].dp))));
        CHECK(close(fd_q, js[i].dq, 1e-6L * std::max(1.0L, std::abs(js[i].dq))));
        CHECK(close((ap[i].dp - am[i].dp) / (2 * h), js[i].dpp, 1e-5L));
        CHECK(close((ap[i].dq - am[i].dq) / (2 * h), js[i].dpq, 1e-5L));
        CHECK(close((bp[i].dp - bm[i].dp) / (2 * h), js[i].dpq, 1e-5L));
        CHECK(close((bp[i].dq - bm[i].dq) / (2 * h), js[i].dqq, 1e-5L));
    }

    CHECK_THROWS_WITH(slope_jets(W, Cplx(3), Cplx(0)), doctest::Contains("repeated"));
    CHECK_THROWS_WITH(slope_jets(W, Cplx(0), Cplx(1)), doctest::Contains("drops degree"));
}

TEST_CASE("constant and coincident slope triples") {
    Cplx K = curvature3(CJet::cst(Cplx(0)), CJet::cst(Cplx(1)), CJet::cst(Cplx(-1)));
    CHECK(std::abs(K) < 1e-15L);
    CHECK_THROWS_WITH(curvature3(CJet::cst(Cplx(0)), CJet::cst(Cplx(0)), CJet::cst(Cplx(1))),
                      doctest::Contains("coincident"));
}

TEST_CASE("pencils of lines weave a flat web") {
    ImplicitWeb W3 = pencil_web({{0, 0}, {1, 0}, {0, 1}});
    ImplicitWeb W4 = pencil_web({{0, 0}, {1, 0}, {0, 1}, {-1, 1}});
    std::mt19937_64 rng(0xbead5ULL);
    std::uniform_real_distribution<long double> uni(-0.9L, 0.9L);
    int checked3 = 0, checked4 = 0;
    while (checked3 < 10) {
        Cplx p(uni(rng), uni(rng)), q(uni(rng), uni(rng));
        try {
            CurvatureSample s = curvature(W3, p, q);
            if (!s.valid) continue;
            CHECK(std::abs(s.K) < 1e-10L);
            ++checked3;
        } catch (const error&) {
        }
    }
    while (checked4 < 10) {
        Cplx p(uni(rng), uni(rng)), q(uni(rng), uni(rng));
        try {
            CurvatureSample s = curvature(W4, p, q);
            if (!s.valid) continue;
            CHECK(std::abs(s.K) < 1e-10L);
            ++checked4;
        } catch (const error&) {
        }
    }
    FlatnessConfig cfg;
    cfg.samples = 50;
    FlatnessVerdict v = flatness_scan(W4, {}, cfg);
    CHECK(v.verdict == "flat");
    CHECK(v.samples_valid == 50);
}

TEST_CASE("the three-slope oracle web has the predicted curvature") {
    ImplicitWeb W = oracle_web();

    CurvatureSample a = curvature(W, Cplx(1.0L / 3), Cplx(0.2L));
    REQUIRE(a.valid);
    CHECK(close(a.K, Cplx(-6.75L), 1e-10L));

    CurvatureSample b = curvature(W, Cplx(0.5L), Cplx(-0.3L));
    REQUIRE(b.valid);
    CHECK(std::abs(b.K) < 1e-12L);

    Cplx p0(0.4L, 0.3L);
    CurvatureSample c = curvature(W, p0, Cplx(0.1L, -0.2L));
    REQUIRE(c.valid);
    CHECK(close(c.K, oracle_K(p0), 1e-10L * std::abs(oracle_K(p0))));

    // the curvature of this web does not depend on q
    CurvatureSample d1 = curvature(W, Cplx(0.37L), Cplx(0.1L));
    CurvatureSample d2 = curvature(W, Cplx(0.37L), Cplx(-0.8L, 0.2L));
    CHECK(close(d1.K, d2.K, 1e-10L));

    // curvature3 cannot depend on the order the slopes come in
    auto js = slope_jets(W, Cplx(0.37L), Cplx(0.21L));
    REQUIRE(js.size() == 3);
    Cplx base = curvature3(js[0], js[1], js[2]);
    int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& pi : perm) {
        Cplx k = curvature3(js[pi[0]], js[pi[1]], js[pi[2]]);
        CHECK(std::abs(k - base) <= 1e-12L * (1 + std::abs(base)));
    }
}

TEST_CASE("curvature agrees with the finite-difference oracle") {
    ImplicitWeb W3 = oracle_web();
    ImplicitWeb Wf = legendre_web(bare(fermat(3)));
    ImplicitWeb Wn = legendre_web(
        bare(homogenize_foliation(P("y^3 + x^2 - 1", XY), P("x^3 - y^2 + x", XY))));

    auto band = [](const ImplicitWeb& W, Cplx p, Cplx q) {
        Cplx kj = curvature(W, p, q).K;
        Cplx kf = curvature_fd_oracle(W, p, q);
        long double tol = std::max(1e-6L, 1e-4L * std::abs(kj));
        CHECK(std::abs(kj - kf) <= tol);
        return kj;
    };

    band(W3, Cplx(0.37L), Cplx(0.21L));
    band(W3, Cplx(0.4L, 0.3L), Cplx(-0.1L, 0.5L));
    band(W3, Cplx(-0.62L, 0.1L), Cplx(0.33L));

    band(Wf, Cplx(0.31L, 0.4L), Cplx(0.17L, -0.35L));
    band(Wf, Cplx(-0.42L, 0.2L), Cplx(0.55L, 0.3L));
    band(Wf, Cplx(0.12L, -0.5L), Cplx(-0.61L, 0.2L));

    long double biggest = 0;
    biggest = std::max(biggest, std::abs(band(Wn, Cplx(0.31L, 0.4L), Cplx(0.17L, -0.35L))));
    biggest = std::max(biggest, std::abs(band(Wn, Cplx(-0.45L, 0.22L), Cplx(0.52L, 0.31L))));
    biggest = std::max(biggest, std::abs(band(Wn, Cplx(0.2L, -0.48L), Cplx(-0.57L, 0.19L))));
    CHECK(biggest > 1e-3L); // this web is genuinely curved
}

TEST_CASE("oracle and curvature guard their preconditions") {
    ImplicitWeb W3 = oracle_web();
    CHECK_THROWS_WITH(curvature_fd_oracle(W3, Cplx(1e-5L), Cplx(0.3L), 1e-4L),
                      doctest::Contains("step too large"));
    CHECK_THROWS_WITH(curvature(W3, Cplx(0), Cplx(0.3L)), doctest::Contains("repeated"));

    ImplicitWeb W2 = legendre_web(bare(fermat(2)));
    CHECK_THROWS_WITH(curvature(W2, Cplx(0.3L), Cplx(0.2L)), doctest::Contains("at least 3"));
    CHECK_THROWS_WITH(curvature_fd_oracle(W2, Cplx(0.3L), Cplx(0.2L)),
                      doctest::Contains("at least 3"));
}

TEST_CASE("subweb decomposition identity holds") {
    // invariant conic times the degree-2 reference foliation
    PreFoliation pf = pre_foliation(P("x*y - 2*x*z + y*z", XYZ), fermat(2));
    ImplicitWeb W = legendre_web(pf);
    REQUIRE(W.degree == 4);
    Cplx p0(0.37L, 0.11L), q0(-0.23L, 0.41L);

    // group the two slopes cut out by the conic
    auto cr = xroots_at(W.curve_factor, p0, q0);
    REQUIRE(cr.size() == 2);
    auto js = slope_jets(W, p0, q0);
    std::vector<int> grp;
    for (Cplx root : cr) {
        int best = 0;
        for (int i = 1; i < int(js.size()); ++i)
            if (std::abs(js[size_t(i)].v - root) < std::abs(js[size_t(best)].v - root)) best = i;
        grp.push_back(best);
    }
    REQUIRE(grp[0] != grp[1]);
    CHECK(decomposition_identity_check(W, grp, p0, q0) <= 1e-9L);

    // a five-slope web mixing the oracle web with two pencils
    ImplicitWeb W5 =
        raw_web(P("x^3 - x^2*p - x^2 + x*p") * P("(p - 1)*x - q") * P("(p + 1)*x - q + 1"));
    REQUIRE(W5.degree == 5);
    Cplx p1(0.29L, 0.07L), q1(-0.41L, 0.19L);
    CHECK(decomposition_identity_check(W5, {0, 3}, p1, q1) <= 1e-9L);
    CHECK(decomposition_identity_check(W5, {1, 2, 4}, p1, q1) <= 1e-9L);

    CHECK_THROWS_WITH(decomposition_identity_check(W5, {0}, p1, q1),
                      doctest::Contains("at least 2"));
    CHECK_THROWS_WITH(decomposition_identity_check(W5, {0, 1, 2, 3}, p1, q1),
                      doctest::Contains("at least 2"));
    CHECK_THROWS_WITH(decomposition_identity_check(W5, {0, 0}, p1, q1),
                      doctest::Contains("repeated"));
    CHECK_THROWS_WITH(decomposition_identity_check(W5, {0, 9}, p1, q1),
                      doctest::Contains("out of range"));
    ImplicitWeb W3 = oracle_web();
    CHECK_THROWS_WITH(decomposition_identity_check(W3, {0, 1}, p1, q1),
                      doctest::Contains("at least 4"));
}

TEST_CASE("holomorphy probes find poles and clean components") {
    ImplicitWeb W3 = oracle_web();

    HolomorphyProbe hp = holomorphy_probe(W3, P("p", PQ));
    CHECK_FALSE(hp.holomorphic);
    CHECK_FALSE(hp.inconclusive);
    CHECK(hp.pole_order > 1.6L);
    CHECK(hp.pole_order < 2.4L);
    CHECK(hp.fit_quality >= 0.9L);
    CHECK(hp.max_abs_K > 1e3L);

    HolomorphyProbe hm = holomorphy_probe(W3, P("p - 1", PQ));
    CHECK_FALSE(hm.holomorphic);
    CHECK(hm.pole_order > 1.6L);
    CHECK(hm.pole_order < 2.4L);

    CHECK_THROWS_WITH(holomorphy_probe(W3, P("q", PQ)), doctest::Contains("does not divide"));
    CHECK_THROWS_WITH(holomorphy_probe(W3, P("x - p")), doctest::Contains("(p, q)"));

    ImplicitWeb Wf = legendre_web(bare(fermat(3)));
    HolomorphyProbe hf = holomorphy_probe(Wf, P("q", PQ));
    CHECK(hf.holomorphic);
    CHECK_FALSE(hf.inconclusive);
    CHECK(hf.max_abs_K < 1e-8L);
}

TEST_CASE("dual webs of convex foliations scan flat") {
    FlatnessVerdict vf = flatness_scan(bare(fermat(3)));
    CHECK(vf.verdict == "flat");
    CHECK(vf.samples_valid == 200);
    CHECK(vf.max_abs_K < 1e-6L);
    REQUIRE(vf.probes.size() == 6);
    for (const auto& hp : vf.probes) {
        CHECK(hp.holomorphic);
        CHECK_FALSE(hp.inconclusive);
    }

    PreFoliation pf = pre_foliation(P("x*y - 2*x*z + y*z", XYZ), fermat(2));
    FlatnessConfig cfg;
    cfg.samples = 100;
    FlatnessVerdict vp = flatness_scan(pf, cfg);
    CHECK(vp.verdict == "flat");
    CHECK(vp.samples_valid == 100);
    CHECK(vp.max_abs_K < 1e-6L);
    CHECK(vp.probes.size() == 4);
    for (const auto& hp : vp.probes) CHECK(hp.holomorphic);
}

TEST_CASE("curved webs are reported non-flat") {
    PreFoliation nf =
        bare(homogenize_foliation(P("y^3 + x^2 - 1", XY), P("x^3 - y^2 + x", XY)));
    FlatnessConfig cfg;
    cfg.samples = 60;
    FlatnessVerdict v = flatness_scan(nf, cfg);
    CHECK(v.verdict == "non-flat");
    CHECK(v.max_abs_K > 1e-3L);
}

TEST_CASE("flat verdicts survive projective chart changes") {
    std::mt19937_64 rng(0x7ab1e5ULL);
    std::uniform_int_distribution<int> ci(-3, 3);
    FlatnessConfig cfg;
    cfg.samples = 60;
    int done = 0;
    while (done < 3) {
        std::array<std::array<FieldElem, 3>, 3> M;
        for (auto& row : M)
            for (auto& e : row) e = FieldElem(ci(rng));
        FieldElem det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
                        M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
                        M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
        if (det.is_zero()) continue;
        FlatnessVerdict v = flatness_scan(bare(transform_form(fermat(3), M)), cfg);
        CHECK(v.verdict == "flat");
        CHECK(v.max_abs_K < 1e-6L);
        ++done;
    }
}
