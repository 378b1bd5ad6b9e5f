#include <doctest.h>
#include <webflat/legendre.hpp>
#include <webflat/parser.hpp>
#include <webflat/polyops.hpp>

#include <algorithm>
#include <random>

using namespace webflat;

namespace {
const std::vector<std::string> XYZ{"x", "y", "z"};
const std::vector<std::string> XY{"x", "y"};
const std::vector<std::string> PQ{"p", "q"};

MPoly P(const std::string& text, const std::vector<std::string>& vars = XYZ) {
    return parse_poly(text, vars, FieldKind::rational, 0);
}

// (y^d - y) dx + (x - x^d) dy, the standard convex example
HomForm fermat(int d) {
    std::string ds = std::to_string(d);
    return homogenize_foliation(P("y^" + ds + " - y", XY), P("x - x^" + ds, XY));
}

// y^d dx - x^d dy
HomForm h1(int d) {
    std::string ds = std::to_string(d);
    return homogenize_foliation(P("y^" + ds, XY), P("-1*x^" + ds, XY));
}

PreFoliation bare(const HomForm& w) { return pre_foliation(MPoly(), w); }

const ComponentCheck* find_comp(const DiscriminantReport& rep, const MPoly& poly) {
    for (const auto& c : rep.components)
        if (MPoly::proportional(c.poly, poly)) return &c;
    return nullptr;
}

const ComponentCheck* find_label(const DiscriminantReport& rep, const std::string& label) {
    for (const auto& c : rep.components)
        if (c.label == label) return &c;
    return nullptr;
}

std::array<std::array<FieldElem, 3>, 3> mat(const std::array<int, 9>& v) {
    std::array<std::array<FieldElem, 3>, 3> M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = FieldElem(v[size_t(i * 3 + j)]);
    return M;
}
} // namespace

TEST_CASE("dual web of the binomial family comes out exactly") {
    MPoly x = MPoly::variable("x"), p = MPoly::variable("p"), q = MPoly::variable("q");
    for (int d : {2, 3}) {
        ImplicitWeb W = legendre_web(bare(h1(d)));
        CHECK(W.degree == d);
        CHECK(W.chart == "z");
        CHECK(W.curve_factor.is_constant());
        MPoly expected = (p * x - q).pow(unsigned(d)) - p * x.pow(unsigned(d));
        CHECK((W.poly - expected).is_zero());
    }
    // curve factor multiplies in on the moving line
    ImplicitWeb Wc = legendre_web(pre_foliation(P("x"), h1(2)));
    CHECK(Wc.degree == 3);
    CHECK(MPoly::proportional(Wc.curve_factor, x));
    MPoly expected = x * ((p * x - q).pow(2) - p * x.pow(2));
    CHECK((Wc.poly - expected).is_zero());
}

TEST_CASE("a pencil of lines has no dual web") {
    HomForm pen = homogenize_foliation(P("y", XY), P("-1*x", XY));
    CHECK(pen.degree == 0);
    CHECK_THROWS_WITH(legendre_web(bare(pen)), doctest::Contains("pencil"));
    CHECK_THROWS_WITH(predict_discriminant(bare(pen)), doctest::Contains("pencil"));
}

TEST_CASE("dual lines of finite and infinite points") {
    CHECK((dual_line(ProjPoint::of(1, 2, 1)) - P("q - p + 2", PQ)).is_zero());
    CHECK((dual_line(ProjPoint::of(0, 0, 1)) - P("q", PQ)).is_zero());
    CHECK((dual_line(ProjPoint::of(1, 3, 0)) - P("p - 3", PQ)).is_zero());
    CHECK_THROWS_WITH(dual_line(ProjPoint::of(0, 1, 0)), doctest::Contains("infinity"));
    MPoly nl = dual_line(ProjPoint::numeric(Cplx(0.5L), Cplx(-1.0L), Cplx(1.0L)));
    CHECK(nl.kind() == FieldKind::complex_approx);
    MPoly want = parse_poly("q - 1", PQ, FieldKind::complex_approx, 0) -
                 MPoly::variable("p", FieldKind::complex_approx, 0).scaled(
                     FieldElem::complex(Cplx(0.5L)));
    CHECK(coeff_scale(nl - want) < 1e-12L);
}

TEST_CASE("singular points of plane curves") {
    CHECK(curve_singular_points(P("x*y - 2*x*z + y*z")).empty());
    CHECK(curve_singular_points(P("x + y - z")).empty());
    auto node = curve_singular_points(P("x*y", XY));
    REQUIRE(node.size() == 1);
    CHECK(proj_dist(node[0], ProjPoint::of(0, 0, 1)) < 1e-12L);
    auto cross = curve_singular_points(P("x*y - x*z"));
    REQUIRE(cross.size() == 1);
    CHECK(proj_dist(cross[0], ProjPoint::of(0, 1, 1)) < 1e-12L);
    CHECK_THROWS_WITH(curve_singular_points(P("x^2", XY)), doctest::Contains("reduced"));
}

TEST_CASE("dual curves of conics, affine or homogeneous input") {
    DualCurveParts par = dual_curve(P("y - x^2", XY));
    CHECK(MPoly::proportional(par.curve, P("p^2 - 4*q", PQ)));
    CHECK(par.singular_duals.empty());
    DualCurveParts hyp = dual_curve(P("x*y - z^2"));
    CHECK(MPoly::proportional(hyp.curve, P("q^2 + 4*p", PQ)));
    CHECK_THROWS_WITH(dual_curve(P("x + y")), doctest::Contains("line is a point"));
    CHECK_THROWS_WITH(dual_curve(P("z*y - z*x")), doctest::Contains("z = 0"));
}

TEST_CASE("dual of a node is the pencil of the node, squared") {
    DualCurveParts cross = dual_curve(P("x*y", XY));
    CHECK(MPoly::proportional(cross.full, P("q^2", PQ)));
    CHECK(cross.curve.is_constant());
    REQUIRE(cross.singular_duals.size() == 1);
    CHECK(MPoly::proportional(cross.singular_duals[0].first, P("q", PQ)));
    CHECK(cross.singular_duals[0].second == 2);
}

TEST_CASE("dualizing twice returns the conic") {
    const char* conic[2] = {"y*z - x^2", "x*y - z^2"};
    const char* affine[2] = {"q - p^2", "p*q - 1"};
    for (int i = 0; i < 2; ++i) {
        MPoly dual1 = dual_curve(P(conic[i])).curve;
        MPoly renamed = dual1.substitute("p", MPoly::variable("x"))
                            .substitute("q", MPoly::variable("y"))
                            .drop_unused_vars();
        MPoly dual2 = dual_curve(renamed).curve;
        CHECK(MPoly::proportional(dual2, P(affine[i], PQ)));
    }
}

TEST_CASE("tangent image of an invariant conic is its dual curve") {
    MPoly P2 = P("x*y - 2*x*z + y*z");
    CHECK(is_invariant_curve(fermat(2), P2));
    MPoly G = gauss_image(fermat(2), P2);
    CHECK(MPoly::proportional(squarefree_part(G), dual_curve(P2).curve));
}

TEST_CASE("tangent image edge cases") {
    // horizontal direction field x^2 dx - dy... wait, slopes dy/dx = x^2 along {x = 0} are all 0
    HomForm wc = homogenize_foliation(P("-1*x^2", XY), P("1", XY));
    CHECK(MPoly::proportional(gauss_image(wc, P("x")), P("p", PQ)));
    // dy coefficient of the fermat form vanishes on {x = 0}
    CHECK_THROWS_WITH(gauss_image(fermat(2), P("x")), doctest::Contains("vertical"));
    CHECK_THROWS_WITH(gauss_image(fermat(2), P("z")), doctest::Contains("z = 0"));
}

TEST_CASE("web discriminant of the degree 2 fermat web, two routes") {
    ImplicitWeb W = legendre_web(bare(fermat(2)));
    MPoly frozen = P("p^2*x^2 - p*x^2 - 2*p*q*x + q^2 + q", {"x", "p", "q"});
    CHECK((W.poly - frozen).is_zero());
    MPoly res = web_discriminant(W);
    CHECK(MPoly::proportional(res, P("p^2*q*(p - 1)*(q - p + 1)", PQ)));
    MPoly disc = discriminant_in(W.poly, "x");
    CHECK(MPoly::proportional(disc, P("p*q*(q - p + 1)", PQ)));
    // independent route: pencils of the tangency-degenerate points of the
    // singularity report
    auto recs = analyze_singularities(bare(fermat(2)));
    MPoly prod = P("1", PQ);
    int infinite = 0;
    for (const auto& rec : recs) {
        if (rec.tau < 2) continue;
        try {
            prod *= dual_line(rec.point);
        } catch (const error&) {
            ++infinite;
        }
    }
    CHECK(infinite == 1);
    CHECK(MPoly::proportional(squarefree_part(disc), prod));
}

TEST_CASE("web discriminant of the degree 3 fermat web, two routes") {
    ImplicitWeb W = legendre_web(bare(fermat(3)));
    MPoly disc = discriminant_in(W.poly, "x");
    auto recs = analyze_singularities(bare(fermat(3)));
    MPoly prod = P("1", PQ);
    int infinite = 0;
    for (const auto& rec : recs) {
        if (rec.tau < 2) continue;
        try {
            prod *= dual_line(rec.point);
        } catch (const error&) {
            ++infinite;
        }
    }
    CHECK(infinite == 1);
    CHECK(MPoly::proportional(squarefree_part(disc), prod));
    // orders along the pencils match the radial tangency excess
    CHECK(valuation_along(disc, P("q", PQ)) == 2);
    CHECK(valuation_along(disc, P("p", PQ)) == 2);
    CHECK(valuation_along(disc, P("q - p + 1", PQ)) == 1);
    CHECK(valuation_along(disc, P("q + p - 1", PQ)) == 1);
}

TEST_CASE("one slope has no discriminant") {
    std::vector<std::string> XPQ{"x", "p", "q"};
    ImplicitWeb W1{P("p*x - q", XPQ), 1, P("1", XPQ), P("p*x - q", XPQ), "z"};
    CHECK_THROWS_WITH(web_discriminant(W1), doctest::Contains("two slopes"));
}

TEST_CASE("prediction and verification: invariant conic times the fermat form") {
    PreFoliation pf = pre_foliation(P("x*y - 2*x*z + y*z"), fermat(2));
    CHECK(pf.convex);
    DiscriminantPrediction pred = predict_discriminant(pf);
    CHECK(pred.formula == "convex-reduced");
    CHECK(pred.infinite_duals.size() == 1);
    CHECK(pred.curve_points_not_radial.empty());
    REQUIRE(pred.components.size() == 4);
    CHECK(std::count_if(pred.components.begin(), pred.components.end(),
                        [](const PredictedComponent& c) { return c.label == "dual-curve"; }) == 1);
    DiscriminantReport rep = verify_discriminant(pf, pred);
    CHECK(rep.verdict == "match");
    CHECK(rep.residual.is_constant());
    CHECK_FALSE(rep.numeric);
    for (const auto& c : rep.components) CHECK(c.verdict == "divides");
    // one-step call agrees
    CHECK(verify_discriminant(pf).verdict == "match");
}

TEST_CASE("prediction and verification: invariant line times the degree 3 fermat form") {
    PreFoliation pf = pre_foliation(P("x"), fermat(3));
    DiscriminantReport rep = verify_discriminant(pf);
    CHECK(rep.verdict == "match");
    CHECK(rep.residual.is_constant());
    REQUIRE(rep.components.size() == 8);
    struct Want {
        const char* poly;
        int mult;
    };
    const Want want[] = {{"q", 4},         {"q + 1", 2},     {"q - 1", 2},     {"p", 2},
                         {"q - p + 1", 1}, {"q - p - 1", 1}, {"q + p + 1", 1}, {"q + p - 1", 1}};
    for (const Want& w : want) {
        const ComponentCheck* c = find_comp(rep, P(w.poly, PQ));
        REQUIRE(c != nullptr);
        CHECK(c->multiplicity == w.mult);
        CHECK(c->verdict == "divides");
    }
    CHECK(std::is_sorted(rep.components.begin(), rep.components.end(),
                         [](const ComponentCheck& a, const ComponentCheck& b) {
                             return a.label != b.label ? a.label < b.label
                                                       : a.poly.str() < b.poly.str();
                         }));
}

TEST_CASE("prediction and verification: line in general position") {
    PreFoliation pf = pre_foliation(P("x + y + 2*z"), fermat(2));
    CHECK_FALSE(pf.convex);
    DiscriminantPrediction pred = predict_discriminant(pf);
    CHECK(pred.formula == "general");
    REQUIRE(pred.components.size() == 4);
    DiscriminantReport rep = verify_discriminant(pf, pred);
    CHECK(rep.verdict == "match");
    const ComponentCheck* g = find_label(rep, "gauss-image-of curve");
    REQUIRE(g != nullptr);
    // the tangency factor enters the discriminant squared
    CHECK(g->multiplicity == 2);
}

TEST_CASE("invariant line pair: curve singularity shows up through the foliation") {
    PreFoliation pf = pre_foliation(P("x*y - x*z"), fermat(2));
    DiscriminantPrediction pred = predict_discriminant(pf);
    CHECK(pred.formula == "convex-reduced");
    REQUIRE(pred.curve_points_not_radial.size() == 1);
    CHECK(proj_dist(pred.curve_points_not_radial[0], ProjPoint::of(0, 1, 1)) < 1e-9L);
    // both components are lines, so there is no dual-curve part
    REQUIRE(pred.components.size() == 4);
    for (const auto& c : pred.components) CHECK(c.label.rfind("dual-line-of", 0) == 0);
    DiscriminantReport rep = verify_discriminant(pf, pred);
    CHECK(rep.verdict == "match");
    struct Want {
        const char* poly;
        int mult;
    };
    const Want want[] = {{"q", 3}, {"p", 3}, {"q - p + 1", 3}, {"q + 1", 6}};
    for (const Want& w : want) {
        const ComponentCheck* c = find_comp(rep, P(w.poly, PQ));
        REQUIRE(c != nullptr);
        CHECK(c->multiplicity == w.mult);
    }
}

TEST_CASE("verification flags planted mistakes") {
    PreFoliation pf = pre_foliation(P("x"), fermat(3));
    DiscriminantPrediction pred = predict_discriminant(pf);

    DiscriminantPrediction missing = pred;
    auto it = std::find_if(missing.components.begin(), missing.components.end(),
                           [](const PredictedComponent& c) {
                               return MPoly::proportional(c.poly, P("q + 1", PQ));
                           });
    REQUIRE(it != missing.components.end());
    missing.components.erase(it);
    DiscriminantReport rep = verify_discriminant(pf, missing);
    CHECK(rep.verdict == "extraneous residual");
    CHECK(MPoly::proportional(rep.residual, P("q + 1", PQ)));

    DiscriminantPrediction extra = pred;
    extra.components.push_back({"dual-line-of nowhere", P("q - 7*p + 3", PQ), 0});
    CHECK(verify_discriminant(pf, extra).verdict == "missing components");

    PreFoliation f2 = bare(fermat(2));
    DiscriminantPrediction overclaim = predict_discriminant(f2);
    REQUIRE(!overclaim.components.empty());
    overclaim.components[0].expected_valuation = 5;
    DiscriminantReport rep2 = verify_discriminant(f2, overclaim);
    CHECK(rep2.verdict == "missing components");
    CHECK(rep2.components[0].verdict == "wrong multiplicity");
}

TEST_CASE("bare fermat webs: pencil orders equal the radial excess") {
    DiscriminantReport r2 = verify_discriminant(bare(fermat(2)));
    CHECK(r2.verdict == "match");
    REQUIRE(r2.components.size() == 3);
    for (const auto& c : r2.components) {
        CHECK(c.expected_valuation == 1);
        CHECK(c.multiplicity == 1);
    }
    DiscriminantReport r3 = verify_discriminant(bare(fermat(3)));
    CHECK(r3.verdict == "match");
    REQUIRE(r3.components.size() == 6);
    CHECK(find_comp(r3, P("q", PQ))->multiplicity == 2);
    CHECK(find_comp(r3, P("p", PQ))->multiplicity == 2);
    CHECK(find_comp(r3, P("q - p - 1", PQ))->multiplicity == 1);
    for (const auto& c : r3.components) CHECK(c.expected_valuation == c.multiplicity);
}

TEST_CASE("a chart change makes every pencil finite") {
    PreFoliation pf = bare(transform_form(fermat(2), mat({1, 0, 0, 0, 1, 0, 1, 1, 2})));
    DiscriminantPrediction pred = predict_discriminant(pf);
    CHECK(pred.infinite_duals.empty());
    REQUIRE(pred.components.size() == 4);
    DiscriminantReport rep = verify_discriminant(pf, pred);
    CHECK(rep.verdict == "match");
    for (const auto& c : rep.components) {
        CHECK(c.expected_valuation == 1);
        CHECK(c.multiplicity == 1);
    }
}

TEST_CASE("random exact charts keep the slope degree") {
    std::mt19937_64 rng(20240817u);
    std::uniform_int_distribution<int> entry(-3, 3);
    PreFoliation webs[2] = {pre_foliation(P("x*y - 2*x*z + y*z"), fermat(2)), bare(fermat(3))};
    for (const PreFoliation& pf : webs) {
        int ok = 0, draws = 0;
        while (ok < 20 && draws < 100) {
            ++draws;
            std::array<int, 9> v{};
            for (int& e : v) e = entry(rng);
            try {
                ImplicitWeb W = legendre_web(pf, mat(v));
                CHECK(W.degree == pf.total_degree);
                CHECK(W.poly.deg_in("x") == pf.total_degree);
                ++ok;
            } catch (const error&) {
                // singular matrix or degenerate chart: draw again
            }
        }
        CHECK(ok == 20);
    }
}

TEST_CASE("factor discriminants divide the product discriminant") {
    PreFoliation pf = pre_foliation(P("x*y - 2*x*z + y*z"), fermat(2));
    ImplicitWeb Wfull = legendre_web(pf);
    ImplicitWeb Wf = legendre_web(bare(fermat(2)));
    MPoly dfull = squarefree_part(discriminant_in(Wfull.poly, "x"));
    CHECK(divides(squarefree_part(discriminant_in(Wf.poly, "x")), dfull));
    CHECK(divides(squarefree_part(discriminant_in(Wfull.curve_factor, "x")), dfull));
    // the conic is smooth, so the curve part contributes exactly its dual
    CHECK(MPoly::proportional(discriminant_in(Wfull.curve_factor, "x"),
                              dual_curve(P("x*y - 2*x*z + y*z")).curve));
}

TEST_CASE("multiplicity queries run on the unreduced resultant") {
    ImplicitWeb W = legendre_web(bare(fermat(2)));
    CHECK(discriminant_multiplicity(W, P("q", PQ)) == 1);
    CHECK(discriminant_multiplicity(W, P("q - p + 1", PQ)) == 1);
    // the resultant keeps the leading coefficient, which contributes one more p
    CHECK(discriminant_multiplicity(W, P("p", PQ)) == 2);
    CHECK_THROWS_WITH(discriminant_multiplicity(W, P("q - 7*p", PQ)),
                      doctest::Contains("does not divide"));
}

TEST_CASE("floating input downgrades verification to tolerance checks") {
    HomForm w = fermat(2);
    HomForm wc{w.a.with_kind(FieldKind::complex_approx, 0),
               w.b.with_kind(FieldKind::complex_approx, 0),
               w.c.with_kind(FieldKind::complex_approx, 0), w.degree};
    PreFoliation pf = pre_foliation(MPoly(), wc);
    DiscriminantReport rep = verify_discriminant(pf);
    CHECK(rep.numeric);
    CHECK(rep.verdict == "match");
    REQUIRE(rep.components.size() == 3);
    for (const auto& c : rep.components) {
        CHECK(c.verdict == "divides");
        CHECK(c.multiplicity == 1);
    }
}
