#include <doctest.h>
#include <webflat/mpoly.hpp>
#include <webflat/parser.hpp>

using namespace webflat;

namespace {
MPoly P(const std::string& text, std::vector<std::string> vars = {"x", "y", "z"}) {
    return parse_poly(text, vars, FieldKind::rational, 0);
}
} // namespace

TEST_CASE("ring operations agree with expansion") {
    MPoly a = P("x + y");
    MPoly b = P("x - y");
    CHECK(a * b == P("x^2 - y^2"));
    CHECK(a.pow(3) == P("x^3 + 3*x^2*y + 3*x*y^2 + y^3"));
    CHECK(a + b == P("2*x"));
    CHECK((a - a).is_zero());
}

TEST_CASE("degree bookkeeping") {
    MPoly f = P("x^3*y + z^2 + 1");
    CHECK(f.degree() == 4);
    CHECK(f.low_degree() == 0);
    CHECK(f.deg_in("x") == 3);
    CHECK(f.deg_in("y") == 1);
    CHECK_FALSE(f.is_homogeneous());
    CHECK(P("x^2*y + y^2*z - z^3").is_homogeneous());
    CHECK(f.homogeneous_part(2) == P("z^2"));
    CHECK(f.lowest_part() == P("1"));
}

TEST_CASE("derivative and Euler relation") {
    MPoly f = P("x^3 + y^3 + z^3 - 3*x*y*z");
    MPoly euler = MPoly::variable("x", FieldKind::rational, 0) * f.derivative("x") +
                  MPoly::variable("y", FieldKind::rational, 0) * f.derivative("y") +
                  MPoly::variable("z", FieldKind::rational, 0) * f.derivative("z");
    CHECK(euler == f.scaled(FieldElem(3)));
}

TEST_CASE("substitute is a ring homomorphism") {
    MPoly f = P("x^2*y - 3*y*z + 4");
    MPoly g = P("x + z");
    MPoly sub = P("y^2 - 1");
    MPoly lhs = (f * g).substitute("y", sub);
    MPoly rhs = f.substitute("y", sub) * g.substitute("y", sub);
    CHECK(lhs == rhs);
    CHECK(P("x^2 - y").substitute("y", P("x^2")).is_zero());
}

TEST_CASE("coeffs_in round-trips through Horner") {
    MPoly f = P("x^3*y - 2*x*z^2 + y*z - 7");
    auto cs = f.coeffs_in("x");
    CHECK(cs.size() == 4);
    CHECK(MPoly::from_coeffs_in("x", cs) == f);
    CHECK(f.lc_in("x") == P("y"));
}

TEST_CASE("eval matches substitution") {
    MPoly f = P("x^2 + 2*x*y + 3");
    // eval order follows the context's variable list
    std::vector<FieldElem> at{FieldElem(2), FieldElem(-1), FieldElem(0)};
    CHECK(f.eval(at) == FieldElem(3)); // 4 - 4 + 3
}

TEST_CASE("proportional detects scalar multiples") {
    MPoly f = P("2*x^2 - 4*y");
    MPoly g = P("3*x^2 - 6*y");
    CHECK(MPoly::proportional(f, g));
    CHECK_FALSE(MPoly::proportional(f, P("3*x^2 - 5*y")));
    CHECK_FALSE(MPoly::proportional(f, P("0")));
    CHECK(MPoly::proportional(P("0"), P("0")));
}

TEST_CASE("kind promotion on mixed arithmetic") {
    MPoly r = P("x + 1");
    MPoly q = parse_poly("sqrt(5)*x", {"x", "y", "z"}, FieldKind::quadext, 5);
    MPoly s = r * q;
    CHECK(s.kind() == FieldKind::quadext);
    CHECK(s.quad_D() == 5);
}

TEST_CASE("canonical variable order puts coordinates first") {
    MPoly f = parse_poly("p*x + q", {"q", "p", "x"}, FieldKind::rational, 0);
    // str() walks graded-lex on the canonical order x < y < z < p < q
    CHECK(f.vars() == std::vector<std::string>{"x", "p", "q"});
}

TEST_CASE("str output reparses to the same polynomial") {
    std::vector<std::string> vars{"x", "y", "z"};
    for (const char* txt : {"x^2 - 2*x*y + y^2", "1 - x", "-1*x - 1", "x*y*z",
                            "x^3 - 1/2*x + 7/3", "0"}) {
        MPoly f = parse_poly(txt, vars, FieldKind::rational, 0);
        CHECK(parse_poly(f.str(), vars, FieldKind::rational, 0) == f);
    }
}
