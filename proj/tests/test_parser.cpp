#include <doctest.h>
#include <webflat/parser.hpp>

using namespace webflat;

namespace {
const std::vector<std::string> XYZ{"x", "y", "z"};
}

TEST_CASE("accepts the documented forms") {
    CHECK(parse_poly("x^2 + 2*x*y - 3/4", XYZ, FieldKind::rational, 0).degree() == 2);
    CHECK(parse_poly("(x + y)^3", XYZ, FieldKind::rational, 0) ==
          parse_poly("x^3 + 3*x^2*y + 3*x*y^2 + y^3", XYZ, FieldKind::rational, 0));
    CHECK(parse_poly("0 - x", XYZ, FieldKind::rational, 0) ==
          parse_poly("-1*x", XYZ, FieldKind::rational, 0));
    CHECK(parse_poly("  x \t+\n y ", XYZ, FieldKind::rational, 0) ==
          parse_poly("x + y", XYZ, FieldKind::rational, 0));
}

TEST_CASE("rejects what the grammar leaves out") {
    auto bad = [&](const std::string& t) {
        CHECK_THROWS_AS(parse_poly(t, XYZ, FieldKind::rational, 0), parse_error);
    };
    bad("-x");         // unary minus needs an integer literal
    bad("2x");         // no implicit multiplication
    bad("x y");
    bad("x^");
    bad("x^(2)");      // exponents are integer literals
    bad("x +");
    bad("(x + y");
    bad("x + w");      // unknown variable
    bad("");
    bad("x ** 2");
    bad("x^1001");     // exponent cap
    bad("1/0");
}

TEST_CASE("error positions point at the offending token") {
    try {
        parse_poly("x + 2*w^2", XYZ, FieldKind::rational, 0);
        FAIL("should have thrown");
    } catch (const parse_error& e) {
        CHECK(e.offset == 6);
        CHECK(std::string(e.what()).find("unknown variable 'w'") != std::string::npos);
    }
}

TEST_CASE("sqrt literals need the matching quadext field") {
    MPoly f = parse_poly("sqrt(5)*x + 1", {"x"}, FieldKind::quadext, 5);
    CHECK(f.kind() == FieldKind::quadext);
    CHECK(f.lc_in("x").constant_value() == FieldElem::quad(0, 1, 5));
    CHECK_THROWS_AS(parse_poly("sqrt(5)*x", {"x"}, FieldKind::rational, 0), parse_error);
    CHECK_THROWS_AS(parse_poly("sqrt(2)*x", {"x"}, FieldKind::quadext, 5), parse_error);
    CHECK_NOTHROW(parse_poly("sqrt(-1)*x", {"x"}, FieldKind::quadext, -1));
}

TEST_CASE("declared variables all enter the context") {
    MPoly f = parse_poly("x + 1", XYZ, FieldKind::rational, 0);
    CHECK(f.vars() == XYZ);
    CHECK(f.deg_in("z") == 0);
}
