#include <doctest.h>
#include <webflat/jet.hpp>

#include <cmath>

using namespace webflat;
using C = std::complex<long double>;
using J = Jet2<C>;

namespace {
bool close(C a, C b, long double tol = 1e-16L) { return std::abs(a - b) < tol; }
} // namespace

TEST_CASE("polynomial jets carry exact partials") {
    // f(p, q) = p^2 q + 3 q at (2, 5)
    J p = J::var_p(C(2)), q = J::var_q(C(5));
    J f = p * p * q + q.scaled(C(3));
    CHECK(close(f.v, C(35)));   // 4*5 + 15
    CHECK(close(f.dp, C(20)));  // 2pq
    CHECK(close(f.dq, C(7)));   // p^2 + 3
    CHECK(close(f.dpp, C(10))); // 2q
    CHECK(close(f.dpq, C(4)));  // 2p
    CHECK(close(f.dqq, C(0)));
}

TEST_CASE("division inverts multiplication") {
    J p = J::var_p(C(0.7L)), q = J::var_q(C(-1.3L));
    J f = p * q + q * q + J::cst(C(2));
    J g = p * p - q + J::cst(C(5));
    J h = (f * g) / g;
    CHECK(close(h.v, f.v));
    CHECK(close(h.dp, f.dp));
    CHECK(close(h.dq, f.dq));
    CHECK(close(h.dpp, f.dpp));
    CHECK(close(h.dpq, f.dpq));
    CHECK(close(h.dqq, f.dqq));
}

TEST_CASE("reciprocal matches the analytic derivatives") {
    // 1/(p + q^2) at (1, 2): value 1/5
    J p = J::var_p(C(1)), q = J::var_q(C(2));
    J r = (p + q * q).inv();
    long double s = 5.0L;
    CHECK(close(r.v, C(1 / s)));
    CHECK(close(r.dp, C(-1 / (s * s))));
    CHECK(close(r.dq, C(-4 / (s * s))));          // -2q/s^2
    CHECK(close(r.dpp, C(2 / (s * s * s))));
    CHECK(close(r.dpq, C(8 / (s * s * s))));      // d/dp(-2q s^-2) = 4q/s^3
    CHECK(close(r.dqq, C(32 / 125.0L - 2 / 25.0L))); // 8q^2/s^3 - 2/s^2
}

TEST_CASE("order-1 views slice consistently") {
    J p = J::var_p(C(3)), q = J::var_q(C(4));
    J f = p * q * q - p * p;
    Jet1<C> t = f.trunc1();
    CHECK(close(t.v, f.v));
    CHECK(close(t.dp, f.dp));
    CHECK(close(t.dq, f.dq));
    Jet1<C> fp = f.d_p();
    CHECK(close(fp.v, f.dp));
    CHECK(close(fp.dp, f.dpp));
    CHECK(close(fp.dq, f.dpq));
    // Jet1 quotient rule
    Jet1<C> a{C(2), C(1), C(0)}, b{C(4), C(0), C(1)};
    Jet1<C> r = a / b;
    CHECK(close(r.v, C(0.5L)));
    CHECK(close(r.dp, C(0.25L)));         // a'/b
    CHECK(close(r.dq, C(-2.0L / 16.0L))); // -a b'/b^2
}
