#pragma once
#include <complex>

namespace webflat {

/// Order-1 jet in two directions (value and first partials).
template <class C>
struct Jet1 {
    C v{}, dp{}, dq{};

    Jet1 operator+(const Jet1& o) const { return {v + o.v, dp + o.dp, dq + o.dq}; }
    Jet1 operator-(const Jet1& o) const { return {v - o.v, dp - o.dp, dq - o.dq}; }
    Jet1 operator-() const { return {-v, -dp, -dq}; }
    Jet1 operator*(const Jet1& o) const {
        return {v * o.v, dp * o.v + v * o.dp, dq * o.v + v * o.dq};
    }
    Jet1 inv() const {
        C u = C(1) / v;
        C u2 = u * u;
        return {u, -dp * u2, -dq * u2};
    }
    Jet1 operator/(const Jet1& o) const { return *this * o.inv(); }
    Jet1 scaled(C c) const { return {v * c, dp * c, dq * c}; }
};

/// Order-2 truncated Taylor jet in two directions. Enough structure to push
/// implicit slope derivatives through products, quotients and the curvature
/// solve; everything past total order 2 is dropped.
template <class C>
struct Jet2 {
    C v{}, dp{}, dq{}, dpp{}, dpq{}, dqq{};

    static Jet2 cst(C c) { return {c, C(0), C(0), C(0), C(0), C(0)}; }
    static Jet2 var_p(C value) { return {value, C(1), C(0), C(0), C(0), C(0)}; }
    static Jet2 var_q(C value) { return {value, C(0), C(1), C(0), C(0), C(0)}; }

    Jet2 operator+(const Jet2& o) const {
        return {v + o.v, dp + o.dp, dq + o.dq, dpp + o.dpp, dpq + o.dpq, dqq + o.dqq};
    }
    Jet2 operator-(const Jet2& o) const {
        return {v - o.v, dp - o.dp, dq - o.dq, dpp - o.dpp, dpq - o.dpq, dqq - o.dqq};
    }
    Jet2 operator-() const { return {-v, -dp, -dq, -dpp, -dpq, -dqq}; }
    Jet2 operator*(const Jet2& o) const {
        return {v * o.v,
                dp * o.v + v * o.dp,
                dq * o.v + v * o.dq,
                dpp * o.v + C(2) * dp * o.dp + v * o.dpp,
                dpq * o.v + dp * o.dq + dq * o.dp + v * o.dpq,
                dqq * o.v + C(2) * dq * o.dq + v * o.dqq};
    }
    Jet2 inv() const {
        C u = C(1) / v;
        C u2 = u * u, u3 = u2 * u;
        return {u,
                -dp * u2,
                -dq * u2,
                C(2) * dp * dp * u3 - dpp * u2,
                C(2) * dp * dq * u3 - dpq * u2,
                C(2) * dq * dq * u3 - dqq * u2};
    }
    Jet2 operator/(const Jet2& o) const { return *this * o.inv(); }
    Jet2 scaled(C c) const { return {v * c, dp * c, dq * c, dpp * c, dpq * c, dqq * c}; }

    Jet1<C> trunc1() const { return {v, dp, dq}; }
    Jet1<C> d_p() const { return {dp, dpp, dpq}; } // partial in p as an order-1 jet
    Jet1<C> d_q() const { return {dq, dpq, dqq}; }
};

} // namespace webflat
