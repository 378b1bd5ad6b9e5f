#pragma once
#include <cmath>
#include <complex>
#include <vector>

#include "webflat/errors.hpp"

namespace webflat {

struct RootOpts {
    // accept x when |f(x)| <= residual_rel * sum|a_i| * max(1,|x|)^deg
    long double residual_rel = 1e-12L;
    // roots closer than cluster_sep * max(1,|x|) merge into one multiple root
    long double cluster_sep = 1e-8L;
    int max_iters = 400;
};

template <class C>
struct RootResult {
    std::vector<C> roots;      // cluster representatives
    std::vector<int> mults;    // matching multiplicities, sum = degree
    bool converged = false;
};

/// All complex roots of sum coeffs[k] x^k by simultaneous Aberth-Ehrlich
/// iteration with a Fujiwara-bound initial circle. Exact zero leading and
/// trailing coefficients are stripped first (trailing zeros become roots at 0).
template <class C>
RootResult<C> roots_univariate(std::vector<C> coeffs, const RootOpts& opts = {}) {
    using R = typename C::value_type;
    RootResult<C> out;
    while (!coeffs.empty() && coeffs.back() == C(0)) coeffs.pop_back();
    if (coeffs.size() <= 1) throw error("roots_univariate: zero or constant polynomial");
    int zero_roots = 0;
    while (coeffs.size() > 1 && coeffs.front() == C(0)) {
        coeffs.erase(coeffs.begin());
        ++zero_roots;
    }
    const int n = static_cast<int>(coeffs.size()) - 1;
    R norm1 = 0;
    for (const C& c : coeffs) norm1 += std::abs(c);

    std::vector<C> z(n);
    bool done = (n == 0);
    if (n == 1) {
        z[0] = -coeffs[0] / coeffs[1];
        done = true;
    }
    if (!done) {
        // Fujiwara bound on root magnitudes
        R r = 0;
        for (int i = 0; i < n; ++i) {
            R t = std::abs(coeffs[i] / coeffs[n]);
            if (i == 0) t /= 2;
            t = std::pow(t, R(1) / R(n - i));
            r = std::max(r, t);
        }
        r = 2 * r + R(0.5);
        C centroid = -coeffs[n - 1] / (R(n) * coeffs[n]);
        for (int j = 0; j < n; ++j) {
            R ang = R(6.283185307179586477L) * R(j) / R(n) + R(0.41);
            z[j] = centroid + C(r * std::cos(ang), r * std::sin(ang));
        }
        for (int it = 0; it < opts.max_iters && !done; ++it) {
            R worst = 0;
            for (int j = 0; j < n; ++j) {
                // f and f' by one Horner pass
                C f(0), df(0);
                for (int k = n; k >= 0; --k) {
                    df = df * z[j] + f;
                    f = f * z[j] + coeffs[k];
                }
                if (f == C(0)) continue;
                C w = (df == C(0)) ? C(1e-3L) : f / df;
                C s(0);
                for (int k = 0; k < n; ++k) {
                    if (k == j) continue;
                    C d = z[j] - z[k];
                    if (d == C(0)) d = C(1e-20L);
                    s += C(1) / d;
                }
                C denom = C(1) - w * s;
                C corr = (denom == C(0)) ? w : w / denom;
                z[j] -= corr;
                worst = std::max(worst, std::abs(corr) / (R(1) + std::abs(z[j])));
            }
            if (worst < R(1e-18L)) done = true;
        }
    }

    // residual acceptance
    out.converged = true;
    for (int j = 0; j < n; ++j) {
        C f(0);
        for (int k = n; k >= 0; --k) f = f * z[j] + coeffs[k];
        R bound = opts.residual_rel * norm1 *
                  std::pow(std::max(R(1), std::abs(z[j])), R(n));
        if (std::abs(f) > bound) out.converged = false;
    }

    // cluster nearby roots into multiple roots
    std::vector<int> group(n, -1);
    int ng = 0;
    for (int i = 0; i < n; ++i) {
        if (group[i] >= 0) continue;
        group[i] = ng;
        for (int j = i + 1; j < n; ++j) {
            if (group[j] >= 0) continue;
            if (std::abs(z[i] - z[j]) <
                opts.cluster_sep * std::max(R(1), std::abs(z[i])))
                group[j] = ng;
        }
        ++ng;
    }
    out.roots.assign(ng, C(0));
    out.mults.assign(ng, 0);
    for (int i = 0; i < n; ++i) {
        out.roots[group[i]] += z[i];
        out.mults[group[i]] += 1;
    }
    for (int g = 0; g < ng; ++g) out.roots[g] /= R(out.mults[g]);
    if (zero_roots) {
        out.roots.push_back(C(0));
        out.mults.push_back(zero_roots);
    }
    return out;
}

} // namespace webflat
