#pragma once
#include <complex>
#include <vector>

#include "webflat/mpoly.hpp"

namespace webflat {

/// Compiled numeric view of a polynomial in up to three named variables,
/// grouped by the power of the last ("slice") variable. Built once per web,
/// evaluated many times per sample: eval_coeffs turns F(p, q, x) into the
/// univariate x-coefficient list at a point (p0, q0).
template <class C>
struct CPoly {
    struct Term {
        unsigned ep, eq;
        C c;
    };
    std::vector<std::vector<Term>> slices; // index = power of the slice variable
    unsigned max_p = 0, max_q = 0;

    static CPoly from(const MPoly& f, const std::string& vp, const std::string& vq,
                      const std::string& vx) {
        CPoly out;
        int ip = f.var_index(vp), iq = f.var_index(vq), ix = f.var_index(vx);
        for (size_t i = 0; i < f.vars().size(); ++i) {
            if (static_cast<int>(i) != ip && static_cast<int>(i) != iq &&
                static_cast<int>(i) != ix) {
                for (const auto& [e, c] : f.terms())
                    if (e[i]) throw error("CPoly: unexpected variable " + f.vars()[i]);
            }
        }
        out.slices.resize(static_cast<size_t>(std::max(0, f.deg_in(vx))) + 1);
        for (const auto& [e, c] : f.terms()) {
            Term t;
            t.ep = ip >= 0 ? e[ip] : 0;
            t.eq = iq >= 0 ? e[iq] : 0;
            t.c = static_cast<C>(c.to_complex());
            out.max_p = std::max(out.max_p, t.ep);
            out.max_q = std::max(out.max_q, t.eq);
            out.slices[ix >= 0 ? e[ix] : 0].push_back(t);
        }
        return out;
    }

    int xdeg() const { return static_cast<int>(slices.size()) - 1; }

    void eval_coeffs(C p0, C q0, std::vector<C>& out) const {
        thread_local std::vector<C> pw, qw;
        pw.assign(max_p + 1, C(1));
        qw.assign(max_q + 1, C(1));
        for (unsigned i = 1; i <= max_p; ++i) pw[i] = pw[i - 1] * p0;
        for (unsigned i = 1; i <= max_q; ++i) qw[i] = qw[i - 1] * q0;
        out.assign(slices.size(), C(0));
        for (size_t k = 0; k < slices.size(); ++k)
            for (const Term& t : slices[k]) out[k] += t.c * pw[t.ep] * qw[t.eq];
    }

    C eval(C p0, C q0, C x0) const {
        thread_local std::vector<C> cs;
        eval_coeffs(p0, q0, cs);
        C acc(0);
        for (size_t k = cs.size(); k-- > 0;) acc = acc * x0 + cs[k];
        return acc;
    }
};

template <class C>
C horner(const std::vector<C>& coeffs, C x) {
    C acc(0);
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

} // namespace webflat
