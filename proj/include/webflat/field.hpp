#pragma once
#include <complex>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "webflat/errors.hpp"

namespace webflat {

// Approximate coefficients live in extended precision: on x86-64 a long double
// carries a 64-bit mantissa per component, which is the default working precision.
using Cplx = std::complex<long double>;

enum class FieldKind { rational, quadext, complex_approx };

std::string kind_name(FieldKind k);

long double mpq_to_ld(const mpq_class& q);
bool is_valid_quad_D(long long D); // square-free, not 0 or 1

/// One coefficient: exact rational, exact a+b*sqrt(D), or floating complex.
/// Exact kinds are closed under field operations; mixing promotes
/// rational -> quadext(D) -> complex. Two distinct extensions never mix.
class FieldElem {
public:
    struct Quad {
        mpq_class a, b; // a + b*sqrt(D)
        long long D;
    };

    FieldElem() : v_(mpq_class(0)) {}
    FieldElem(int n) : v_(mpq_class(n)) {}
    FieldElem(long n) : v_(mpq_class(static_cast<long>(n))) {}
    explicit FieldElem(mpq_class q) : v_(std::move(q)) {}

    static FieldElem rational(mpq_class q) { return FieldElem(std::move(q)); }
    static FieldElem rational(long num, long den);
    static FieldElem quad(mpq_class a, mpq_class b, long long D);
    static FieldElem complex(Cplx c) { FieldElem e; e.v_ = c; return e; }

    FieldKind kind() const;
    long long quad_D() const; // 0 unless quadext

    bool is_zero() const;
    bool is_one() const;
    bool is_rational_value() const; // exact and representable as a rational
    const mpq_class& rational_value() const;
    const Quad& quad_value() const;

    bool operator==(const FieldElem& o) const;
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

    FieldElem operator+(const FieldElem& o) const;
    FieldElem operator-(const FieldElem& o) const;
    FieldElem operator*(const FieldElem& o) const;
    FieldElem operator/(const FieldElem& o) const;
    FieldElem operator-() const;
    FieldElem inv() const;

    FieldElem& operator+=(const FieldElem& o) { *this = *this + o; return *this; }
    FieldElem& operator-=(const FieldElem& o) { *this = *this - o; return *this; }
    FieldElem& operator*=(const FieldElem& o) { *this = *this * o; return *this; }

    Cplx to_complex() const;

    // exact sign for real exact kinds (rational, quadext with D>0);
    // throws for complex kind and for quadext with D<0 and b != 0
    int sign() const;

    std::string str() const;

private:
    std::variant<mpq_class, Quad, Cplx> v_;
};

} // namespace webflat
