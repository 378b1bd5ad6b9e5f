#include "webflat/field.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

namespace webflat {

std::string kind_name(FieldKind k) {
    switch (k) {
        case FieldKind::rational: return "rational";
        case FieldKind::quadext: return "quadext";
        case FieldKind::complex_approx: return "complex";
    }
    return "?";
}

namespace {

long double mpz_to_ld(const mpz_class& z) {
    // mpz_get_d rounds to 53 bits; go through 64-bit limbs to keep the full
    // long double mantissa
    if (mpz_sgn(z.get_mpz_t()) == 0) return 0.0L;
    size_t count = 0;
    std::vector<uint64_t> limbs((mpz_sizeinbase(z.get_mpz_t(), 2) + 63) / 64);
    mpz_export(limbs.data(), &count, -1, sizeof(uint64_t), 0, 0, z.get_mpz_t());
    long double acc = 0.0L;
    for (size_t i = count; i-- > 0;)
        acc = acc * 18446744073709551616.0L + static_cast<long double>(limbs[i]);
    return mpz_sgn(z.get_mpz_t()) < 0 ? -acc : acc;
}

} // namespace

long double mpq_to_ld(const mpq_class& q) {
    return mpz_to_ld(q.get_num()) / mpz_to_ld(q.get_den());
}

bool is_valid_quad_D(long long D) {
    if (D == 0 || D == 1) return false;
    long long m = D < 0 ? -D : D;
    for (long long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

FieldElem FieldElem::rational(long num, long den) {
    if (den == 0) throw error("division by zero constant");
    mpq_class q(num, den);
    q.canonicalize();
    return FieldElem(q);
}

FieldElem FieldElem::quad(mpq_class a, mpq_class b, long long D) {
    if (!is_valid_quad_D(D))
        throw error("sqrt(" + std::to_string(D) + "): D must be a square-free integer other than 0 and 1");
    FieldElem e;
    e.v_ = Quad{std::move(a), std::move(b), D};
    return e;
}

FieldKind FieldElem::kind() const {
    if (std::holds_alternative<mpq_class>(v_)) return FieldKind::rational;
    if (std::holds_alternative<Quad>(v_)) return FieldKind::quadext;
    return FieldKind::complex_approx;
}

long long FieldElem::quad_D() const {
    if (auto* q = std::get_if<Quad>(&v_)) return q->D;
    return 0;
}

bool FieldElem::is_zero() const {
    if (auto* r = std::get_if<mpq_class>(&v_)) return *r == 0;
    if (auto* q = std::get_if<Quad>(&v_)) return q->a == 0 && q->b == 0;
    return std::get<Cplx>(v_) == Cplx(0.0L, 0.0L);
}

bool FieldElem::is_one() const {
    if (auto* r = std::get_if<mpq_class>(&v_)) return *r == 1;
    if (auto* q = std::get_if<Quad>(&v_)) return q->a == 1 && q->b == 0;
    return std::get<Cplx>(v_) == Cplx(1.0L, 0.0L);
}

bool FieldElem::is_rational_value() const {
    if (std::holds_alternative<mpq_class>(v_)) return true;
    if (auto* q = std::get_if<Quad>(&v_)) return q->b == 0;
    return false;
}

const mpq_class& FieldElem::rational_value() const {
    if (auto* r = std::get_if<mpq_class>(&v_)) return *r;
    if (auto* q = std::get_if<Quad>(&v_); q && q->b == 0) return q->a;
    throw error("not a rational value");
}

const FieldElem::Quad& FieldElem::quad_value() const {
    if (auto* q = std::get_if<Quad>(&v_)) return *q;
    throw error("not a quadext value");
}

namespace {

// lift both operands into a common kind; throws on incompatible extensions
struct Promoted {
    FieldKind kind;
    long long D = 0;
    mpq_class ra, rb; // rational pair
    FieldElem::Quad qa, qb;
    Cplx ca, cb;
};

Promoted promote(const FieldElem& x, const FieldElem& y) {
    Promoted p;
    FieldKind kx = x.kind(), ky = y.kind();
    if (kx == FieldKind::complex_approx || ky == FieldKind::complex_approx) {
        p.kind = FieldKind::complex_approx;
        p.ca = x.to_complex();
        p.cb = y.to_complex();
        return p;
    }
    if (kx == FieldKind::quadext || ky == FieldKind::quadext) {
        long long Dx = x.quad_D(), Dy = y.quad_D();
        long long D = 0;
        if (Dx && Dy && Dx != Dy) {
            // an element with b == 0 is plain rational and may adopt the other extension
            bool xr = x.is_rational_value(), yr = y.is_rational_value();
            if (xr) D = Dy;
            else if (yr) D = Dx;
            else
                throw error("cannot mix sqrt(" + std::to_string(Dx) + ") and sqrt(" +
                            std::to_string(Dy) + ") coefficients");
        } else {
            D = Dx ? Dx : Dy;
        }
        p.kind = FieldKind::quadext;
        p.D = D;
        auto lift = [&](const FieldElem& e) -> FieldElem::Quad {
            if (e.kind() == FieldKind::rational) return {e.rational_value(), 0, D};
            const auto& q = e.quad_value();
            if (q.D == D) return q;
            return {q.a, 0, D}; // b == 0 checked above
        };
        p.qa = lift(x);
        p.qb = lift(y);
        return p;
    }
    p.kind = FieldKind::rational;
    p.ra = x.rational_value();
    p.rb = y.rational_value();
    return p;
}

} // namespace

bool FieldElem::operator==(const FieldElem& o) const {
    Promoted p = promote(*this, o);
    switch (p.kind) {
        case FieldKind::rational: return p.ra == p.rb;
        case FieldKind::quadext: return p.qa.a == p.qb.a && p.qa.b == p.qb.b;
        case FieldKind::complex_approx: return p.ca == p.cb;
    }
    return false;
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
    Promoted p = promote(*this, o);
    switch (p.kind) {
        case FieldKind::rational: return FieldElem(mpq_class(p.ra + p.rb));
        case FieldKind::quadext: return quad(p.qa.a + p.qb.a, p.qa.b + p.qb.b, p.D);
        default: return complex(p.ca + p.cb);
    }
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
    Promoted p = promote(*this, o);
    switch (p.kind) {
        case FieldKind::rational: return FieldElem(mpq_class(p.ra - p.rb));
        case FieldKind::quadext: return quad(p.qa.a - p.qb.a, p.qa.b - p.qb.b, p.D);
        default: return complex(p.ca - p.cb);
    }
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
    Promoted p = promote(*this, o);
    switch (p.kind) {
        case FieldKind::rational: return FieldElem(mpq_class(p.ra * p.rb));
        case FieldKind::quadext:
            return quad(p.qa.a * p.qb.a + p.qa.b * p.qb.b * static_cast<long>(p.D),
                        p.qa.a * p.qb.b + p.qa.b * p.qb.a, p.D);
        default: return complex(p.ca * p.cb);
    }
}

FieldElem FieldElem::inv() const {
    if (is_zero()) throw error("division by zero constant");
    switch (kind()) {
        case FieldKind::rational: return FieldElem(mpq_class(1 / rational_value()));
        case FieldKind::quadext: {
            const Quad& q = quad_value();
            mpq_class n = q.a * q.a - q.b * q.b * static_cast<long>(q.D); // nonzero: D is not a square
            return quad(q.a / n, -q.b / n, q.D);
        }
        default: return complex(Cplx(1.0L) / std::get<Cplx>(v_));
    }
}

FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inv(); }

FieldElem FieldElem::operator-() const {
    switch (kind()) {
        case FieldKind::rational: return FieldElem(mpq_class(-rational_value()));
        case FieldKind::quadext: {
            const Quad& q = quad_value();
            return quad(-q.a, -q.b, q.D);
        }
        default: return complex(-std::get<Cplx>(v_));
    }
}

Cplx FieldElem::to_complex() const {
    switch (kind()) {
        case FieldKind::rational: return Cplx(mpq_to_ld(rational_value()), 0.0L);
        case FieldKind::quadext: {
            const Quad& q = quad_value();
            long double a = mpq_to_ld(q.a), b = mpq_to_ld(q.b);
            if (q.D >= 0)
                return Cplx(a + b * std::sqrt(static_cast<long double>(q.D)), 0.0L);
            return Cplx(a, b * std::sqrt(static_cast<long double>(-q.D)));
        }
        default: return std::get<Cplx>(v_);
    }
}

int FieldElem::sign() const {
    switch (kind()) {
        case FieldKind::rational: return sgn(rational_value());
        case FieldKind::quadext: {
            const Quad& q = quad_value();
            if (q.b == 0) return sgn(q.a);
            if (q.D < 0) throw error("sign of a non-real quadext value");
            int sa = sgn(q.a), sb = sgn(q.b);
            if (sa >= 0 && sb > 0) return 1;
            if (sa > 0 && sb >= 0) return 1;
            if (sa <= 0 && sb < 0) return -1;
            if (sa < 0 && sb <= 0) return -1;
            // opposite signs: compare a^2 against b^2 D
            mpq_class t = q.a * q.a - q.b * q.b * static_cast<long>(q.D);
            return sgn(t) * sa;
        }
        default: throw error("sign of a complex value");
    }
}

namespace {

std::string rat_str(const mpq_class& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string ld_str(long double v) {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(v);
    return os.str();
}

} // namespace

std::string FieldElem::str() const {
    switch (kind()) {
        case FieldKind::rational: return rat_str(rational_value());
        case FieldKind::quadext: {
            const Quad& q = quad_value();
            if (q.b == 0) return rat_str(q.a);
            std::string root = "sqrt(" + std::to_string(q.D) + ")";
            std::string bs = q.b == 1 ? root
                           : q.b == -1 ? "-" + root
                                       : rat_str(q.b) + "*" + root;
            if (q.a == 0) return bs;
            if (sgn(q.b) < 0) {
                FieldElem nb = quad(0, -q.b, q.D);
                return "(" + rat_str(q.a) + " - " + nb.str() + ")";
            }
            return "(" + rat_str(q.a) + " + " + bs + ")";
        }
        default: {
            Cplx c = std::get<Cplx>(v_);
            if (c.imag() == 0.0L) return ld_str(c.real());
            std::string im = ld_str(std::abs(c.imag())) + "i";
            char s = c.imag() < 0 ? '-' : '+';
            return "(" + ld_str(c.real()) + s + im + ")";
        }
    }
}

} // namespace webflat
