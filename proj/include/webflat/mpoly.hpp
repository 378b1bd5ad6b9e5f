#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "webflat/field.hpp"

namespace webflat {

/// Sparse multivariate polynomial over one coefficient field.
///
/// Variables are kept in a fixed canonical order (x < y < z < p < q < u < v <
/// eps < ..., unknown names alphabetically last) so that unions of variable
/// lists and printed output are deterministic. Exponent vectors always have
/// one entry per variable of the owning polynomial. Zero coefficients are
/// never stored; a tagged kind (and extension discriminant D for quadext)
/// rides along even when the term map is empty.
class MPoly {
public:
    using Exp = std::vector<uint16_t>;
    using TermMap = std::map<Exp, FieldElem>;

    MPoly() : kind_(FieldKind::rational), D_(0) {}
    MPoly(FieldKind kind, long long D, std::vector<std::string> vars);

    static MPoly constant(FieldElem c, std::vector<std::string> vars = {});
    static MPoly variable(const std::string& name, FieldKind kind = FieldKind::rational,
                          long long D = 0);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    FieldKind kind() const { return kind_; }
    long long quad_D() const { return D_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    FieldElem constant_value() const; // 0 for the zero polynomial
    int var_index(const std::string& name) const; // -1 if absent

    int degree() const; // total degree, -1 for zero
    int deg_in(const std::string& var) const;
    int low_degree() const; // minimal total degree of a term, -1 for zero

    bool is_homogeneous() const;
    MPoly homogeneous_part(int k) const;
    MPoly lowest_part() const; // homogeneous part of minimal degree

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly& operator+=(const MPoly& o) { *this = *this + o; return *this; }
    MPoly& operator-=(const MPoly& o) { *this = *this - o; return *this; }
    MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }
    MPoly scaled(const FieldElem& c) const;
    MPoly pow(unsigned e) const;

    bool operator==(const MPoly& o) const;
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    /// true when a = c*b for a nonzero constant c (both zero also counts)
    static bool proportional(const MPoly& a, const MPoly& b);

    MPoly derivative(const std::string& var) const;
    MPoly substitute(const std::string& var, const MPoly& value) const;
    MPoly with_vars(const std::vector<std::string>& vars) const; // superset reindex
    MPoly with_kind(FieldKind kind, long long D) const;
    MPoly drop_unused_vars() const;

    FieldElem eval(const std::vector<FieldElem>& point) const; // one value per variable
    FieldElem coeff_of(const Exp& e) const;

    /// coefficients as polynomials in the remaining variables; index = power of var.
    /// The returned polynomials keep the full variable list (exponent 0 in var).
    std::vector<MPoly> coeffs_in(const std::string& var) const;
    static MPoly from_coeffs_in(const std::string& var, const std::vector<MPoly>& cs);
    MPoly lc_in(const std::string& var) const;

    /// leading coefficient in graded-lex term order; used to normalize
    /// polynomials that are only meaningful up to a scalar
    FieldElem lead_coeff() const;
    MPoly monic() const; // divide by lead_coeff (nonzero input)

    std::string str() const;

private:
    void normalize();
    static std::vector<std::string> merged_vars(const MPoly& a, const MPoly& b);

    FieldKind kind_;
    long long D_;
    std::vector<std::string> vars_;
    TermMap terms_;
};

int canonical_var_rank(const std::string& name);
std::vector<std::string> canonical_vars(std::vector<std::string> names);

} // namespace webflat
