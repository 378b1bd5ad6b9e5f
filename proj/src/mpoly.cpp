#include "webflat/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace webflat {

int canonical_var_rank(const std::string& name) {
    static const std::map<std::string, int> table = {
        {"x", 0}, {"y", 1}, {"z", 2}, {"p", 3}, {"q", 4},
        {"u", 5}, {"v", 6}, {"eps", 7}, {"s", 8}, {"t", 9}, {"w", 10},
    };
    auto it = table.find(name);
    return it == table.end() ? 100 : it->second;
}

static bool var_less(const std::string& a, const std::string& b) {
    int ra = canonical_var_rank(a), rb = canonical_var_rank(b);
    return ra != rb ? ra < rb : a < b;
}

std::vector<std::string> canonical_vars(std::vector<std::string> names) {
    std::sort(names.begin(), names.end(), var_less);
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

MPoly::MPoly(FieldKind kind, long long D, std::vector<std::string> vars)
    : kind_(kind), D_(D), vars_(canonical_vars(std::move(vars))) {}

MPoly MPoly::constant(FieldElem c, std::vector<std::string> vars) {
    MPoly p(c.kind(), c.quad_D(), std::move(vars));
    if (!c.is_zero()) p.terms_[Exp(p.vars_.size(), 0)] = std::move(c);
    return p;
}

MPoly MPoly::variable(const std::string& name, FieldKind kind, long long D) {
    MPoly p(kind, D, {name});
    p.terms_[Exp{1}] = FieldElem(1);
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Exp& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint16_t x) { return x == 0; });
}

FieldElem MPoly::constant_value() const {
    if (terms_.empty()) return FieldElem(0);
    if (!is_constant()) throw error("polynomial is not constant: " + str());
    return terms_.begin()->second;
}

int MPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

static int exp_total(const MPoly::Exp& e) {
    int t = 0;
    for (uint16_t x : e) t += x;
    return t;
}

int MPoly::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, exp_total(e));
    return d;
}

int MPoly::low_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int t = exp_total(e);
        if (d < 0 || t < d) d = t;
    }
    return d;
}

int MPoly::deg_in(const std::string& var) const {
    int i = var_index(var);
    if (i < 0) return is_zero() ? -1 : 0;
    int d = is_zero() ? -1 : 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
    return d;
}

bool MPoly::is_homogeneous() const {
    return is_zero() || degree() == low_degree();
}

MPoly MPoly::homogeneous_part(int k) const {
    MPoly r(kind_, D_, vars_);
    for (const auto& [e, c] : terms_)
        if (exp_total(e) == k) r.terms_[e] = c;
    return r;
}

MPoly MPoly::lowest_part() const {
    return is_zero() ? *this : homogeneous_part(low_degree());
}

void MPoly::normalize() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

std::vector<std::string> MPoly::merged_vars(const MPoly& a, const MPoly& b) {
    std::vector<std::string> m = a.vars_;
    m.insert(m.end(), b.vars_.begin(), b.vars_.end());
    return canonical_vars(std::move(m));
}

static void promote_pair(FieldKind ka, long long Da, FieldKind kb, long long Db,
                         FieldKind& k, long long& D) {
    if (ka == FieldKind::complex_approx || kb == FieldKind::complex_approx) {
        k = FieldKind::complex_approx;
        D = 0;
        return;
    }
    if (ka == FieldKind::quadext || kb == FieldKind::quadext) {
        if (Da && Db && Da != Db)
            throw error("cannot mix sqrt(" + std::to_string(Da) + ") and sqrt(" +
                        std::to_string(Db) + ") polynomials");
        k = FieldKind::quadext;
        D = Da ? Da : Db;
        return;
    }
    k = FieldKind::rational;
    D = 0;
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    MPoly r(kind_, D_, vars);
    std::vector<int> pos(vars_.size());
    for (size_t i = 0; i < vars_.size(); ++i) {
        pos[i] = r.var_index(vars_[i]);
        if (pos[i] < 0) throw internal_error("with_vars: target list drops " + vars_[i]);
    }
    for (const auto& [e, c] : terms_) {
        Exp ne(r.vars_.size(), 0);
        for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
        r.terms_[ne] = c;
    }
    return r;
}

MPoly MPoly::with_kind(FieldKind kind, long long D) const {
    MPoly r(kind, D, vars_);
    for (const auto& [e, c] : terms_) {
        FieldElem nc = c;
        if (kind == FieldKind::complex_approx && c.kind() != FieldKind::complex_approx)
            nc = FieldElem::complex(c.to_complex());
        else if (kind == FieldKind::quadext && c.kind() == FieldKind::rational)
            nc = FieldElem::quad(c.rational_value(), 0, D);
        else if (kind == FieldKind::quadext && c.kind() == FieldKind::quadext && c.quad_D() != D) {
            if (!c.is_rational_value())
                throw error("cannot retag sqrt(" + std::to_string(c.quad_D()) + ") into sqrt(" +
                            std::to_string(D) + ")");
            nc = FieldElem::quad(c.rational_value(), 0, D);
        } else if (kind == FieldKind::rational && c.kind() != FieldKind::rational) {
            nc = FieldElem(c.rational_value()); // throws unless genuinely rational
        }
        r.terms_[e] = nc;
    }
    return r;
}

MPoly MPoly::drop_unused_vars() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) used[i] = true;
    std::vector<std::string> keep;
    for (size_t i = 0; i < vars_.size(); ++i)
        if (used[i]) keep.push_back(vars_[i]);
    MPoly r(kind_, D_, keep);
    for (const auto& [e, c] : terms_) {
        Exp ne;
        for (size_t i = 0; i < e.size(); ++i)
            if (used[i]) ne.push_back(e[i]);
        r.terms_[ne] = c;
    }
    return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
    FieldKind k;
    long long D;
    promote_pair(kind_, D_, o.kind_, o.D_, k, D);
    auto mv = merged_vars(*this, o);
    MPoly a = with_vars(mv).with_kind(k, D);
    MPoly b = o.with_vars(mv).with_kind(k, D);
    for (const auto& [e, c] : b.terms_) {
        auto it = a.terms_.find(e);
        if (it == a.terms_.end())
            a.terms_[e] = c;
        else
            it->second += c;
    }
    a.normalize();
    return a;
}

MPoly MPoly::operator-() const {
    MPoly r(kind_, D_, vars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    FieldKind k;
    long long D;
    promote_pair(kind_, D_, o.kind_, o.D_, k, D);
    auto mv = merged_vars(*this, o);
    MPoly a = with_vars(mv).with_kind(k, D);
    MPoly b = o.with_vars(mv).with_kind(k, D);
    MPoly r(k, D, mv);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Exp e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = static_cast<uint16_t>(ea[i] + eb[i]);
            FieldElem prod = ca * cb;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end())
                r.terms_[e] = prod;
            else
                it->second += prod;
        }
    }
    r.normalize();
    return r;
}

MPoly MPoly::scaled(const FieldElem& c) const {
    if (c.is_zero()) return MPoly(kind_, D_, vars_);
    MPoly r(kind_, D_, vars_);
    for (const auto& [e, cc] : terms_) r.terms_[e] = cc * c;
    r.normalize();
    // scaling by a wider-kind constant promotes the polynomial
    if (c.kind() != kind_ || c.quad_D() != D_) {
        FieldKind k;
        long long D;
        promote_pair(kind_, D_, c.kind(), c.quad_D(), k, D);
        r.kind_ = k;
        r.D_ = D;
    }
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly r = MPoly::constant(FieldElem(1), vars_).with_kind(kind_, D_);
    MPoly base = *this;
    while (e) {
        if (e & 1) r *= base;
        base = (e >>= 1) ? base * base : base;
    }
    return r;
}

bool MPoly::operator==(const MPoly& o) const { return (*this - o).is_zero(); }

bool MPoly::proportional(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.scaled(b.lead_coeff()) == b.scaled(a.lead_coeff());
}

MPoly MPoly::derivative(const std::string& var) const {
    int i = var_index(var);
    MPoly r(kind_, D_, vars_);
    if (i < 0) return r;
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exp ne = e;
        ne[i] -= 1;
        r.terms_[ne] = c * FieldElem(static_cast<long>(e[i]));
    }
    r.normalize();
    return r;
}

std::vector<MPoly> MPoly::coeffs_in(const std::string& var) const {
    int i = var_index(var);
    int d = deg_in(var);
    if (d < 0) d = 0;
    std::vector<MPoly> cs(static_cast<size_t>(d) + 1, MPoly(kind_, D_, vars_));
    for (const auto& [e, c] : terms_) {
        int k = i < 0 ? 0 : e[i];
        Exp ne = e;
        if (i >= 0) ne[i] = 0;
        cs[k].terms_[ne] = c;
    }
    return cs;
}

MPoly MPoly::from_coeffs_in(const std::string& var, const std::vector<MPoly>& cs) {
    if (cs.empty()) throw internal_error("from_coeffs_in: empty coefficient list");
    MPoly v = MPoly::variable(var, cs[0].kind(), cs[0].quad_D());
    MPoly r = cs.back();
    for (size_t k = cs.size() - 1; k-- > 0;) r = r * v + cs[k];
    return r;
}

MPoly MPoly::lc_in(const std::string& var) const {
    if (is_zero()) return *this;
    return coeffs_in(var).back();
}

MPoly MPoly::substitute(const std::string& var, const MPoly& value) const {
    if (var_index(var) < 0) return *this;
    auto cs = coeffs_in(var); // var already cleared from each coefficient
    MPoly r = cs.back();
    for (size_t k = cs.size() - 1; k-- > 0;) r = r * value + cs[k];
    return r;
}

FieldElem MPoly::eval(const std::vector<FieldElem>& point) const {
    if (point.size() != vars_.size())
        throw error("eval: expected " + std::to_string(vars_.size()) + " values");
    FieldElem acc(0);
    for (const auto& [e, c] : terms_) {
        FieldElem t = c;
        for (size_t i = 0; i < e.size(); ++i)
            for (uint16_t k = 0; k < e[i]; ++k) t *= point[i];
        acc += t;
    }
    return acc;
}

FieldElem MPoly::coeff_of(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? FieldElem(0) : it->second;
}

// graded-lex maximal term
static MPoly::TermMap::const_iterator lead_term(const MPoly::TermMap& t) {
    auto best = t.begin();
    int bd = exp_total(best->first);
    for (auto it = std::next(t.begin()); it != t.end(); ++it) {
        int d = exp_total(it->first);
        if (d > bd || (d == bd && it->first > best->first)) {
            best = it;
            bd = d;
        }
    }
    return best;
}

FieldElem MPoly::lead_coeff() const {
    if (is_zero()) return FieldElem(0);
    return lead_term(terms_)->second;
}

MPoly MPoly::monic() const {
    if (is_zero()) throw error("monic: zero polynomial");
    return scaled(lead_coeff().inv());
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
        int da = exp_total(a->first), db = exp_total(b->first);
        return da != db ? da > db : a->first > b->first;
    });
    std::ostringstream os;
    bool first = true;
    for (auto* t : ts) {
        std::string cs = t->second.str();
        bool neg = !cs.empty() && cs[0] == '-';
        if (!first) {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        // leading term keeps its sign inside the coefficient ("-1*x", not "-x",
        // so the output stays inside the input grammar)
        first = false;
        std::string mono;
        for (size_t i = 0; i < t->first.size(); ++i) {
            if (!t->first[i]) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (t->first[i] > 1) mono += "^" + std::to_string(t->first[i]);
        }
        if (mono.empty())
            os << cs;
        else if (cs == "1")
            os << mono;
        else
            os << cs << "*" << mono;
    }
    return os.str();
}

} // namespace webflat
