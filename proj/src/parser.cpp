#include "webflat/parser.hpp"

#include <algorithm>
#include <cctype>

namespace webflat {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;
    FieldKind kind;
    long long D;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) throw parse_error(std::string("expected ") + what, pos);
    }

    [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, pos); }

    mpz_class digits() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected digits");
        return mpz_class(s.substr(start, pos - start));
    }

    unsigned parse_uint_small(const char* what) {
        mpz_class n = digits();
        if (n > 1000) fail(std::string(what) + " too large");
        return static_cast<unsigned>(n.get_ui());
    }

    mpq_class parse_rat() {
        skip_ws();
        int sign = 1;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            if (s[pos] == '-') sign = -1;
            ++pos;
        }
        mpz_class num = digits();
        mpz_class den = 1;
        if (accept('/')) den = digits();
        if (den == 0) fail("division by zero constant");
        mpq_class q(sign * num, den);
        q.canonicalize();
        return q;
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }

    MPoly base() {
        skip_ws();
        if (pos >= s.size()) fail("expected a factor");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            MPoly e = expr();
            expect(')', "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-')
            return MPoly::constant(FieldElem(parse_rat())).with_kind(kind, D);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t at = pos;
            std::string name = ident();
            if (name == "sqrt") {
                expect('(', "'('");
                skip_ws();
                int sign = 1;
                if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                    if (s[pos] == '-') sign = -1;
                    ++pos;
                }
                mpz_class n = digits();
                expect(')', "')'");
                if (kind != FieldKind::quadext) {
                    pos = at;
                    fail("sqrt(...) requires the quadext coefficient field");
                }
                mpz_class want(static_cast<long>(D));
                if (sign * n != want) {
                    pos = at;
                    fail("sqrt(" + mpz_class(sign * n).get_str() + ") not available in quadext:" +
                         std::to_string(D));
                }
                return MPoly::constant(FieldElem::quad(0, 1, D));
            }
            if (std::find(vars.begin(), vars.end(), name) == vars.end()) {
                pos = at;
                fail("unknown variable '" + name + "'");
            }
            return MPoly::variable(name, kind, D);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    MPoly factor() {
        MPoly b = base();
        if (accept('^')) return b.pow(parse_uint_small("exponent"));
        return b;
    }

    MPoly term() {
        MPoly f = factor();
        while (accept('*')) f *= factor();
        return f;
    }

    MPoly expr() {
        MPoly t = term();
        while (true) {
            skip_ws();
            if (pos < s.size() && s[pos] == '+') {
                ++pos;
                t += term();
            } else if (pos < s.size() && s[pos] == '-') {
                ++pos;
                t -= term();
            } else {
                return t;
            }
        }
    }
};

} // namespace

MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars,
                 FieldKind kind, long long D) {
    if (kind == FieldKind::quadext && !is_valid_quad_D(D))
        throw error("quadext field needs a square-free D other than 0 and 1");
    Parser p{text, 0, vars, kind, D};
    MPoly e = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    // make sure every declared variable is present in the context even when unused
    std::vector<std::string> all = vars;
    for (const auto& v : e.vars())
        if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
    return e.with_vars(canonical_vars(all));
}

mpq_class parse_rational(const std::string& text) {
    Parser p{text, 0, {}, FieldKind::rational, 0};
    mpq_class q = p.parse_rat();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    return q;
}

} // namespace webflat
