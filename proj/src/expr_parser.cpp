#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "minsurf/holomorphic.hpp"

namespace minsurf {

namespace {

// expr    := term (('+' | '-') term)*
// term    := unary (('*' | '/') unary)*
// unary   := ('+' | '-') unary | power
// power   := primary ('^' integer | '^' '(' integer ')')?
// primary := number ['i'] | 'i' | 'z' | 'zeta' | 'ζ' | func '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (accept('+')) {
                e = e + term();
            } else if (accept('-')) {
                e = e - term();
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = unary();
        for (;;) {
            if (accept('*')) {
                e = e * unary();
            } else if (accept('/')) {
                e = e / unary();
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (!accept('^')) return base;
        const bool paren = accept('(');
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        int n = 0;
        const char* first = s_.data() + start;
        const char* last = s_.data() + pos_;
        if (*first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, n);
        if (ec != std::errc() || ptr != last || first == last) {
            pos_ = start;
            fail("only integer exponents are supported");
        }
        if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
            fail("only integer exponents are supported");
        }
        if (paren) expect(')');
        return pow(base, n);
    }

    Expr number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        };
        digits();
        if (end < s_.size() && s_[end] == '.') {
            ++end;
            digits();
        }
        if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
            std::size_t exp_pos = end + 1;
            if (exp_pos < s_.size() && (s_[exp_pos] == '+' || s_[exp_pos] == '-')) ++exp_pos;
            if (exp_pos < s_.size() && std::isdigit(static_cast<unsigned char>(s_[exp_pos]))) {
                end = exp_pos;
                digits();
            }
        }
        const std::string literal(s_.substr(start, end - start));
        char* stop = nullptr;
        const double value = std::strtod(literal.c_str(), &stop);
        if (literal.empty() || stop != literal.c_str() + literal.size()) fail("malformed number");
        pos_ = end;
        if (pos_ < s_.size() && s_[pos_] == 'i' &&
            !(pos_ + 1 < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
            ++pos_;
            return Expr(Complex{0.0, value});
        }
        return Expr(value);
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            expect(')');
            return inner;
        }
        if (s_.substr(pos_, 2) == "\xCE\xB6") { // ζ
            pos_ += 2;
            return Expr::variable();
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string_view name = s_.substr(start, pos_ - start);
            if (name == "i") return Expr(Complex{0.0, 1.0});
            if (name == "z" || name == "zeta") return Expr::variable();
            Expr (*fn)(const Expr&) = nullptr;
            if (name == "exp") fn = &exp;
            if (name == "log") fn = &log;
            if (name == "sinh") fn = &sinh;
            if (name == "cosh") fn = &cosh;
            if (fn == nullptr) {
                pos_ = start;
                fail("unknown identifier '" + std::string(name) + "'");
            }
            expect('(');
            Expr arg = expr();
            expect(')');
            return fn(arg);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

Complex parse_complex(std::string_view text) {
    const Expr e = parse_expr(text);
    if (!e.is_constant()) throw ParseError(0, "expected a complex constant");
    try {
        return e.eval(Complex{});
    } catch (const Error& err) {
        throw ParseError(0, std::string("constant does not evaluate: ") + err.what());
    }
}

} // namespace minsurf
