#include "knotsurg/jacobi.hpp"

#include <cctype>

namespace knotsurg {

namespace {

// expr    := term (('+' | '-') term)*
// term    := unary (['*'] unary)*
// unary   := '-' unary | power
// power   := primary ('^' integer)?
// primary := rational | name | name '(' args ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    DiagramSum parse() {
        DiagramSum v = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return v;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("diagram expression: " + msg + " at position " + std::to_string(i_));
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool starts_primary() {
        skip();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
    }
    long integer() {
        skip();
        size_t st = i_;
        if (i_ < s_.size() && s_[i_] == '-') ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (st == i_ || (i_ == st + 1 && s_[st] == '-')) fail("expected an integer");
        return std::stol(s_.substr(st, i_ - st));
    }
    DiagramSum expr() {
        DiagramSum v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    DiagramSum term() {
        DiagramSum v = unary();
        for (;;) {
            if (eat('*')) v = v * unary();
            else if (starts_primary()) v = v * unary();
            else return v;
        }
    }
    DiagramSum unary() {
        if (eat('-')) return unary().scaled(Rational(-1));
        return power_();
    }
    DiagramSum power_() {
        DiagramSum v = primary();
        if (eat('^')) {
            long e = integer();
            if (e < 0 || e > 64) fail("exponent out of range");
            v = power(v, static_cast<int>(e));
        }
        return v;
    }
    DiagramSum primary() {
        skip();
        if (i_ >= s_.size()) fail("unexpected end");
        char c = s_[i_];
        if (c == '(') {
            ++i_;
            DiagramSum v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = i_;
            while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/')) ++i_;
            return DiagramSum::one().scaled(Rational::parse(s_.substr(st, i_ - st)));
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
        size_t st = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        std::string name = s_.substr(st, i_ - st);
        if (name == "strut") return DiagramSum(strut());
        if (name == "theta") return DiagramSum(theta());
        if (name == "circle") return DiagramSum(circle_diagram());
        if (name == "one") return DiagramSum::one();
        if (name == "pair" || name == "d") {
            expect('(');
            DiagramSum a = expr();
            expect(';');
            DiagramSum b = expr();
            expect(')');
            return name == "pair" ? pair(a, b) : partial(a, b);
        }
        if (name == "omega") {
            expect('(');
            long q = integer();
            expect(',');
            long deg = integer();
            expect(')');
            if (deg < 0 || deg > 8) fail("omega degree out of range");
            return omega_q(q, static_cast<int>(deg));
        }
        if (name == "wheel" || name == "chain" || name == "bwheel" || name == "necklace") {
            expect('(');
            long k = integer();
            expect(')');
            if (k < 1 || k > 12) fail(name + " size out of range");
            int ki = static_cast<int>(k);
            if (name == "wheel") return DiagramSum(wheel(ki));
            if (name == "chain") return DiagramSum(bubble_chain(ki));
            if (name == "bwheel") return DiagramSum(bubbled_wheel(ki));
            return DiagramSum(necklace(ki));
        }
        fail("unknown diagram '" + name + "'");
    }
};

}  // namespace

DiagramSum parse_diagram_expr(const std::string& text) {
    Parser p(text);
    return p.parse();
}

}  // namespace knotsurg
