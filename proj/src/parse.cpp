#include "gkcurv/parse.hpp"

#include <cctype>

namespace gkcurv {

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& names) : s_(s), names_(names) {}

    ScalarExpr run() {
        ScalarExpr v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& names_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ScalarExpr expr() {
        ScalarExpr v = term();
        while (true) {
            if (eat('+'))
                v = v + term();
            else if (eat('-'))
                v = v - term();
            else
                return v;
        }
    }
    ScalarExpr term() {
        ScalarExpr v = unary();
        while (true) {
            if (eat('*')) {
                v = v * unary();
            } else if (eat('/')) {
                v = v / unary();
            } else {
                return v;
            }
        }
    }
    ScalarExpr unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    ScalarExpr power() {
        ScalarExpr base = atom();
        if (!eat('^')) return base;
        bool neg = eat('-');
        bool paren = false;
        if (!neg && eat('(')) {
            paren = true;
            neg = eat('-');
        }
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("integer exponent expected");
        long k = std::stol(s_.substr(start, pos_ - start));
        if (paren && !eat(')')) fail("')' expected");
        return base.pow(static_cast<int>(neg ? -k : k));
    }
    ScalarExpr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return ScalarExpr(GaussRat(mpq_class(mpz_class(s_.substr(start, pos_ - start)))));
        }
        if (eat('(')) {
            ScalarExpr v = expr();
            if (!eat(')')) fail("')' expected");
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "sin" || id == "cos") return trig(id == "sin");
            if (id == "i") return ScalarExpr::I();
            for (size_t j = 0; j < names_.size(); ++j)
                if (names_[j] == id) return ScalarExpr::coord(static_cast<int>(j));
            pos_ = start;
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
    ScalarExpr trig(bool is_sin) {
        if (!eat('(')) fail("'(' expected after trig function");
        ScalarExpr arg = expr();
        if (!eat(')')) fail("')' expected");
        if (!arg.is_polynomial()) fail("trig argument must be integer-linear in the coordinates");
        std::vector<int> k(names_.size(), 0);
        for (const auto& t : arg.num().terms()) {
            int deg = 0, which = -1;
            for (int s = 0; s < kSlots; ++s) {
                if (t.m.e[s] == 0) continue;
                if (s >= kMaxCoords || t.m.e[s] != 1) fail("trig argument must be integer-linear in the coordinates");
                deg += 1;
                which = s;
            }
            if (deg == 0) fail("trig argument must not have a constant term");
            if (deg != 1 || !t.c.is_real() || t.c.re.get_den() != 1)
                fail("trig argument must be integer-linear in the coordinates");
            k[static_cast<size_t>(which)] = static_cast<int>(t.c.re.get_num().get_si());
        }
        return is_sin ? ScalarExpr::sin_lin(k) : ScalarExpr::cos_lin(k);
    }
};

}  // namespace

ScalarExpr parse_expr(const std::string& text, const std::vector<std::string>& names) {
    for (const auto& n : names)
        if (n == "i" || n == "sin" || n == "cos") throw ParseError("reserved coordinate name '" + n + "'");
    return Parser(text, names).run();
}

}  // namespace gkcurv
