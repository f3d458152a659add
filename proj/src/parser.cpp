#include "sublevel/parser.hpp"

#include <cctype>
#include <cstdlib>

namespace sublevel {

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& s, std::size_t d) : s_(s), d_(d) {}

    LaurentPolynomial run() {
        skip();
        if (pos_ == s_.size()) throw ParseError(pos_, "empty polynomial");
        LaurentPolynomial p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected character '") + s_[pos_] + "'");
        return p;
    }

private:
    const std::string& s_;
    std::size_t d_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
    }

    LaurentPolynomial expr() {
        LaurentPolynomial acc(d_);
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        LaurentPolynomial t = term();
        acc = neg ? acc - t : acc + t;
        while (true) {
            if (accept('+')) acc = acc + term();
            else if (accept('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    LaurentPolynomial term() {
        LaurentPolynomial acc = factor();
        while (true) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (peek('/')) {
                std::size_t at = pos_;
                ++pos_;
                LaurentPolynomial den = factor();
                if (den.size() != 1 || !den.has_constant_term())
                    throw ParseError(at, "division only by a nonzero constant");
                acc = acc.scaled(1 / den.coefficient(QVector(d_)));
            } else {
                break;
            }
        }
        return acc;
    }

    LaurentPolynomial factor() {
        skip();
        std::size_t at = pos_;
        LaurentPolynomial base = primary();
        if (!accept('^')) return base;
        std::size_t eat = pos_;
        Rational e = exponent();
        if (base.size() != 1) {
            if (e.get_den() != 1 || sgn(e) < 0) throw ParseError(at, "negative or fractional power of a non-monomial");
            if (e > 64) throw ParseError(eat, "exponent too large for expansion");
            return base.pow(static_cast<unsigned>(e.get_num().get_ui()));
        }
        const auto& [m, c] = *base.terms().begin();
        Rational coef = 1;
        if (c != 1) {
            if (e.get_den() != 1) throw ParseError(at, "fractional power of a coefficient other than 1");
            if (abs(e) > 4096) throw ParseError(eat, "exponent too large");
            long k = e.get_num().get_si();
            for (long i = 0; i < std::abs(k); ++i) coef *= c;
            if (k < 0) coef = 1 / coef;
        }
        return LaurentPolynomial::monomial(m * e, coef);
    }

    LaurentPolynomial primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPolynomial p = expr();
            expect(')');
            return p;
        }
        if (c == 'x') {
            std::size_t at = pos_;
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError(pos_, "expected variable index after 'x'");
            unsigned long idx = std::stoul(s_.substr(start, pos_ - start));
            if (idx < 1 || idx > d_) throw ParseError(at, "variable x" + std::to_string(idx) + " outside dimension " + std::to_string(d_));
            return LaurentPolynomial::monomial(QVector::unit(d_, idx - 1));
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return LaurentPolynomial::constant(d_, number());
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    Rational number() {
        std::size_t at = pos_;
        std::string whole = digits();
        std::string frac;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            frac = digits();
        }
        if (whole.empty() && frac.empty()) throw ParseError(at, "malformed number");
        mpz_class num(whole.empty() ? "0" : whole + frac, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rational r(num, den);
        r.canonicalize();
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            ++pos_;
            bool neg = false;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
            std::string ex = digits();
            if (ex.empty() || ex.size() > 4) throw ParseError(pos_, "malformed exponent in number");
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, std::stoul(ex));
            r = neg ? Rational(r / p) : Rational(r * p);
        }
        return r;
    }

    Rational exponent() {
        skip();
        std::size_t at = pos_;
        bool paren = accept('(');
        skip();
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') { neg = true; ++pos_; }
        skip();
        std::string num = digits();
        if (num.empty()) throw ParseError(pos_, "expected integer exponent");
        Rational e{mpz_class(num, 10)};
        if (paren) {
            if (accept('/')) {
                skip();
                std::string den = digits();
                if (den.empty() || mpz_class(den, 10) == 0) throw ParseError(pos_, "bad exponent denominator");
                e = Rational(mpz_class(num, 10), mpz_class(den, 10));
                e.canonicalize();
            }
            expect(')');
        } else if (peek('/')) {
            throw ParseError(at, "fractional exponents need parentheses, e.g. ^(1/3)");
        }
        return neg ? Rational(-e) : e;
    }
};

std::size_t infer_dim(const std::string& s) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != 'x') continue;
        std::size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i + 1 && j - i - 1 < 6) d = std::max<std::size_t>(d, std::stoul(s.substr(i + 1, j - i - 1)));
    }
    return d;
}

}  // namespace

LaurentPolynomial parse_polynomial(const std::string& text, std::size_t dim) {
    std::size_t inferred = infer_dim(text);
    std::size_t d = dim ? dim : std::max<std::size_t>(inferred, 1);
    return PolyParser(text, d).run();
}

std::vector<QVector> parse_domain(const std::string& text, std::size_t dim) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    std::vector<QVector> B;
    if (t == "global") return {QVector(dim)};
    if (t == "local" || t == "outer") {
        for (std::size_t i = 0; i < dim; ++i) B.push_back(QVector::unit(dim, i) * Rational(t == "local" ? 1 : -1));
        return B;
    }
    std::size_t pos = 0;
    auto offset_of = [&](std::size_t p) {
        // Map an offset in the whitespace-free copy back to the original text.
        std::size_t seen = 0;
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (std::isspace(static_cast<unsigned char>(text[i]))) continue;
            if (seen == p) return i;
            ++seen;
        }
        return text.size();
    };
    auto fail = [&](const std::string& what) -> void { throw ParseError(offset_of(pos), what); };
    bool bracket = !t.empty() && t[0] == '[';
    if (bracket) ++pos;
    while (pos < t.size() && t[pos] != ']') {
        if (t[pos] != '(') fail("expected '(' starting a generator");
        ++pos;
        std::vector<Rational> entries;
        while (true) {
            std::size_t start = pos;
            while (pos < t.size() && t[pos] != ',' && t[pos] != ')') ++pos;
            if (pos >= t.size()) fail("unterminated generator");
            try {
                entries.push_back(parse_rational(t.substr(start, pos - start)));
            } catch (const std::invalid_argument&) {
                pos = start;
                fail("bad rational entry");
            }
            if (t[pos] == ')') break;
            ++pos;
        }
        if (entries.size() != dim)
            fail("generator has " + std::to_string(entries.size()) + " entries but the polynomial has dimension " +
                 std::to_string(dim));
        B.emplace_back(entries);
        ++pos;
        if (pos < t.size() && (t[pos] == ',' || t[pos] == ';')) ++pos;
    }
    if (bracket) {
        if (pos >= t.size()) fail("expected ']'");
        ++pos;
    }
    if (pos != t.size()) fail("trailing characters in domain");
    if (B.empty()) fail("unknown domain; use global, local, outer or a generator list");
    return B;
}

}  // namespace sublevel
