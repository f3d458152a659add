#include "sublevel/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace sublevel {

LaurentPolynomial LaurentPolynomial::constant(std::size_t d, const Rational& c) {
    LaurentPolynomial p(d);
    p.add_term(QVector(d), c);
    return p;
}

LaurentPolynomial LaurentPolynomial::monomial(const QVector& m, const Rational& c) {
    LaurentPolynomial p(m.dim());
    p.add_term(m, c);
    return p;
}

void LaurentPolynomial::add_term(const QVector& m, const Rational& c) {
    if (m.dim() != d_) throw std::invalid_argument("exponent dimension does not match polynomial dimension");
    if (sgn(c) == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
}

std::vector<QVector> LaurentPolynomial::support() const {
    std::vector<QVector> s;
    for (const auto& [m, c] : terms_) s.push_back(m);
    return s;
}

Rational LaurentPolynomial::coefficient(const QVector& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    if (o.d_ != d_) throw std::invalid_argument("dimension mismatch in polynomial sum");
    LaurentPolynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const { return *this + o.scaled(-1); }

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    if (o.d_ != d_) throw std::invalid_argument("dimension mismatch in polynomial product");
    LaurentPolynomial r(d_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(m1 + m2, c1 * c2);
    return r;
}

LaurentPolynomial LaurentPolynomial::scaled(const Rational& c) const {
    LaurentPolynomial r(d_);
    for (const auto& [m, k] : terms_) r.add_term(m, k * c);
    return r;
}

LaurentPolynomial LaurentPolynomial::pow(unsigned n) const {
    LaurentPolynomial r = constant(d_, 1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
}

bool LaurentPolynomial::has_constant_term() const { return terms_.count(QVector(d_)) > 0; }

bool LaurentPolynomial::has_negative_exponents() const {
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < d_; ++i)
            if (sgn(m[i]) < 0) return true;
    return false;
}

bool LaurentPolynomial::integer_exponents() const {
    for (const auto& [m, c] : terms_)
        if (!m.is_integral()) return false;
    return true;
}

bool LaurentPolynomial::odd_denominators() const {
    for (const auto& [m, c] : terms_)
        for (std::size_t i = 0; i < d_; ++i)
            if (mpz_even_p(m[i].get_den_mpz_t())) return false;
    return true;
}

long LaurentPolynomial::degree_bound() const {
    Rational best = 0;
    for (const auto& [m, c] : terms_) {
        Rational s = 0;
        for (std::size_t i = 0; i < d_; ++i) s += abs(m[i]);
        if (s > best) best = s;
    }
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), best.get_num_mpz_t(), best.get_den_mpz_t());
    return q.get_si();
}

std::string to_string(const LaurentPolynomial& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        Rational a = abs(c);
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        bool constant = m.is_zero();
        if (a != 1 || constant) {
            os << a.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < m.dim(); ++i) {
            if (sgn(m[i]) == 0) continue;
            if (wrote) os << '*';
            os << 'x' << (i + 1);
            if (m[i] != 1) {
                if (m[i].get_den() == 1 && sgn(m[i]) > 0) os << '^' << m[i].get_str();
                else os << "^(" << m[i].get_str() << ')';
            }
            wrote = true;
        }
    }
    return os.str();
}

}  // namespace sublevel
