#pragma once

#include "sublevel/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace sublevel {

/// Finite sum of c_m x^m with rational exponents m and nonzero rational coefficients.
class LaurentPolynomial {
public:
    explicit LaurentPolynomial(std::size_t d = 1) : d_(d) {}

    static LaurentPolynomial constant(std::size_t d, const Rational& c);
    static LaurentPolynomial monomial(const QVector& m, const Rational& c = 1);

    std::size_t dim() const { return d_; }
    const std::map<QVector, Rational>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Adds c x^m, dropping the term when the sum cancels.
    void add_term(const QVector& m, const Rational& c);
    /// Lambda(P), in lexicographic order.
    std::vector<QVector> support() const;
    Rational coefficient(const QVector& m) const;

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial scaled(const Rational& c) const;
    LaurentPolynomial pow(unsigned n) const;

    bool has_constant_term() const;
    bool has_negative_exponents() const;
    bool integer_exponents() const;
    /// True when every exponent denominator is odd, so x^m is real on all orthants.
    bool odd_denominators() const;
    /// ceil(max_m sum_i |m_i|).
    long degree_bound() const;

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.d_ == b.d_ && a.terms_ == b.terms_;
    }

private:
    std::size_t d_;
    std::map<QVector, Rational> terms_;
};

/// Canonical text form accepted back by parse_polynomial.
std::string to_string(const LaurentPolynomial& p);

}  // namespace sublevel
