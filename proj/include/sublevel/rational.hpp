#pragma once

#include <gmpxx.h>

#include <compare>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublevel {

using Rational = mpq_class;

/// Parse "p", "-p", "p/q" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);
Rational lcm_denominator(const std::vector<Rational>& values);

/// Rational extended by -inf and +inf.
class ExtRational {
public:
    enum class Kind { NegInf, Finite, PosInf };

    ExtRational() : kind_(Kind::Finite), value_(0) {}
    ExtRational(const Rational& v) : kind_(Kind::Finite), value_(v) {}
    ExtRational(long v) : kind_(Kind::Finite), value_(v) {}

    static ExtRational pos_inf() { ExtRational e; e.kind_ = Kind::PosInf; return e; }
    static ExtRational neg_inf() { ExtRational e; e.kind_ = Kind::NegInf; return e; }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    const Rational& value() const;
    double to_double() const;

    friend bool operator==(const ExtRational& a, const ExtRational& b);
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

private:
    Kind kind_;
    Rational value_;
};

/// "p/q", "inf", "-inf".
std::string to_string(const ExtRational& e);
ExtRational parse_ext_rational(const std::string& text);

/// A d-tuple of exact rationals: exponents, cone generators and normals.
class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t d) : v_(d, Rational(0)) {}
    QVector(std::initializer_list<Rational> init) : v_(init) {}
    explicit QVector(std::vector<Rational> entries) : v_(std::move(entries)) {}

    static QVector unit(std::size_t d, std::size_t i);
    static QVector ones(std::size_t d);

    std::size_t dim() const { return v_.size(); }
    Rational& operator[](std::size_t i) { return v_[i]; }
    const Rational& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<Rational>& entries() const { return v_; }

    bool is_zero() const;
    Rational dot(const QVector& o) const;
    Rational sum() const;
    Rational max_abs() const;
    bool is_integral() const;

    QVector operator+(const QVector& o) const;
    QVector operator-(const QVector& o) const;
    QVector operator-() const;
    QVector operator*(const Rational& s) const;
    QVector& operator+=(const QVector& o);
    QVector& operator-=(const QVector& o);

    /// Positive rescaling to max-norm 1; the zero vector is returned unchanged.
    QVector normalized() const;

    friend bool operator==(const QVector& a, const QVector& b) { return a.v_ == b.v_; }
    friend bool operator<(const QVector& a, const QVector& b);

private:
    std::vector<Rational> v_;
};

std::string to_string(const QVector& v);
void check_same_dim(const QVector& a, const QVector& b);

}  // namespace sublevel
