#include "sublevel/rational.hpp"

#include <limits>
#include <numeric>
#include <sstream>

namespace sublevel {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    bool seen_slash = false;
    bool digit_before = false;
    bool digit_after = false;
    for (std::size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/' && !seen_slash) {
            seen_slash = true;
        } else if (c >= '0' && c <= '9') {
            (seen_slash ? digit_after : digit_before) = true;
        } else {
            throw std::invalid_argument("bad rational: " + text);
        }
    }
    if (!digit_before || (seen_slash && !digit_after)) throw std::invalid_argument("bad rational: " + text);
    std::string body = text[0] == '+' ? text.substr(1) : text;
    Rational r;
    r.set_str(body, 10);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational lcm_denominator(const std::vector<Rational>& values) {
    mpz_class l = 1;
    for (const auto& v : values) {
        mpz_class d = v.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return Rational(l);
}

const Rational& ExtRational::value() const {
    if (kind_ != Kind::Finite) throw std::logic_error("value() of infinite ExtRational");
    return value_;
}

double ExtRational::to_double() const {
    switch (kind_) {
        case Kind::NegInf: return -std::numeric_limits<double>::infinity();
        case Kind::PosInf: return std::numeric_limits<double>::infinity();
        default: return value_.get_d();
    }
}

bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != ExtRational::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    auto rank = [](ExtRational::Kind k) {
        return k == ExtRational::Kind::NegInf ? 0 : (k == ExtRational::Kind::Finite ? 1 : 2);
    };
    if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
    if (a.kind_ != ExtRational::Kind::Finite) return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const ExtRational& e) {
    if (e.is_pos_inf()) return "inf";
    if (e.is_neg_inf()) return "-inf";
    return to_string(e.value());
}

ExtRational parse_ext_rational(const std::string& text) {
    if (text == "inf" || text == "+inf") return ExtRational::pos_inf();
    if (text == "-inf") return ExtRational::neg_inf();
    return ExtRational(parse_rational(text));
}

QVector QVector::unit(std::size_t d, std::size_t i) {
    QVector v(d);
    v[i] = 1;
    return v;
}

QVector QVector::ones(std::size_t d) {
    QVector v(d);
    for (auto& x : v.v_) x = 1;
    return v;
}

bool QVector::is_zero() const {
    for (const auto& x : v_)
        if (sgn(x) != 0) return false;
    return true;
}

void check_same_dim(const QVector& a, const QVector& b) {
    if (a.dim() != b.dim())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()));
}

Rational QVector::dot(const QVector& o) const {
    check_same_dim(*this, o);
    Rational s = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) s += v_[i] * o.v_[i];
    return s;
}

Rational QVector::sum() const {
    Rational s = 0;
    for (const auto& x : v_) s += x;
    return s;
}

Rational QVector::max_abs() const {
    Rational m = 0;
    for (const auto& x : v_) {
        Rational a = abs(x);
        if (a > m) m = a;
    }
    return m;
}

bool QVector::is_integral() const {
    for (const auto& x : v_)
        if (x.get_den() != 1) return false;
    return true;
}

QVector QVector::operator+(const QVector& o) const {
    QVector r = *this;
    r += o;
    return r;
}

QVector QVector::operator-(const QVector& o) const {
    QVector r = *this;
    r -= o;
    return r;
}

QVector QVector::operator-() const {
    QVector r = *this;
    for (auto& x : r.v_) x = -x;
    return r;
}

QVector QVector::operator*(const Rational& s) const {
    QVector r = *this;
    for (auto& x : r.v_) x *= s;
    return r;
}

QVector& QVector::operator+=(const QVector& o) {
    check_same_dim(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

QVector& QVector::operator-=(const QVector& o) {
    check_same_dim(*this, o);
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

QVector QVector::normalized() const {
    Rational m = max_abs();
    if (sgn(m) == 0) return *this;
    return *this * Rational(1 / m);
}

bool operator<(const QVector& a, const QVector& b) {
    if (a.v_.size() != b.v_.size()) return a.v_.size() < b.v_.size();
    for (std::size_t i = 0; i < a.v_.size(); ++i) {
        int c = cmp(a.v_[i], b.v_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::string to_string(const QVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) os << ',';
        os << to_string(v[i]);
    }
    os << ')';
    return os.str();
}

}  // namespace sublevel
