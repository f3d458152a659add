#pragma once

#include "sublevel/rational.hpp"

#include <random>

namespace testutil {

using sublevel::QVector;
using sublevel::Rational;

inline Rational rand_rational(std::mt19937_64& rng, int num_range, int den_max = 1) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_max);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline QVector rand_qvector(std::mt19937_64& rng, std::size_t d, int num_range, int den_max = 1) {
    QVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = rand_rational(rng, num_range, den_max);
    return v;
}

inline QVector rand_nonneg_int(std::mt19937_64& rng, std::size_t d, int max) {
    std::uniform_int_distribution<int> u(0, max);
    QVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = u(rng);
    return v;
}

}  // namespace testutil

namespace testutil {

inline sublevel::Rational q(long num, long den) {
    sublevel::Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace testutil
