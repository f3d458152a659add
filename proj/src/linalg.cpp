#include "sublevel/linalg.hpp"

namespace sublevel {

namespace {

// In-place Gauss-Jordan; returns pivot columns.
std::vector<std::size_t> gauss_jordan(QMatrix& m, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        std::size_t width = m[row].dim();
        Rational inv = 1 / m[row][col];
        for (std::size_t c = 0; c < width; ++c) m[row][c] *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col];
            for (std::size_t c = 0; c < width; ++c) m[r][c] -= f * m[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

}  // namespace

std::size_t rank(const QMatrix& rows, std::size_t ncols) {
    QMatrix m = rows;
    return gauss_jordan(m, ncols).size();
}

QMatrix rref(const QMatrix& rows, std::size_t ncols) {
    QMatrix m = rows;
    gauss_jordan(m, ncols);
    return m;
}

QMatrix nullspace(const QMatrix& rows, std::size_t ncols) {
    QMatrix m = rows;
    auto pivots = gauss_jordan(m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto p : pivots) is_pivot[p] = true;
    QMatrix basis;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        QVector v(ncols);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(v);
    }
    return rref(basis, ncols);
}

std::optional<QMatrix> inverse(const QMatrix& square) {
    std::size_t n = square.size();
    QMatrix aug;
    for (std::size_t i = 0; i < n; ++i) {
        QVector row(2 * n);
        for (std::size_t j = 0; j < n; ++j) row[j] = square[i][j];
        row[n + i] = 1;
        aug.push_back(row);
    }
    auto pivots = gauss_jordan(aug, n);
    if (pivots.size() < n) return std::nullopt;
    QMatrix inv;
    for (std::size_t i = 0; i < n; ++i) {
        QVector row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = aug[i][n + j];
        inv.push_back(row);
    }
    return inv;
}

std::optional<std::vector<Rational>> solve_in_span(const std::vector<QVector>& cols, const QVector& target) {
    std::size_t k = cols.size();
    std::size_t d = target.dim();
    QMatrix aug;
    for (std::size_t r = 0; r < d; ++r) {
        QVector row(k + 1);
        for (std::size_t c = 0; c < k; ++c) row[c] = cols[c][r];
        row[k] = target[r];
        aug.push_back(row);
    }
    auto pivots = gauss_jordan(aug, k + 1);
    if (!pivots.empty() && pivots.back() == k) return std::nullopt;
    if (pivots.size() < k) return std::nullopt;
    std::vector<Rational> x(k);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][k];
    return x;
}

QVector project_out(const QVector& v, const QMatrix& basis) {
    if (basis.empty()) return v;
    std::size_t k = basis.size();
    // Solve (B B^T) c = B v, then v - B^T c.
    QMatrix gram;
    for (std::size_t i = 0; i < k; ++i) {
        QVector row(k + 1);
        for (std::size_t j = 0; j < k; ++j) row[j] = basis[i].dot(basis[j]);
        row[k] = basis[i].dot(v);
        gram.push_back(row);
    }
    auto pivots = gauss_jordan(gram, k + 1);
    QVector out = v;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] >= k) break;
        out -= basis[pivots[r]] * gram[r][k];
    }
    return out;
}

}  // namespace sublevel
