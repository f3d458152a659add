#pragma once

#include "sublevel/rational.hpp"

#include <optional>
#include <vector>

namespace sublevel {

/// Row-major exact matrix helpers. Rows are QVectors of equal length.
using QMatrix = std::vector<QVector>;

std::size_t rank(const QMatrix& rows, std::size_t ncols);

/// Reduced row echelon form with zero rows removed.
QMatrix rref(const QMatrix& rows, std::size_t ncols);

/// Basis of {x : <r, x> = 0 for all rows r}, canonical (from the RREF).
QMatrix nullspace(const QMatrix& rows, std::size_t ncols);

/// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& square);

/// Unique x with sum_i x_i * cols[i] = target when cols are linearly independent
/// and target lies in their span; nullopt otherwise.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<QVector>& cols, const QVector& target);

/// Orthogonal projection of v onto the complement of span(basis).
QVector project_out(const QVector& v, const QMatrix& basis);

}  // namespace sublevel
