#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pg3/field.hpp"

namespace pg3 {

/// 4x4 matrix over GF(q), row-major canonical encodings.
using Mat4 = std::array<int, 16>;

Mat4 mat4_identity();
Mat4 mat4_mul(const Field& f, const Mat4& a, const Mat4& b);
Mat4 mat4_transpose(const Mat4& a);
bool mat4_invertible(const Field& f, const Mat4& a);
bool mat4_symmetric(const Mat4& a);

/// y = A x for a column 4-vector.
std::array<int, 4> mat4_apply(const Field& f, const Mat4& a, const std::array<int, 4>& x);

/// Row-reduces m in place (reduced row echelon form) and returns its rank.
/// Rows may have any equal length.
int row_reduce(const Field& f, std::vector<std::vector<int>>& m);

/// Canonical basis of the right nullspace of the ncols-wide system given by
/// rows (each row = one homogeneous equation). Basis vectors come from the
/// RREF free columns in ascending order, each scaled so its first nonzero
/// entry is 1.
std::vector<std::vector<int>> nullspace(const Field& f, std::vector<std::vector<int>> rows,
                                        int ncols);

/// Deterministic uniform-ish invertible matrix: fills entries from a
/// splitmix64 stream reduced mod q and rejects singular draws. Identical
/// output for identical (field, seed) on every platform.
Mat4 random_invertible_matrix(const Field& f, std::uint64_t seed);

} // namespace pg3
