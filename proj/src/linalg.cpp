#include "pg3/linalg.hpp"

namespace pg3 {

Mat4 mat4_identity() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i * 4 + i] = 1;
    return m;
}

Mat4 mat4_mul(const Field& f, const Mat4& a, const Mat4& b) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int s = 0;
            for (int k = 0; k < 4; ++k) s = f.add(s, f.mul(a[i * 4 + k], b[k * 4 + j]));
            r[i * 4 + j] = s;
        }
    return r;
}

Mat4 mat4_transpose(const Mat4& a) {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[j * 4 + i] = a[i * 4 + j];
    return r;
}

bool mat4_symmetric(const Mat4& a) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (a[i * 4 + j] != a[j * 4 + i]) return false;
    return true;
}

std::array<int, 4> mat4_apply(const Field& f, const Mat4& a, const std::array<int, 4>& x) {
    std::array<int, 4> y{};
    for (int i = 0; i < 4; ++i) {
        int s = 0;
        for (int k = 0; k < 4; ++k) s = f.add(s, f.mul(a[i * 4 + k], x[k]));
        y[i] = s;
    }
    return y;
}

bool mat4_invertible(const Field& f, const Mat4& a) {
    std::vector<std::vector<int>> rows(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rows[i][j] = a[i * 4 + j];
    return row_reduce(f, rows) == 4;
}

int row_reduce(const Field& f, std::vector<std::vector<int>>& m) {
    if (m.empty()) return 0;
    const int ncols = static_cast<int>(m[0].size());
    const int nrows = static_cast<int>(m.size());
    int rank = 0;
    for (int col = 0; col < ncols && rank < nrows; ++col) {
        int pivot = -1;
        for (int r = rank; r < nrows; ++r)
            if (m[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[rank], m[pivot]);
        const int s = f.inv(m[rank][col]);
        for (int c = col; c < ncols; ++c) m[rank][c] = f.mul(m[rank][c], s);
        for (int r = 0; r < nrows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const int factor = m[r][col];
            for (int c = col; c < ncols; ++c)
                m[r][c] = f.sub(m[r][c], f.mul(factor, m[rank][c]));
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> nullspace(const Field& f, std::vector<std::vector<int>> rows,
                                        int ncols) {
    const int rank = rows.empty() ? 0 : row_reduce(f, rows);
    std::vector<int> pivot_col_of_row;
    std::vector<bool> is_pivot(ncols, false);
    for (int r = 0; r < rank; ++r) {
        int c = 0;
        while (c < ncols && rows[r][c] == 0) ++c;
        pivot_col_of_row.push_back(c);
        is_pivot[c] = true;
    }
    std::vector<std::vector<int>> basis;
    for (int free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<int> v(ncols, 0);
        v[free_col] = 1;
        for (int r = 0; r < rank; ++r)
            v[pivot_col_of_row[r]] = f.neg(rows[r][free_col]);
        // scale so the first nonzero entry is 1
        for (int c = 0; c < ncols; ++c) {
            if (v[c] != 0) {
                const int s = f.inv(v[c]);
                for (int k = c; k < ncols; ++k) v[k] = f.mul(v[k], s);
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace

Mat4 random_invertible_matrix(const Field& f, std::uint64_t seed) {
    std::uint64_t state = seed;
    while (true) {
        Mat4 m{};
        for (int i = 0; i < 16; ++i)
            m[i] = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(f.q()));
        if (mat4_invertible(f, m)) return m;
    }
}

} // namespace pg3
