#pragma once

// Dense exact linear algebra over Q: reduced row echelon form, null spaces,
// and linear solves.  Sizes here are tiny (dimension <= a few hundred), so
// plain fraction arithmetic is fine.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

namespace polycert {

using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;  // row major

namespace linalg {

struct Echelon {
    QMatrix m;
    std::vector<std::size_t> pivot_cols;
};

inline Echelon rref(QMatrix a) {
    Echelon e;
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        mpq_class inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.m = std::move(a);
    return e;
}

// Basis of { x : A x = 0 }.
inline std::vector<QVector> null_space(const QMatrix& a) {
    std::size_t cols = a.empty() ? 0 : a[0].size();
    Echelon e = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        QVector v(cols, mpq_class(0));
        v[free_c] = 1;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            v[e.pivot_cols[i]] = -e.m[i][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves A x = b; nullopt when inconsistent, some solution when
// underdetermined.
inline std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    if (b.size() != rows) throw std::invalid_argument("solve: size mismatch");
    QMatrix aug(rows, QVector(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    Echelon e = rref(std::move(aug));
    for (std::size_t c : e.pivot_cols)
        if (c == cols) return std::nullopt;  // row [0 ... 0 | 1]
    QVector x(cols, mpq_class(0));
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
        x[e.pivot_cols[i]] = e.m[i][cols];
    return x;
}

}  // namespace linalg
}  // namespace polycert
