#include "eqh/snf.hpp"

#include <algorithm>

namespace eqh {

namespace {

struct Worker {
    IntMatrix a;
    IntMatrix u; // row transform: u * input * v = a
    IntMatrix v;
    size_t rows, cols;
    bool track;

    Worker(IntMatrix m, bool with_transforms)
        : a(std::move(m)), rows(a.size()), cols(rows ? a[0].size() : 0),
          track(with_transforms) {
        if (track) {
            u.assign(rows, std::vector<Int>(rows, 0));
            for (size_t i = 0; i < rows; ++i) u[i][i] = 1;
            v.assign(cols, std::vector<Int>(cols, 0));
            for (size_t i = 0; i < cols; ++i) v[i][i] = 1;
        }
    }

    void row_swap(size_t i, size_t j) {
        std::swap(a[i], a[j]);
        if (track) std::swap(u[i], u[j]);
    }
    void col_swap(size_t i, size_t j) {
        for (auto& row : a) std::swap(row[i], row[j]);
        if (track)
            for (auto& row : v) std::swap(row[i], row[j]);
    }
    void row_add(size_t dst, size_t src, const Int& f) {
        for (size_t k = 0; k < cols; ++k) a[dst][k] += f * a[src][k];
        if (track)
            for (size_t k = 0; k < rows; ++k) u[dst][k] += f * u[src][k];
    }
    void col_add(size_t dst, size_t src, const Int& f) {
        for (size_t i = 0; i < rows; ++i) a[i][dst] += f * a[i][src];
        if (track)
            for (size_t i = 0; i < cols; ++i) v[i][dst] += f * v[i][src];
    }
    void row_neg(size_t i) {
        for (auto& x : a[i]) x = -x;
        if (track)
            for (auto& x : u[i]) x = -x;
    }

    void reduce() {
        size_t t = 0;
        while (t < rows && t < cols) {
            // Find the nonzero entry of least magnitude in the working block.
            std::optional<std::pair<size_t, size_t>> pivot;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j) {
                    if (a[i][j] == 0) continue;
                    if (!pivot || cmpabs(a[i][j], a[pivot->first][pivot->second]) < 0)
                        pivot = {{i, j}};
                }
            if (!pivot) break;
            row_swap(t, pivot->first);
            col_swap(t, pivot->second);
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int f = a[i][t] / a[t][t];
                row_add(i, t, -f);
                if (a[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int f = a[t][j] / a[t][t];
                col_add(j, t, -f);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue; // pivot shrank; repeat at the same t
            // Divisibility: fold any non-multiple into the pivot's column.
            bool divides = true;
            for (size_t i = t + 1; i < rows && divides; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (!divides) continue;
            if (a[t][t] < 0) row_neg(t);
            ++t;
        }
    }

    static int cmpabs(const Int& x, const Int& y) {
        return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t());
    }
};

} // namespace

SmithResult smith_normal_form(IntMatrix m) {
    Worker w(std::move(m), false);
    w.reduce();
    SmithResult out;
    const size_t n = std::min(w.rows, w.cols);
    for (size_t t = 0; t < n; ++t) {
        if (w.a[t][t] == 0) break;
        out.diagonal.push_back(w.a[t][t]);
    }
    out.rank = out.diagonal.size();
    return out;
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix& a,
                                              const std::vector<Int>& b) {
    const size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    Worker w(a, true);
    w.reduce();
    // a = U^{-1} D V^{-1} with w.u * a * w.v = D, so solve D y = U b, x = V y.
    std::vector<Int> ub(rows, 0);
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < rows; ++k) ub[i] += w.u[i][k] * b[k];
    std::vector<Int> y(cols, 0);
    const size_t n = std::min(rows, cols);
    for (size_t t = 0; t < rows; ++t) {
        const Int d = t < n ? w.a[t][t] : Int(0);
        if (d == 0) {
            if (ub[t] != 0) return std::nullopt;
            continue;
        }
        if (ub[t] % d != 0) return std::nullopt;
        y[t] = ub[t] / d;
    }
    std::vector<Int> x(cols, 0);
    for (size_t i = 0; i < cols; ++i)
        for (size_t k = 0; k < cols; ++k) x[i] += w.v[i][k] * y[k];
    return x;
}

} // namespace eqh
