#include "eqh/linalg.hpp"

namespace eqh {

RingMatrix mat_identity(size_t n, const RingConfig& cfg) {
    RingMatrix m(n, std::vector<RingElem>(n, RingElem(cfg)));
    for (size_t i = 0; i < n; ++i) m[i][i] = RingElem::one(cfg);
    return m;
}

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b, const RingConfig& cfg) {
    const size_t n = a.size(), p = b.empty() ? 0 : b[0].size(), m = b.size();
    RingMatrix r(n, std::vector<RingElem>(p, RingElem(cfg)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < p; ++j) {
            RingElem acc(cfg);
            for (size_t k = 0; k < m; ++k) {
                if (a[i][k].is_zero() || b[k][j].is_zero()) continue;
                acc += a[i][k] * b[k][j];
            }
            r[i][j] = acc;
        }
    return r;
}

bool mat_equal(const RingMatrix& a, const RingMatrix& b) { return a == b; }

RingElem det_bareiss(const RingMatrix& input, const RingConfig& cfg) {
    const size_t n = input.size();
    if (n == 0) return RingElem::one(cfg);
    for (const auto& row : input)
        if (row.size() != n) fail(Errc::BadParam, "determinant of non-square matrix");
    RingMatrix m = input;
    RingElem prev = RingElem::one(cfg);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return RingElem(cfg); // singular
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                RingElem num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = num.exact_div(prev);
            }
        prev = m[k][k];
    }
    RingElem det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

namespace {

// Berkowitz: characteristic polynomial coefficients via iterated Toeplitz
// products; p(x) = c[0] x^n + ... + c[n], with c[0] = +/-1.
std::vector<RingElem> berkowitz_charpoly(const RingMatrix& m, const RingConfig& cfg) {
    const size_t n = m.size();
    std::vector<RingElem> c{RingElem::one(cfg)};
    if (n == 0) return c;
    c = {RingElem::one(cfg).scaled(-1), m[0][0]}; // -x + a00
    for (size_t k = 1; k < n; ++k) {
        // Principal (k+1)x(k+1) block; R = row, C = column, A = leading block.
        std::vector<RingElem> row(k), col(k);
        for (size_t i = 0; i < k; ++i) {
            row[i] = m[k][i];
            col[i] = m[i][k];
        }
        // Toeplitz column: [-1, m[k][k], R*C, R*A*C, R*A^2*C, ...]
        std::vector<RingElem> t;
        t.push_back(RingElem::one(cfg).scaled(-1));
        t.push_back(m[k][k]);
        std::vector<RingElem> vec = col;
        for (size_t step = 0; step + 1 < k + 1; ++step) {
            RingElem dot(cfg);
            for (size_t i = 0; i < k; ++i) dot += row[i] * vec[i];
            t.push_back(dot);
            if (step + 2 < k + 1) {
                std::vector<RingElem> next(k, RingElem(cfg));
                for (size_t i = 0; i < k; ++i) {
                    RingElem acc(cfg);
                    for (size_t j = 0; j < k; ++j) acc += m[i][j] * vec[j];
                    next[i] = acc;
                }
                vec = next;
            }
        }
        // Multiply the Toeplitz matrix built from t into c.
        std::vector<RingElem> out(c.size() + 1, RingElem(cfg));
        for (size_t i = 0; i < c.size() + 1; ++i) {
            RingElem acc(cfg);
            for (size_t j = 0; j <= i && j < c.size(); ++j) {
                if (i - j < t.size()) acc += t[i - j] * c[j];
            }
            out[i] = acc;
        }
        c = out;
    }
    return c;
}

} // namespace

RingElem det_berkowitz(const RingMatrix& m, const RingConfig& cfg) {
    const size_t n = m.size();
    if (n == 0) return RingElem::one(cfg);
    for (const auto& row : m)
        if (row.size() != n) fail(Errc::BadParam, "determinant of non-square matrix");
    // The vector is (-1)^n det(xI - A); its constant term is det(A).
    return berkowitz_charpoly(m, cfg).back();
}

RingElem det_division_free(const RingMatrix& m, const RingConfig& cfg) {
    RingElem d1 = det_bareiss(m, cfg);
    RingElem d2 = det_berkowitz(m, cfg);
    if (!(d1 == d2))
        fail(Errc::VerificationFailed, "determinant algorithms disagree: " +
                                           d1.str() + " vs " + d2.str());
    return d1;
}

namespace {

RingMatrix minor_matrix(const RingMatrix& m, size_t drop_row, size_t drop_col) {
    const size_t n = m.size();
    RingMatrix out;
    out.reserve(n - 1);
    for (size_t i = 0; i < n; ++i) {
        if (i == drop_row) continue;
        std::vector<RingElem> row;
        row.reserve(n - 1);
        for (size_t j = 0; j < n; ++j) {
            if (j == drop_col) continue;
            row.push_back(m[i][j]);
        }
        out.push_back(std::move(row));
    }
    return out;
}

RingMatrix adjugate_cofactor(const RingMatrix& m, const RingConfig& cfg) {
    const size_t n = m.size();
    RingMatrix adj(n, std::vector<RingElem>(n, RingElem(cfg)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            RingElem c = det_bareiss(minor_matrix(m, i, j), cfg);
            if ((i + j) % 2 == 1) c = -c;
            adj[j][i] = c; // transpose of cofactors
        }
    return adj;
}

// adj(A) = (-1)^{n-1} (A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 Id) where the
// characteristic polynomial is x^n + c_{n-1} x^{n-1} + ... + c_0.
RingMatrix adjugate_charpoly(const RingMatrix& m, const RingConfig& cfg) {
    const size_t n = m.size();
    auto c = berkowitz_charpoly(m, cfg); // c[0] = (-1)^n
    // Normalize to monic: divide by (-1)^n.
    const bool flip = n % 2 == 1;
    std::vector<RingElem> monic(c.size());
    for (size_t i = 0; i < c.size(); ++i) monic[i] = flip ? -c[i] : c[i];
    RingMatrix acc = mat_identity(n, cfg); // Horner on A
    for (size_t i = 1; i + 1 <= n; ++i) {
        acc = mat_mul(acc, m, cfg);
        const RingElem& ci = monic[i];
        for (size_t d = 0; d < n; ++d) acc[d][d] += ci;
    }
    if (n % 2 == 0) {
        for (auto& row : acc)
            for (auto& e : row) e = -e;
    }
    return acc;
}

} // namespace

RingMatrix adjugate(const RingMatrix& m, const RingConfig& cfg) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) fail(Errc::BadParam, "adjugate of non-square matrix");
    if (n == 0) return {};
    RingMatrix adj = n <= 6 ? adjugate_cofactor(m, cfg) : adjugate_charpoly(m, cfg);
    const RingElem det = det_bareiss(m, cfg);
    RingMatrix want(n, std::vector<RingElem>(n, RingElem(cfg)));
    for (size_t i = 0; i < n; ++i) want[i][i] = det;
    if (!mat_equal(mat_mul(m, adj, cfg), want) ||
        !mat_equal(mat_mul(adj, m, cfg), want))
        fail(Errc::VerificationFailed, "adjugate identity A*adj != det*Id");
    return adj;
}

} // namespace eqh
