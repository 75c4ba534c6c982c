#include "eqh/zhao.hpp"

#include <algorithm>

#include "eqh/error.hpp"

namespace eqh {

std::vector<size_t> ZhaoComplex::degree_indices(int degree) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].degree() == degree) out.push_back(i);
    return out;
}

IntMatrix ZhaoComplex::differential_matrix(int degree) const {
    const auto src = degree_indices(degree);
    const auto tgt = degree_indices(degree + 1);
    std::map<size_t, size_t> tgt_pos;
    for (size_t i = 0; i < tgt.size(); ++i) tgt_pos[tgt[i]] = i;
    IntMatrix m(tgt.size(), std::vector<Int>(src.size(), 0));
    for (size_t j = 0; j < src.size(); ++j)
        for (const auto& [dst, coeff] : diff[src[j]]) {
            auto it = tgt_pos.find(dst);
            if (it != tgt_pos.end()) m[it->second][j] += coeff;
        }
    return m;
}

ZhaoComplex build_complex(int s, int K) {
    if (s < 0) fail(Errc::BadParam, "slope index must be nonnegative");
    if (K < 1) fail(Errc::BadParam, "truncation bound must be at least 1");
    ZhaoComplex c;
    c.s = s;
    c.K = K;
    for (int k = 0; k <= K; ++k)
        for (int j = 0; j <= 2 * s; ++j) {
            c.index[ZhaoGen{k, j}] = c.gens.size();
            c.gens.push_back(ZhaoGen{k, j});
        }
    c.diff.assign(c.gens.size(), {});
    for (size_t i = 0; i < c.gens.size(); ++i) {
        const ZhaoGen& g = c.gens[i];
        if (g.j % 2 == 0) continue; // d(c_k, x_{2j}) = 0
        const int jj = (g.j + 1) / 2; // x_{2jj-1} = x_j
        c.diff[i].push_back({c.index.at(ZhaoGen{g.k, g.j - 1}), Int(1)});
        if (g.k + 1 <= K)
            c.diff[i].push_back({c.index.at(ZhaoGen{g.k + 1, 2 * jj}), Int(-jj)});
    }
    return c;
}

DSquaredReport verify_d_squared(const ZhaoComplex& c) {
    DSquaredReport report;
    for (size_t i = 0; i < c.gens.size(); ++i) {
        if (c.gens[i].k + 1 >= c.K) continue; // truncation boundary
        std::map<size_t, Int> acc;
        for (const auto& [mid, f1] : c.diff[i])
            for (const auto& [dst, f2] : c.diff[mid]) acc[dst] += f1 * f2;
        for (const auto& [dst, coeff] : acc)
            if (coeff != 0) {
                report.passed = false;
                report.failures.push_back("d^2" + c.gens[i].str() + " hits " +
                                          c.gens[dst].str() + " with coefficient " +
                                          coeff.get_str());
            }
    }
    return report;
}

namespace {

int max_k_in_degree(const ZhaoComplex& c, int degree) {
    int mk = -1;
    for (size_t i : c.degree_indices(degree)) mk = std::max(mk, c.gens[i].k);
    return mk;
}

} // namespace

std::vector<CohomologyEntry> cohomology(const ZhaoComplex& c, int deg_lo,
                                        int deg_hi) {
    if (deg_lo > deg_hi) fail(Errc::BadParam, "empty degree window");
    if (deg_lo < c.min_degree())
        fail(Errc::TruncationTooSmall,
             "degree " + std::to_string(deg_lo) + " below the complex");
    for (int d = deg_lo - 1; d <= deg_hi + 1; ++d)
        if (max_k_in_degree(c, d) >= c.K - 1)
            fail(Errc::TruncationTooSmall,
                 "degree " + std::to_string(d) + " touches k >= K-1");
    std::vector<CohomologyEntry> out;
    for (int d = deg_lo; d <= deg_hi; ++d) {
        CohomologyEntry e;
        e.degree = d;
        const size_t dim = c.degree_indices(d).size();
        const SmithResult outgoing = smith_normal_form(c.differential_matrix(d));
        const SmithResult incoming = smith_normal_form(c.differential_matrix(d - 1));
        e.rank = dim - outgoing.rank - incoming.rank;
        for (const auto& v : incoming.diagonal)
            if (v != 1 && v != 0) e.torsion.push_back(v);
        out.push_back(e);
    }
    return out;
}

ContinuationFactor continuation_action(int s) {
    if (s < 0) fail(Errc::BadParam, "slope index must be nonnegative");
    // Work inside the slope-(s+1) complex; the inclusion sends x_{2s} to
    // itself. Express [(c_0, x_{2s})] = c [(c_1, x_{2s+2})] by solving
    // d y + c w = v exactly over the integers.
    const ZhaoComplex big = build_complex(s + 1, 6);
    const int degree = -2 * s;
    const auto tgt = big.degree_indices(degree);
    std::map<size_t, size_t> pos;
    for (size_t i = 0; i < tgt.size(); ++i) pos[tgt[i]] = i;
    IntMatrix m = big.differential_matrix(degree - 1);
    const size_t nsrc = m.empty() ? big.degree_indices(degree - 1).size()
                                  : m[0].size();
    std::vector<Int> v(tgt.size(), 0), w(tgt.size(), 0);
    v[pos.at(big.index.at(ZhaoGen{0, 2 * s}))] = 1;
    w[pos.at(big.index.at(ZhaoGen{1, 2 * s + 2}))] = 1;
    IntMatrix augmented(tgt.size(), std::vector<Int>(nsrc + 1, 0));
    for (size_t i = 0; i < tgt.size(); ++i) {
        for (size_t j = 0; j < nsrc; ++j) augmented[i][j] = m[i][j];
        augmented[i][nsrc] = w[i];
    }
    auto sol = solve_integer(augmented, v);
    if (!sol)
        fail(Errc::UnexpectedFactor,
             "class of x_" + std::to_string(2 * s) + " is not a multiple of u x_" +
                 std::to_string(2 * s + 2));
    ContinuationFactor factor{(*sol)[nsrc], 1};
    if (factor.scalar != Int(s + 1))
        fail(Errc::UnexpectedFactor, "continuation factor " +
                                         factor.scalar.get_str() + " != " +
                                         std::to_string(s + 1));
    return factor;
}

} // namespace eqh
