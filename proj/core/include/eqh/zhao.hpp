#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqh/snf.hpp"

namespace eqh {

/// Generator (c_k, x_j) of the equivariant Floer cochain complex of the
/// plane, of degree 2k - j.
struct ZhaoGen {
    int k = 0;
    int j = 0;
    int degree() const { return 2 * k - j; }
    std::string str() const {
        return "(c" + std::to_string(k) + ",x" + std::to_string(j) + ")";
    }
    auto operator<=>(const ZhaoGen&) const = default;
};

/// Truncated complex for slope index s: generators (c_k, x_j) with
/// 0 <= k <= K and 0 <= j <= 2s, differential
/// d(c_k, x_{2j-1}) = (c_k, x_{2j-2}) - j (c_{k+1}, x_{2j}), d(c_k, x_{2j}) = 0.
/// Terms that leave the truncation window are dropped; statements are only
/// made for generators with k + 1 < K.
struct ZhaoComplex {
    int s = 0;
    int K = 0;
    std::vector<ZhaoGen> gens;
    std::map<ZhaoGen, size_t> index;
    // Sparse differential: generator index -> list of (generator index, coeff).
    std::vector<std::vector<std::pair<size_t, Int>>> diff;

    std::vector<size_t> degree_indices(int degree) const;
    /// Matrix of d : C^deg -> C^{deg+1}; rows are degree+1 generators.
    IntMatrix differential_matrix(int degree) const;
    int min_degree() const { return -2 * s; }
    int max_degree() const { return 2 * K; }
};

ZhaoComplex build_complex(int s, int K);

struct DSquaredReport {
    bool passed = true;
    std::vector<std::string> failures; // located generators
};

/// d∘d on every generator with k + 1 < K.
DSquaredReport verify_d_squared(const ZhaoComplex& c);

struct CohomologyEntry {
    int degree = 0;
    size_t rank = 0;
    std::vector<Int> torsion;
};

/// Per-degree cohomology via Smith normal form; TruncationTooSmall when the
/// requested window touches generators with k >= K - 1.
std::vector<CohomologyEntry> cohomology(const ZhaoComplex& c, int deg_lo,
                                        int deg_hi);

struct ContinuationFactor {
    Int scalar; // s + 1
    int u_power = 1;
};

/// The factor by which the inclusion into the slope-(s+1) complex acts on
/// the rank-one cohomology: the class of x_{2s} maps to
/// scalar * (class of u^{u_power} x_{2(s+1)}). Verified by an exact integer
/// solve; UnexpectedFactor if no such factor exists.
ContinuationFactor continuation_action(int s);

} // namespace eqh
