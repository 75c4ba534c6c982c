#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqh/linalg.hpp"
#include "eqh/seidel.hpp"

namespace eqh {

/// Stage p of the generator computation: determinants, adjugate products
/// and the generators x_k^p both raw and divided by the determinant.
struct GeneratorStage {
    int p = 0;
    RingElem det_step;    // det A_{p-1}; one for p = 0
    RingElem det_product; // D_p = det(A_0) ... det(A_{p-1})
    std::vector<ModuleElem> raw;        // x_k^p over the ordered basis
    std::vector<ModuleElem> normalized; // x_k^p / D_p in the localized ring
};

struct GeneratorSequence {
    std::string space_id;
    BasisSpec ordered;     // g0..gn with the degrees of the ordered vectors
    RingConfig cfg;        // base config
    RingConfig local_cfg;  // localized config for the normalized generators
    std::vector<GeneratorStage> stages; // p = 0..p_max
    /// When the ordered basis has rank 2: the presentation generators
    /// x_0^p / (1^2...p^2 (p+1) u^{2p+1}) for p >= 1, with the cancellation
    /// against x_1^{p+1} = (p+1) u x_0^p checked by exact division.
    std::vector<ModuleElem> presentation;
};

/// Computes x_k^p along two independent routes (full adjugate products and
/// the step recurrence) and verifies they agree exactly.
GeneratorSequence generator_sequence(const SeidelFamily& f,
                                     const std::vector<ModuleElem>& ordered_basis,
                                     const std::vector<std::string>& ordered_labels,
                                     int p_max);

struct ChainStep {
    int p = 0;
    bool strict = false;
    std::string witness;     // generator label achieving the valuation drop
    int min_valuation = 0;   // of the level-p normalized generators
    int next_valuation = 0;  // of the witness at level p+1
};

struct ChainReport {
    bool all_strict = true;
    std::vector<ChainStep> steps;
};

/// Witnesses strictness of the submodule chain by u-valuation accounting
/// after determinant clearing: a level-(p+1) generator with valuation below
/// every level-p combination cannot lie in the level-p span.
ChainReport chain_strictness(const GeneratorSequence& g);

/// u-valuations of the images of one basis vector under the composites
/// EQS_{t-1} ... EQS_0; valuation 0 throughout means the element never
/// becomes divisible by u in the direct limit.
std::vector<int> image_u_valuations(const SeidelFamily& f, size_t start, int steps);

struct NonequivariantLimitReport {
    bool zero_map = false;
    std::vector<ModuleElem> kernel; // primitive kernel generators
    size_t quotient_rank = 0;
    std::vector<std::string> quotient_labels;
    bool iso_on_quotient = false;
    std::string limit_description;
};

/// Kernel and quotient data of the u = 0 specialization of the family.
NonequivariantLimitReport nonequivariant_limit(const SeidelFamily& f);

struct Rank1Report {
    bool recognized = false;
    std::string limit; // "Q[u,u^-1]" when recognized
    std::vector<std::string> factors;
};

/// Recognizes the rank-one pattern: level s acts by (s+1) u. The direct
/// limit of such a system is Q[u, u^-1].
Rank1Report rank1_limit(const SeidelFamily& f, int s_max);
Rank1Report rank1_limit_from_factors(const std::vector<std::pair<Int, int>>& factors);

} // namespace eqh
