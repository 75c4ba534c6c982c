#pragma once

#include <vector>

#include "eqh/ring.hpp"

namespace eqh {

using RingMatrix = std::vector<std::vector<RingElem>>;

/// Fraction-free Gaussian elimination (Bareiss). Divisions are exact in the
/// ring at every step.
RingElem det_bareiss(const RingMatrix& m, const RingConfig& cfg);

/// Berkowitz characteristic-polynomial method: no ring divisions at all.
RingElem det_berkowitz(const RingMatrix& m, const RingConfig& cfg);

/// Runs both determinant algorithms and verifies they agree.
RingElem det_division_free(const RingMatrix& m, const RingConfig& cfg);

/// Adjugate: A * adj(A) = adj(A) * A = det(A) * Id, verified before
/// returning. Cofactor expansion up to 6x6, characteristic-polynomial
/// construction above that.
RingMatrix adjugate(const RingMatrix& m, const RingConfig& cfg);

RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b, const RingConfig& cfg);
RingMatrix mat_identity(size_t n, const RingConfig& cfg);
bool mat_equal(const RingMatrix& a, const RingMatrix& b);

} // namespace eqh
