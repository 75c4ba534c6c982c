#pragma once

#include <string>
#include <vector>

#include "eqh/product.hpp"
#include "eqh/sym.hpp"

namespace eqh {

/// r-indexed family of graded maps. A forward family at level r maps
/// level-r cohomology to level r+1; an inverse family maps r+1 down to r.
/// A family never composes with itself at one level: chains step through
/// consecutive levels only.
struct SeidelFamily {
    std::string space_id;
    BasisSpec basis;
    RingConfig cfg;
    int maslov_shift = 0;
    SymMatrix tmpl; // entries in the symbol r (ansatz entries may carry unknowns)
    bool inverse = false;

    bool has_unknowns() const;
};

/// Weight of a section class: slope per unit of q-exponent plus the weight
/// of the q^0 class.
struct WeightRule {
    Rat slope = 0;
    Rat offset = 0;
};

/// Substitutes the level into the template. The result is graded of the
/// family's Maslov shift.
GradedMap seidel_instantiate(const SeidelFamily& f, int r);

/// Composite of `count` consecutive instantiations starting at level r0.
GradedMap seidel_compose_chain(const SeidelFamily& f, int r0, int count);

/// Reweights every matrix entry by the q-exponent rule: the monomial
/// c q^a u^b becomes (slope*a + offset) c q^a u^b. The shift drops by 2.
GradedMap weighted_seidel(const GradedMap& m, const WeightRule& w);

/// The residual S(x * a+) - S(x) * a- - u S_w(x); zero exactly when the
/// intertwining relation holds at x.
ModuleElem intertwining_residual(const SeidelFamily& f, const ProductTable& p_r,
                                 const ProductTable& p_r1,
                                 const std::string& alpha_plus,
                                 const std::string& alpha_minus, const WeightRule& w,
                                 const ModuleElem& x, int r);

struct InversePairIssue {
    std::string which; // "forward∘inverse" or "inverse∘forward"
    size_t row = 0, col = 0;
    std::string entry;
};

struct InversePairReport {
    bool passed = true;
    std::vector<InversePairIssue> issues;
};

/// Confirms both composites of F at level r with its inverse family are
/// identity maps.
InversePairReport verify_inverse_pair(const SeidelFamily& f,
                                      const SeidelFamily& f_inv, int r);

} // namespace eqh
