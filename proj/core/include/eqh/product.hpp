#pragma once

#include <string>
#include <vector>

#include "eqh/module.hpp"

namespace eqh {

/// A product presented by its multiplication-by-generator operator
/// L : x -> e_gen * x at equivariance level r.
struct GeneratorProduct {
    BasisSpec basis;
    size_t unit = 0; // index of e_0
    size_t gen = 1;  // index of e_1
    int r = 0;
    GradedMap L;
};

struct AxiomIssue {
    std::string kind; // "unit", "commutativity", "associativity", "linearity"
    std::string where;
    std::string detail;
};

struct AxiomReport {
    bool passed = true;
    std::vector<AxiomIssue> issues;
};

/// Full structure-constant table: entry (i, j) is e_i * e_j.
class ProductTable {
  public:
    ProductTable() = default;
    ProductTable(BasisSpec basis, size_t unit, RingConfig cfg,
                 std::vector<std::vector<ModuleElem>> table);

    /// The table with only unit products: e_0 * x = x, all else zero. Used
    /// by the rank-one spaces whose quantum product is trivial.
    static ProductTable trivial(const BasisSpec& basis, size_t unit,
                                const RingConfig& cfg);

    const BasisSpec& basis() const { return basis_; }
    size_t unit() const { return unit_; }
    const RingConfig& config() const { return cfg_; }
    const ModuleElem& entry(size_t i, size_t j) const { return table_.at(i).at(j); }

    /// Bilinear extension of the table.
    ModuleElem multiply(const ModuleElem& x, const ModuleElem& y) const;

    /// Unitality, graded commutativity, associativity on all basis triples,
    /// and ring-linearity on sampled elements.
    AxiomReport check_axioms() const;

    /// The operator x -> e_gen * x read back off the table.
    GradedMap generator_operator(size_t gen) const;

    ProductTable at_u_zero() const;
    bool operator==(const ProductTable& o) const;

    std::string csv() const;

  private:
    BasisSpec basis_;
    size_t unit_ = 0;
    RingConfig cfg_;
    std::vector<std::vector<ModuleElem>> table_;
};

/// Expands a generator product into the full table: expresses each e_j as a
/// polynomial in L applied to the unit, then evaluates that polynomial on
/// e_i. Requires the powers L^k(e_0) to form a triangular basis change.
ProductTable product_expand(const GeneratorProduct& g);

} // namespace eqh
