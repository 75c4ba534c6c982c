#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqh/product.hpp"
#include "eqh/seidel.hpp"
#include "eqh/solver.hpp"
#include "eqh/sym.hpp"

namespace eqh {

/// One coefficient slot of an ansatz: the monomial q^a u^b in entry
/// (row, col) of the product operator or the Seidel template.
struct AnsatzSlot {
    bool in_seidel = false;
    size_t col = 0, row = 0;
    int a = 0, b = 0;
    auto operator<=>(const AnsatzSlot&) const = default;
};

/// A space definition: ring, basis, product and Seidel templates in r, an
/// optional inverse family and ordered limit basis, plus the ansatz
/// metadata used by the solver (structural zeros, seeds, slot names).
struct SpaceSpec {
    std::string id;
    RingConfig ring;
    BasisSpec basis;

    bool has_product = false;
    std::string unit_label = "e0";
    std::string gen_label = "e1";
    SymMatrix product_tmpl;

    int maslov_shift = 0;
    SymMatrix seidel_tmpl;

    std::optional<int> inverse_shift;
    SymMatrix inverse_tmpl;

    std::vector<std::string> limit_labels;
    std::vector<ModuleElem> limit_basis;

    std::vector<AnsatzSlot> zero_slots;
    std::map<AnsatzSlot, SymElem> slot_seeds;
    std::map<AnsatzSlot, std::string> slot_names;
    std::map<std::string, SymElem> expr_seeds;
    std::map<std::pair<std::string, int>, Rat> level_seeds;

    size_t rank() const { return basis.rank(); }
    SeidelFamily seidel_family() const;
    std::optional<SeidelFamily> inverse_family() const;
    GeneratorProduct product_at(int r) const; // requires has_product
    ProductTable table_at(int r) const;       // trivial table when no product

    /// Validates invariants: gradedness of all templates at r in {0, 1},
    /// label sanity, limit basis shape.
    void validate() const;
};

bool spec_equal(const SpaceSpec& a, const SpaceSpec& b);

std::vector<std::string> builtin_ids();
/// id is one of complex_plane, complex_space(n), projective_space(n),
/// taut_line_bundle(n) with n >= 1.
SpaceSpec builtin_space(const std::string& id);

/// Builds the solver ansatz by enumerating every graded-legal slot: the
/// u^0 layer is fixed from the template, listed slots are structurally
/// zero, seeded slots carry their values, and the rest become unknowns.
AnsatzBundle make_ansatz(const SpaceSpec& spec);
AnsatzBundle make_ansatz(const SpaceSpec& spec,
                         const std::vector<AnsatzSlot>& structural_zeros);

/// Treats the space definition's templates (with ?unknown entries) as
/// the ansatz.
AnsatzBundle ansatz_from_template_spec(const SpaceSpec& spec);

/// Canonical text rendering, stable under reparse.
std::string render_space(const SpaceSpec& spec);

/// Parses the .eqh definition format; diagnostics carry line and column.
SpaceSpec parse_space(const std::string& text);

} // namespace eqh
