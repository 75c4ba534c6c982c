#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eqh/seidel.hpp"
#include "eqh/sym.hpp"

namespace eqh {

/// Unknown coefficient attached to a level; its key is "name@level".
struct Unknown {
    std::string name;
    int level = 0;

    std::string key() const { return name + "@" + std::to_string(level); }
    static Unknown parse(const std::string& key);
    /// Pivot order: lexicographic by (level, name).
    bool operator<(const Unknown& o) const {
        return level != o.level ? level < o.level : name < o.name;
    }
};

/// Polynomial in unknowns with rational coefficients, canonical expanded form.
class UPoly {
  public:
    UPoly() = default;
    static UPoly constant(const Rat& c);
    static UPoly variable(const std::string& key);

    const std::map<SymMono, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rat constant_value() const;

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const Rat& c) const;
    bool operator==(const UPoly& o) const { return terms_ == o.terms_; }

    std::set<std::string> unknowns() const;
    int degree_in(const std::string& key) const;
    /// Writes the polynomial as A*x + B with A free of x; nullopt when the
    /// polynomial is not linear in x.
    std::optional<std::pair<UPoly, UPoly>> split_linear(const std::string& key) const;
    /// Coefficients c_0..c_d of a polynomial in the single unknown x.
    std::vector<Rat> univariate_coeffs(const std::string& key) const;

    UPoly substitute(const std::string& key, const UPoly& value) const;
    UPoly substitute(const std::string& key, const Rat& value) const;

    void add_term(const SymMono& m, const Rat& c);
    std::string str() const;

  private:
    std::map<SymMono, Rat> terms_;
};

struct Constraint {
    UPoly poly;
    std::string origin; // e.g. "r=1 x=e2: q*u*e0"
};

struct ConstraintSystem {
    std::vector<Constraint> equations;
    std::map<std::string, Rat> seeds; // already-substituted assignments
    std::string listing() const;      // one human-readable line per equation
};

using Assignment = std::map<std::string, Rat>;

/// Ansatz for one space: product and Seidel templates whose entries carry
/// unknown symbols, plus the a-priori seed data.
struct AnsatzBundle {
    std::string space_id;
    BasisSpec basis;
    RingConfig cfg;
    bool has_product = true;
    size_t unit = 0;
    size_t gen = 1;
    SymMatrix product_tmpl; // L-operator template
    SymMatrix seidel_tmpl;
    int maslov_shift = 0;
    std::vector<std::string> unknown_names;
    std::map<std::string, SymElem> expr_seeds;          // every level, value in r
    std::map<std::pair<std::string, int>, Rat> level_seeds; // (name, level)
    std::string alpha_label = "e1";
    WeightRule weight{1, 0};
};

/// Expands the intertwining residual of the ansatz symbolically at level r
/// for the given inputs and collects one equation per (basis element,
/// ring monomial). Seeds and prior assignments are substituted first.
ConstraintSystem extract_constraints(const AnsatzBundle& ansatz, int r,
                                     const std::vector<std::string>& inputs,
                                     const Assignment& carried = {});

/// Sequential elimination: repeatedly solve an equation for one unknown
/// (linear pivots first, unique-root powers second, triangular substitution
/// third) and substitute. Stuck when no pivot exists; Inconsistent when an
/// equation reduces to a nonzero constant.
Assignment solve_sequential(const ConstraintSystem& sys);

struct SolvedLevel {
    int r = 0;
    GradedMap seidel;
    std::optional<GradedMap> product_operator;
};

struct SolveRun {
    Assignment values;
    std::vector<SolvedLevel> levels; // r = 0..r_max
    std::vector<std::string> listings;
};

/// The r-ladder: extract and solve at r = 0, 1, ..., r_max, carrying solved
/// values forward as seeds. Integrality of every solved value is enforced
/// for integer coefficient domains.
SolveRun induct_over_r(const AnsatzBundle& ansatz, int r_max);

} // namespace eqh
