#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqh/module.hpp"
#include "eqh/ring.hpp"

namespace eqh {

/// Product of symbol powers, sorted by name. Symbols are "r" or unknown
/// keys of the form "name@level".
struct SymMono {
    std::vector<std::pair<std::string, int>> factors;

    static SymMono one() { return {}; }
    static SymMono var(const std::string& name, int power = 1);
    SymMono operator*(const SymMono& o) const;
    bool is_one() const { return factors.empty(); }
    int degree() const;
    auto operator<=>(const SymMono&) const = default;
    std::string str() const;
};

/// Polynomial in symbols with ring-element coefficients; the carrier for
/// matrix templates in r and solver ansatz entries.
class SymElem {
  public:
    SymElem() = default;
    explicit SymElem(RingConfig cfg) : cfg_(std::move(cfg)) {}

    static SymElem zero(const RingConfig& cfg) { return SymElem(cfg); }
    static SymElem from_ring(const RingElem& e);
    static SymElem constant(const RingConfig& cfg, const Rat& c);
    static SymElem variable(const RingConfig& cfg, const std::string& name);

    const RingConfig& config() const { return cfg_; }
    const std::map<SymMono, RingElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_numeric() const; // no symbols
    RingElem ring_value() const; // requires is_numeric

    SymElem operator+(const SymElem& o) const;
    SymElem operator-(const SymElem& o) const;
    SymElem operator*(const SymElem& o) const;
    SymElem operator-() const;
    SymElem& operator+=(const SymElem& o) { return *this = *this + o; }
    SymElem& operator-=(const SymElem& o) { return *this = *this - o; }
    bool operator==(const SymElem& o) const;

    SymElem scaled(const RingElem& c) const;
    SymElem pow(int e) const; // e >= 0

    /// Substitutes one symbol by a polynomial value.
    SymElem substitute(const std::string& name, const SymElem& value) const;
    SymElem substitute(const std::string& name, const Rat& value) const;

    /// Renames every symbol via the map; unmapped symbols are kept.
    SymElem rename(const std::map<std::string, std::string>& names) const;

    std::vector<std::string> symbols() const;
    void add_term(const SymMono& m, const RingElem& c);

    std::string str() const;

  private:
    RingConfig cfg_;
    std::map<SymMono, RingElem> terms_;
};

using SymMatrix = std::vector<std::vector<SymElem>>;

/// Column vector over SymElem with a basis, mirroring ModuleElem.
struct SymVec {
    BasisSpec basis;
    RingConfig cfg;
    std::vector<SymElem> coords;

    static SymVec zero(const BasisSpec& basis, const RingConfig& cfg);
    static SymVec from_elem(const ModuleElem& x);
    SymVec operator+(const SymVec& o) const;
    SymVec operator-(const SymVec& o) const;
    SymVec scaled(const SymElem& c) const;
    SymVec u_act(int k) const;
};

SymVec sym_apply(const SymMatrix& m, const SymVec& x, const BasisSpec& target);

/// Instantiates a matrix template: substitutes r and requires the result to
/// be symbol-free.
std::vector<std::vector<RingElem>> sym_matrix_eval_r(const SymMatrix& m, int r,
                                                     const RingConfig& cfg);

/// Substitutes r, keeping other symbols.
SymMatrix sym_matrix_subst_r(const SymMatrix& m, int r);

/// Attaches a level to every non-r symbol: "name" becomes "name@level".
SymMatrix sym_matrix_attach_level(const SymMatrix& m, int level);

/// The q-exponent weight rule applied to every term of every entry.
SymElem sym_weighted(const SymElem& e, const Rat& slope, const Rat& offset);

} // namespace eqh
