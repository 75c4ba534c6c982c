#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqh/ring.hpp"

namespace eqh {

/// Ordered basis of a graded free module: distinct labels with degrees.
struct BasisSpec {
    std::vector<std::string> labels;
    std::vector<int> degrees;

    size_t rank() const { return labels.size(); }
    int degree(size_t k) const { return degrees.at(k); }
    size_t index_of(const std::string& label) const; // BasisMismatch if absent
    std::optional<size_t> find(const std::string& label) const;
    void validate() const;
    bool operator==(const BasisSpec&) const = default;
};

/// Element of a graded free module; dense coordinates over a shared ring.
class ModuleElem {
  public:
    ModuleElem() = default;
    ModuleElem(BasisSpec basis, RingConfig cfg);

    static ModuleElem zero(const BasisSpec& basis, const RingConfig& cfg);
    static ModuleElem unit(const BasisSpec& basis, const RingConfig& cfg, size_t k);

    const BasisSpec& basis() const { return basis_; }
    const RingConfig& config() const { return cfg_; }
    const RingElem& coord(size_t k) const { return coords_.at(k); }
    void set_coord(size_t k, RingElem v);
    bool is_zero() const;

    ModuleElem operator+(const ModuleElem& o) const;
    ModuleElem operator-(const ModuleElem& o) const;
    ModuleElem operator-() const;
    ModuleElem scaled(const RingElem& c) const;
    bool operator==(const ModuleElem& o) const;
    bool operator!=(const ModuleElem& o) const { return !(*this == o); }

    /// u^k * x, realized as coordinate-wise ring multiplication. Both the
    /// algebraic and the geometric u-module structures act this way on
    /// computed modules; whether they agree in general is left open, but
    /// every computation here uses them interchangeably.
    ModuleElem u_act(int k) const;

    bool is_homogeneous() const;
    std::optional<int> homogeneous_degree() const; // nullopt when zero
    int u_valuation() const;                       // ZeroElement on zero
    ModuleElem truncate_u(int order) const;
    ModuleElem at_u_zero() const { return truncate_u(1); }
    ModuleElem with_config(const RingConfig& to) const;

    std::string str() const;

  private:
    void check_compatible(const ModuleElem& o) const;

    BasisSpec basis_;
    RingConfig cfg_;
    std::vector<RingElem> coords_;
};

struct GradingIssue {
    size_t row = 0, col = 0;
    std::string entry;
    std::string reason;
};

struct GradingReport {
    bool passed = true;
    std::vector<GradingIssue> issues;
};

/// Degree-shifting module homomorphism as a dense target x source matrix.
/// Entry (l, k) is homogeneous of degree shift + deg(src_k) - deg(tgt_l).
class GradedMap {
  public:
    GradedMap() = default;

    /// Checked constructor: enforces the grading invariant eagerly.
    GradedMap(BasisSpec source, BasisSpec target, int shift,
              std::vector<std::vector<RingElem>> matrix);

    /// Escape hatch for solver ansatz matrices; no grading check.
    static GradedMap unchecked(BasisSpec source, BasisSpec target, int shift,
                               std::vector<std::vector<RingElem>> matrix);

    static GradedMap identity(const BasisSpec& basis, const RingConfig& cfg);
    static GradedMap zero(const BasisSpec& source, const BasisSpec& target,
                          const RingConfig& cfg, int shift);

    const BasisSpec& source() const { return source_; }
    const BasisSpec& target() const { return target_; }
    int shift() const { return shift_; }
    const RingConfig& config() const { return cfg_; }
    const RingElem& entry(size_t l, size_t k) const { return mat_.at(l).at(k); }
    const std::vector<std::vector<RingElem>>& matrix() const { return mat_; }

    ModuleElem apply(const ModuleElem& x) const;
    GradedMap compose_after(const GradedMap& first) const; // this ∘ first
    GradingReport check_grading() const;

    /// Conjugates into the basis whose vectors are the columns of `new_basis`
    /// (expressed in the current basis). The change matrix must be invertible
    /// over the ring, i.e. unit determinant up to q-powers.
    GradedMap change_basis(const std::vector<ModuleElem>& new_basis,
                           const BasisSpec& new_spec) const;

    GradedMap at_u_zero() const;
    GradedMap with_config(const RingConfig& to) const;
    bool operator==(const GradedMap& o) const;
    bool is_identity() const;

    std::string entry_list() const; // per-column expression lines

  private:
    BasisSpec source_, target_;
    int shift_ = 0;
    RingConfig cfg_;
    std::vector<std::vector<RingElem>> mat_; // mat_[l][k]
};

} // namespace eqh
