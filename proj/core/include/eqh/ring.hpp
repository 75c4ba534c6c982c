#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqh/error.hpp"
#include "eqh/numeric.hpp"

namespace eqh {

enum class CoeffDomain { Integer, Rational };

/// Configuration of the coefficient ring: a Laurent variable q of even
/// degree (optional) completed with the degree-2 equivariant variable u.
/// The localized variant admits negative u-powers over the rationals.
struct RingConfig {
    bool has_q = false;
    int q_degree = 0;
    CoeffDomain coeff_domain = CoeffDomain::Integer;
    bool u_localized = false;

    void validate() const;
    bool operator==(const RingConfig& o) const = default;
};

RingConfig ring_config_z();                      // Z[u]
RingConfig ring_config_zq(int q_degree);         // Z[q,q^-1] (x) Z[u]
RingConfig localized(const RingConfig& base);    // rationals, u invertible

/// Exponent pair of a monomial q^a u^b. Ordered by (b, a): the canonical
/// term order used for rendering and for leading-term division.
struct ExpKey {
    int a = 0; // q exponent
    int b = 0; // u exponent
    auto operator<=>(const ExpKey&) const = default;
};

/// Sparse exact element of the coefficient ring. Terms map exponent pairs
/// to nonzero coefficients; integer configs keep denominator 1 throughout.
class RingElem {
  public:
    RingElem() = default;
    explicit RingElem(RingConfig cfg) : cfg_(std::move(cfg)) {}

    static RingElem zero(const RingConfig& cfg) { return RingElem(cfg); }
    static RingElem one(const RingConfig& cfg) { return constant(cfg, 1); }
    static RingElem constant(const RingConfig& cfg, const Rat& c);
    static RingElem monomial(const RingConfig& cfg, const Rat& c, int a, int b);
    static RingElem make(const RingConfig& cfg,
                         const std::vector<std::tuple<Rat, int, int>>& terms);

    const RingConfig& config() const { return cfg_; }
    const std::map<ExpKey, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    Rat coeff(int a, int b) const;

    RingElem operator+(const RingElem& o) const;
    RingElem operator-(const RingElem& o) const;
    RingElem operator*(const RingElem& o) const;
    RingElem operator-() const;
    RingElem& operator+=(const RingElem& o) { return *this = *this + o; }
    RingElem& operator-=(const RingElem& o) { return *this = *this - o; }
    RingElem& operator*=(const RingElem& o) { return *this = *this * o; }
    bool operator==(const RingElem& o) const;
    bool operator!=(const RingElem& o) const { return !(*this == o); }

    RingElem scaled(const Rat& c) const;
    RingElem pow(int e) const; // e >= 0, or e < 0 for invertible elements

    int degree() const;              // NotHomogeneous / ZeroElement
    bool is_homogeneous() const;

    /// Exact quotient: returns z with z * y == *this, NotDivisible otherwise.
    RingElem exact_div(const RingElem& y) const;

    /// Drops every term with u-exponent >= order.
    RingElem truncate_u(int order) const;
    /// Keeps only the u-free part (the u = 0 specialization).
    RingElem at_u_zero() const { return truncate_u(1); }

    int u_valuation() const; // ZeroElement on zero
    int monomial_degree(const ExpKey& k) const { return k.a * cfg_.q_degree + 2 * k.b; }

    /// Invertible in the (possibly localized) ring.
    bool is_unit() const;
    RingElem inverse() const; // NotInvertible unless is_unit()

    /// Migrates the element into a compatible wider config (e.g. localized).
    RingElem with_config(const RingConfig& to) const;

    /// Canonical rendering: terms sorted by (b, a) ascending, coefficient
    /// first, e.g. "3*q^2*u - u^3".
    std::string str() const;

  private:
    void insert_term(const ExpKey& k, const Rat& c);
    void check_exponent(const ExpKey& k) const;
    void check_same_config(const RingElem& o) const;

    RingConfig cfg_;
    std::map<ExpKey, Rat> terms_;
};

Rat weight_of(const Rat& slope, const Rat& offset, int q_exponent);

} // namespace eqh
