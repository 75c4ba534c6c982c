#include "eqh/ring.hpp"

#include <algorithm>
#include <sstream>

namespace eqh {

void RingConfig::validate() const {
    if (has_q) {
        if (q_degree <= 0 || q_degree % 2 != 0)
            fail(Errc::BadParam, "q_degree must be even and positive");
    } else if (q_degree != 0) {
        fail(Errc::BadParam, "q_degree must be 0 when q is absent");
    }
    if (u_localized && coeff_domain != CoeffDomain::Rational)
        fail(Errc::BadParam, "localized configs require rational coefficients");
}

RingConfig ring_config_z() { return RingConfig{false, 0, CoeffDomain::Integer, false}; }

RingConfig ring_config_zq(int q_degree) {
    RingConfig cfg{true, q_degree, CoeffDomain::Integer, false};
    cfg.validate();
    return cfg;
}

RingConfig localized(const RingConfig& base) {
    RingConfig cfg = base;
    cfg.coeff_domain = CoeffDomain::Rational;
    cfg.u_localized = true;
    return cfg;
}

void RingElem::check_exponent(const ExpKey& k) const {
    if (!cfg_.has_q && k.a != 0)
        fail(Errc::IllegalExponent, "nonzero q-exponent in a q-free ring");
    if (!cfg_.u_localized && k.b < 0)
        fail(Errc::IllegalExponent, "negative u-exponent without localization");
}

void RingElem::check_same_config(const RingElem& o) const {
    if (!(cfg_ == o.cfg_)) fail(Errc::ConfigMismatch, "ring configs differ");
}

void RingElem::insert_term(const ExpKey& k, const Rat& c) {
    if (c == 0) return;
    check_exponent(k);
    if (cfg_.coeff_domain == CoeffDomain::Integer && !is_integral(c))
        fail(Errc::BadParam, "non-integral coefficient in integer ring");
    auto [it, fresh] = terms_.emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

RingElem RingElem::constant(const RingConfig& cfg, const Rat& c) {
    RingElem e(cfg);
    e.insert_term(ExpKey{0, 0}, c);
    return e;
}

RingElem RingElem::monomial(const RingConfig& cfg, const Rat& c, int a, int b) {
    RingElem e(cfg);
    e.insert_term(ExpKey{a, b}, c);
    return e;
}

RingElem RingElem::make(const RingConfig& cfg,
                        const std::vector<std::tuple<Rat, int, int>>& terms) {
    cfg.validate();
    RingElem e(cfg);
    for (const auto& [c, a, b] : terms) e.insert_term(ExpKey{a, b}, c);
    return e;
}

bool RingElem::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == ExpKey{0, 0} &&
           terms_.begin()->second == 1;
}

Rat RingElem::coeff(int a, int b) const {
    auto it = terms_.find(ExpKey{a, b});
    return it == terms_.end() ? Rat(0) : it->second;
}

RingElem RingElem::operator+(const RingElem& o) const {
    check_same_config(o);
    RingElem out(cfg_);
    out.terms_ = terms_;
    for (const auto& [k, c] : o.terms_) out.insert_term(k, c);
    return out;
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator-() const {
    RingElem out(cfg_);
    for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
    return out;
}

RingElem RingElem::operator*(const RingElem& o) const {
    check_same_config(o);
    RingElem out(cfg_);
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_)
            out.insert_term(ExpKey{k1.a + k2.a, k1.b + k2.b}, c1 * c2);
    return out;
}

bool RingElem::operator==(const RingElem& o) const {
    return cfg_ == o.cfg_ && terms_ == o.terms_;
}

RingElem RingElem::scaled(const Rat& c) const {
    RingElem out(cfg_);
    if (c == 0) return out;
    for (const auto& [k, t] : terms_) out.insert_term(k, t * c);
    return out;
}

RingElem RingElem::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RingElem acc = one(cfg_);
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

bool RingElem::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = monomial_degree(terms_.begin()->first);
    for (const auto& [k, c] : terms_)
        if (monomial_degree(k) != d) return false;
    return true;
}

int RingElem::degree() const {
    if (terms_.empty()) fail(Errc::ZeroElement, "degree of zero element");
    int d = monomial_degree(terms_.begin()->first);
    for (const auto& [k, c] : terms_)
        if (monomial_degree(k) != d)
            fail(Errc::NotHomogeneous, "element is not homogeneous: " + str());
    return d;
}

int RingElem::u_valuation() const {
    if (terms_.empty()) fail(Errc::ZeroElement, "u-valuation of zero element");
    int v = terms_.begin()->first.b;
    for (const auto& [k, c] : terms_) v = std::min(v, k.b);
    return v;
}

RingElem RingElem::truncate_u(int order) const {
    RingElem out(cfg_);
    for (const auto& [k, c] : terms_)
        if (k.b < order) out.terms_.emplace(k, c);
    return out;
}

namespace {

// Leading term under lex (a, b): multiplicative for products over a domain.
ExpKey lex_leading(const std::map<ExpKey, Rat>& terms) {
    auto best = terms.begin()->first;
    for (const auto& [k, c] : terms) {
        if (k.a > best.a || (k.a == best.a && k.b > best.b)) best = k;
    }
    return best;
}

} // namespace

RingElem RingElem::exact_div(const RingElem& y) const {
    check_same_config(y);
    if (y.is_zero()) fail(Errc::ZeroElement, "division by zero");
    RingElem quot(cfg_);
    if (is_zero()) return quot;

    // Per-variable degree bounds of the quotient are exact over a domain:
    // a and b extremes are additive under multiplication.
    auto max_of = [](const std::map<ExpKey, Rat>& t, bool use_a) {
        int m = use_a ? t.begin()->first.a : t.begin()->first.b;
        for (const auto& [k, c] : t) m = std::max(m, use_a ? k.a : k.b);
        return m;
    };
    auto min_of = [](const std::map<ExpKey, Rat>& t, bool use_a) {
        int m = use_a ? t.begin()->first.a : t.begin()->first.b;
        for (const auto& [k, c] : t) m = std::min(m, use_a ? k.a : k.b);
        return m;
    };
    const int amin = min_of(terms_, true) - min_of(y.terms_, true);
    const int amax = max_of(terms_, true) - max_of(y.terms_, true);
    const int bmin = min_of(terms_, false) - min_of(y.terms_, false);
    const int bmax = max_of(terms_, false) - max_of(y.terms_, false);
    if (amin > amax || bmin > bmax) fail(Errc::NotDivisible, "no exact quotient");

    RingElem rem = *this;
    const ExpKey ylead = lex_leading(y.terms_);
    const Rat& ycoeff = y.terms_.at(ylead);
    long steps = static_cast<long>(amax - amin + 1) * (bmax - bmin + 1);
    while (!rem.is_zero()) {
        if (steps-- < 0) fail(Errc::NotDivisible, "no exact quotient");
        const ExpKey rlead = lex_leading(rem.terms_);
        const ExpKey t{rlead.a - ylead.a, rlead.b - ylead.b};
        if (t.a < amin || t.a > amax || t.b < bmin || t.b > bmax)
            fail(Errc::NotDivisible, "no exact quotient");
        if (!cfg_.has_q && t.a != 0) fail(Errc::NotDivisible, "quotient needs q");
        if (!cfg_.u_localized && t.b < 0)
            fail(Errc::NotDivisible, "quotient needs negative u-powers");
        Rat c = rem.terms_.at(rlead) / ycoeff;
        if (cfg_.coeff_domain == CoeffDomain::Integer && !is_integral(c))
            fail(Errc::NotDivisible, "coefficient not divisible");
        RingElem piece = monomial(cfg_, c, t.a, t.b);
        quot += piece;
        rem -= piece * y;
    }
    return quot;
}

bool RingElem::is_unit() const {
    if (terms_.size() != 1) return false;
    const auto& [k, c] = *terms_.begin();
    if (!cfg_.u_localized && k.b != 0) return false;
    if (!cfg_.has_q && k.a != 0) return false;
    if (cfg_.coeff_domain == CoeffDomain::Integer) return c == 1 || c == -1;
    return c != 0;
}

RingElem RingElem::inverse() const {
    if (!is_unit()) fail(Errc::NotInvertible, "element is not a unit: " + str());
    const auto& [k, c] = *terms_.begin();
    return monomial(cfg_, Rat(1) / c, -k.a, -k.b);
}

RingElem RingElem::with_config(const RingConfig& to) const {
    if (cfg_ == to) return *this;
    if (cfg_.has_q && !to.has_q) fail(Errc::ConfigMismatch, "cannot drop q");
    if (cfg_.has_q && to.q_degree != cfg_.q_degree)
        fail(Errc::ConfigMismatch, "q-degree differs");
    RingElem out(to);
    for (const auto& [k, c] : terms_) out.insert_term(k, c);
    return out;
}

std::string RingElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rat mag = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        if (mag != 1 || (k.a == 0 && k.b == 0)) factors.push_back(rat_to_string(mag));
        if (k.a != 0) {
            std::string f = "q";
            if (k.a != 1) f += "^" + std::to_string(k.a);
            factors.push_back(f);
        }
        if (k.b != 0) {
            std::string f = "u";
            if (k.b != 1) f += "^" + std::to_string(k.b);
            factors.push_back(f);
        }
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

Rat weight_of(const Rat& slope, const Rat& offset, int q_exponent) {
    return slope * Rat(q_exponent) + offset;
}

} // namespace eqh
