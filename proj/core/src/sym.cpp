#include "eqh/sym.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace eqh {

SymMono SymMono::var(const std::string& name, int power) {
    SymMono m;
    if (power != 0) m.factors.push_back({name, power});
    return m;
}

SymMono SymMono::operator*(const SymMono& o) const {
    SymMono out;
    auto it1 = factors.begin(), it2 = o.factors.begin();
    while (it1 != factors.end() || it2 != o.factors.end()) {
        if (it2 == o.factors.end() || (it1 != factors.end() && it1->first < it2->first)) {
            out.factors.push_back(*it1++);
        } else if (it1 == factors.end() || it2->first < it1->first) {
            out.factors.push_back(*it2++);
        } else {
            int p = it1->second + it2->second;
            if (p != 0) out.factors.push_back({it1->first, p});
            ++it1;
            ++it2;
        }
    }
    return out;
}

int SymMono::degree() const {
    int d = 0;
    for (const auto& [n, p] : factors) d += p;
    return d;
}

std::string SymMono::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, p] : factors) {
        if (!first) os << "*";
        first = false;
        // Unleveled non-r symbols are file-format unknowns and render with
        // the ?-prefix of the definition grammar.
        if (n != "r" && n.find('@') == std::string::npos) os << "?";
        os << n;
        if (p != 1) os << "^" << p;
    }
    return os.str();
}

SymElem SymElem::from_ring(const RingElem& e) {
    SymElem out(e.config());
    if (!e.is_zero()) out.terms_.emplace(SymMono::one(), e);
    return out;
}

SymElem SymElem::constant(const RingConfig& cfg, const Rat& c) {
    return from_ring(RingElem::constant(cfg, c));
}

SymElem SymElem::variable(const RingConfig& cfg, const std::string& name) {
    SymElem out(cfg);
    out.terms_.emplace(SymMono::var(name), RingElem::one(cfg));
    return out;
}

bool SymElem::is_numeric() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

RingElem SymElem::ring_value() const {
    if (terms_.empty()) return RingElem(cfg_);
    if (!is_numeric())
        fail(Errc::BadParam, "symbolic element has free symbols: " + str());
    return terms_.begin()->second;
}

void SymElem::add_term(const SymMono& m, const RingElem& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymElem SymElem::operator+(const SymElem& o) const {
    SymElem out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

SymElem SymElem::operator-(const SymElem& o) const { return *this + (-o); }

SymElem SymElem::operator-() const {
    SymElem out(cfg_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

SymElem SymElem::operator*(const SymElem& o) const {
    SymElem out(cfg_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

bool SymElem::operator==(const SymElem& o) const { return terms_ == o.terms_; }

SymElem SymElem::scaled(const RingElem& c) const {
    SymElem out(cfg_);
    for (const auto& [m, t] : terms_) out.add_term(m, t * c);
    return out;
}

SymElem SymElem::pow(int e) const {
    if (e < 0) fail(Errc::BadParam, "negative symbolic power");
    SymElem acc = constant(cfg_, 1);
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

SymElem SymElem::substitute(const std::string& name, const SymElem& value) const {
    bool present = false;
    for (const auto& [m, c] : terms_)
        for (const auto& [n, p] : m.factors)
            if (n == name) present = true;
    if (!present) return *this;
    SymElem out(cfg_);
    for (const auto& [m, c] : terms_) {
        SymMono rest;
        int power = 0;
        for (const auto& [n, p] : m.factors) {
            if (n == name)
                power = p;
            else
                rest.factors.push_back({n, p});
        }
        SymElem piece(cfg_);
        piece.add_term(rest, c);
        if (power > 0) piece = piece * value.pow(power);
        if (power < 0) fail(Errc::BadParam, "negative symbol power in substitution");
        out = out + piece;
    }
    return out;
}

SymElem SymElem::substitute(const std::string& name, const Rat& value) const {
    return substitute(name, constant(cfg_, value));
}

SymElem SymElem::rename(const std::map<std::string, std::string>& names) const {
    SymElem out(cfg_);
    for (const auto& [m, c] : terms_) {
        SymMono renamed;
        for (const auto& [n, p] : m.factors) {
            auto it = names.find(n);
            renamed.factors.push_back({it == names.end() ? n : it->second, p});
        }
        std::sort(renamed.factors.begin(), renamed.factors.end());
        out.add_term(renamed, c);
    }
    return out;
}

std::vector<std::string> SymElem::symbols() const {
    std::set<std::string> seen;
    for (const auto& [m, c] : terms_)
        for (const auto& [n, p] : m.factors) seen.insert(n);
    return {seen.begin(), seen.end()};
}

std::string SymElem::str() const {
    if (terms_.empty()) return "0";
    // Flatten to (ring monomial, sym monomial, coefficient) triples sorted by
    // the ring key (b, a) then the symbolic monomial.
    struct Term {
        ExpKey key;
        SymMono mono;
        Rat coeff;
    };
    std::vector<Term> flat;
    for (const auto& [m, c] : terms_)
        for (const auto& [k, q] : c.terms()) flat.push_back({k, m, q});
    std::stable_sort(flat.begin(), flat.end(), [](const Term& x, const Term& y) {
        if (x.key != y.key) return x.key < y.key;
        return x.mono < y.mono;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& t : flat) {
        Rat mag = t.coeff < 0 ? Rat(-t.coeff) : t.coeff;
        if (first) {
            if (t.coeff < 0) os << "-";
            first = false;
        } else {
            os << (t.coeff < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        bool bare = t.mono.is_one() && t.key.a == 0 && t.key.b == 0;
        if (mag != 1 || bare) factors.push_back(rat_to_string(mag));
        if (!t.mono.is_one()) factors.push_back(t.mono.str());
        if (t.key.a != 0)
            factors.push_back(t.key.a == 1 ? "q" : "q^" + std::to_string(t.key.a));
        if (t.key.b != 0)
            factors.push_back(t.key.b == 1 ? "u" : "u^" + std::to_string(t.key.b));
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i) os << "*";
            os << factors[i];
        }
    }
    return os.str();
}

SymVec SymVec::zero(const BasisSpec& basis, const RingConfig& cfg) {
    return SymVec{basis, cfg, std::vector<SymElem>(basis.rank(), SymElem(cfg))};
}

SymVec SymVec::from_elem(const ModuleElem& x) {
    SymVec v = zero(x.basis(), x.config());
    for (size_t k = 0; k < x.basis().rank(); ++k)
        v.coords[k] = SymElem::from_ring(x.coord(k));
    return v;
}

SymVec SymVec::operator+(const SymVec& o) const {
    SymVec out = *this;
    for (size_t k = 0; k < coords.size(); ++k) out.coords[k] += o.coords[k];
    return out;
}

SymVec SymVec::operator-(const SymVec& o) const {
    SymVec out = *this;
    for (size_t k = 0; k < coords.size(); ++k) out.coords[k] -= o.coords[k];
    return out;
}

SymVec SymVec::scaled(const SymElem& c) const {
    SymVec out = *this;
    for (auto& x : out.coords) x = x * c;
    return out;
}

SymVec SymVec::u_act(int k) const {
    SymVec out = *this;
    RingElem uk = RingElem::monomial(cfg, 1, 0, k);
    for (auto& x : out.coords) x = x.scaled(uk);
    return out;
}

SymVec sym_apply(const SymMatrix& m, const SymVec& x, const BasisSpec& target) {
    SymVec y = SymVec::zero(target, x.cfg);
    for (size_t l = 0; l < m.size(); ++l) {
        SymElem acc(x.cfg);
        for (size_t k = 0; k < x.coords.size(); ++k) {
            if (m[l][k].is_zero() || x.coords[k].is_zero()) continue;
            acc += m[l][k] * x.coords[k];
        }
        y.coords[l] = acc;
    }
    return y;
}

std::vector<std::vector<RingElem>> sym_matrix_eval_r(const SymMatrix& m, int r,
                                                     const RingConfig& cfg) {
    std::vector<std::vector<RingElem>> out(m.size());
    for (size_t l = 0; l < m.size(); ++l) {
        out[l].reserve(m[l].size());
        for (const auto& e : m[l]) out[l].push_back(e.substitute("r", Rat(r)).ring_value());
    }
    if (out.empty()) fail(Errc::BadParam, "empty matrix template");
    (void)cfg;
    return out;
}

SymMatrix sym_matrix_subst_r(const SymMatrix& m, int r) {
    SymMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) e = e.substitute("r", Rat(r));
    return out;
}

SymMatrix sym_matrix_attach_level(const SymMatrix& m, int level) {
    SymMatrix out = m;
    for (auto& row : out)
        for (auto& e : row) {
            std::map<std::string, std::string> names;
            for (const auto& s : e.symbols())
                if (s != "r" && s.find('@') == std::string::npos)
                    names[s] = s + "@" + std::to_string(level);
            e = e.rename(names);
        }
    return out;
}

SymElem sym_weighted(const SymElem& e, const Rat& slope, const Rat& offset) {
    SymElem out(e.config());
    for (const auto& [m, c] : e.terms()) {
        RingElem weighted(c.config());
        for (const auto& [k, q] : c.terms()) {
            Rat w = weight_of(slope, offset, k.a) * q;
            if (w != 0)
                weighted += RingElem::monomial(c.config(), w, k.a, k.b);
        }
        out.add_term(m, weighted);
    }
    return out;
}

} // namespace eqh
