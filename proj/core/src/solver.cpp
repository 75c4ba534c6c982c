#include "eqh/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdio>
#include <set>
#include <sstream>

namespace eqh {

Unknown Unknown::parse(const std::string& key) {
    auto at = key.rfind('@');
    if (at == std::string::npos) fail(Errc::BadParam, "unknown key without level: " + key);
    return Unknown{key.substr(0, at), std::stoi(key.substr(at + 1))};
}

UPoly UPoly::constant(const Rat& c) {
    UPoly p;
    p.add_term(SymMono::one(), c);
    return p;
}

UPoly UPoly::variable(const std::string& key) {
    UPoly p;
    p.add_term(SymMono::var(key), 1);
    return p;
}

bool UPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat UPoly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) fail(Errc::BadParam, "polynomial is not constant: " + str());
    return terms_.begin()->second;
}

void UPoly::add_term(const SymMono& m, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

UPoly UPoly::operator+(const UPoly& o) const {
    UPoly out = *this;
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o.scaled(-1); }

UPoly UPoly::operator*(const UPoly& o) const {
    UPoly out;
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, c1 * c2);
    return out;
}

UPoly UPoly::scaled(const Rat& c) const {
    UPoly out;
    if (c == 0) return out;
    for (const auto& [m, t] : terms_) out.terms_.emplace(m, t * c);
    return out;
}

std::set<std::string> UPoly::unknowns() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [n, p] : m.factors) out.insert(n);
    return out;
}

int UPoly::degree_in(const std::string& key) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [n, p] : m.factors)
            if (n == key) d = std::max(d, p);
    return d;
}

std::optional<std::pair<UPoly, UPoly>> UPoly::split_linear(
    const std::string& key) const {
    UPoly a, b;
    for (const auto& [m, c] : terms_) {
        int p = 0;
        SymMono rest;
        for (const auto& [n, q] : m.factors) {
            if (n == key)
                p = q;
            else
                rest.factors.push_back({n, q});
        }
        if (p == 0)
            b.add_term(m, c);
        else if (p == 1)
            a.add_term(rest, c);
        else
            return std::nullopt;
    }
    return std::make_pair(a, b);
}

std::vector<Rat> UPoly::univariate_coeffs(const std::string& key) const {
    std::vector<Rat> coeffs(degree_in(key) + 1, Rat(0));
    for (const auto& [m, c] : terms_) {
        int p = 0;
        for (const auto& [n, q] : m.factors) {
            if (n == key)
                p = q;
            else
                fail(Errc::BadParam, "polynomial is not univariate in " + key);
        }
        coeffs[p] += c;
    }
    return coeffs;
}

UPoly UPoly::substitute(const std::string& key, const UPoly& value) const {
    bool present = false;
    for (const auto& [m, c] : terms_)
        for (const auto& [n, p] : m.factors)
            if (n == key) present = true;
    if (!present) return *this;
    UPoly out;
    for (const auto& [m, c] : terms_) {
        int p = 0;
        SymMono rest;
        for (const auto& [n, q] : m.factors) {
            if (n == key)
                p = q;
            else
                rest.factors.push_back({n, q});
        }
        UPoly piece;
        piece.add_term(rest, c);
        for (int i = 0; i < p; ++i) piece = piece * value;
        out = out + piece;
    }
    return out;
}

UPoly UPoly::substitute(const std::string& key, const Rat& value) const {
    return substitute(key, UPoly::constant(value));
}

std::string UPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat mag = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (m.is_one() || mag != 1) os << rat_to_string(mag);
        if (!m.is_one()) {
            if (mag != 1) os << "*";
            os << m.str();
        }
    }
    return os.str();
}

std::string ConstraintSystem::listing() const {
    std::ostringstream os;
    for (const auto& eq : equations)
        os << eq.poly.str() << " = 0    # " << eq.origin << "\n";
    return os.str();
}

namespace {

// Substitutes seeds and prior assignments into a leveled matrix.
SymMatrix apply_assignments(SymMatrix m, const AnsatzBundle& ansatz, int level,
                            const Assignment& carried) {
    for (auto& row : m)
        for (auto& e : row) {
            for (const auto& [name, value] : ansatz.expr_seeds) {
                const std::string key = name + "@" + std::to_string(level);
                SymElem v = value.substitute("r", Rat(level));
                e = e.substitute(key, v);
            }
            for (const auto& [nk, value] : ansatz.level_seeds) {
                if (nk.second != level) continue;
                e = e.substitute(nk.first + "@" + std::to_string(level), value);
            }
            for (const auto& [key, value] : carried) e = e.substitute(key, value);
        }
    return m;
}

SymMatrix leveled(const SymMatrix& tmpl, int r, int level, const AnsatzBundle& a,
                  const Assignment& carried) {
    SymMatrix m = sym_matrix_attach_level(tmpl, level);
    m = sym_matrix_subst_r(m, r);
    return apply_assignments(std::move(m), a, level, carried);
}

} // namespace

ConstraintSystem extract_constraints(const AnsatzBundle& ansatz, int r,
                                     const std::vector<std::string>& inputs,
                                     const Assignment& carried) {
    if (!ansatz.has_product)
        fail(Errc::BadParam, "ansatz without product has no constraints");
    // L at level r and r+1 carry the product unknowns of those levels; the
    // Seidel template at level r carries its own.
    const SymMatrix l_r = leveled(ansatz.product_tmpl, r, r, ansatz, carried);
    const SymMatrix l_r1 = leveled(ansatz.product_tmpl, r + 1, r + 1, ansatz, carried);
    SymMatrix s_r = sym_matrix_attach_level(ansatz.seidel_tmpl, r);
    s_r = sym_matrix_subst_r(s_r, r);
    s_r = apply_assignments(std::move(s_r), ansatz, r, carried);

    SymMatrix s_r_weighted = s_r;
    for (auto& row : s_r_weighted)
        for (auto& e : row)
            e = sym_weighted(e, ansatz.weight.slope, ansatz.weight.offset);

    ConstraintSystem sys;
    for (const auto& [nk, value] : ansatz.level_seeds)
        if (nk.second == r || nk.second == r + 1)
            sys.seeds[nk.first + "@" + std::to_string(nk.second)] = value;
    for (const auto& [key, value] : carried) sys.seeds[key] = value;

    for (const auto& label : inputs) {
        const size_t k = ansatz.basis.index_of(label);
        SymVec x = SymVec::zero(ansatz.basis, ansatz.cfg);
        x.coords[k] = SymElem::constant(ansatz.cfg, 1);
        const SymVec lhs = sym_apply(s_r, sym_apply(l_r, x, ansatz.basis), ansatz.basis);
        const SymVec mid =
            sym_apply(l_r1, sym_apply(s_r, x, ansatz.basis), ansatz.basis);
        const SymVec err = sym_apply(s_r_weighted, x, ansatz.basis).u_act(1);
        const SymVec residual = lhs - mid - err;
        for (size_t l = 0; l < ansatz.basis.rank(); ++l) {
            // Collect the ring monomials present across all symbol monomials.
            std::set<ExpKey> keys;
            for (const auto& [m, c] : residual.coords[l].terms())
                for (const auto& [key, q] : c.terms()) keys.insert(key);
            for (const auto& key : keys) {
                UPoly eq;
                for (const auto& [m, c] : residual.coords[l].terms()) {
                    Rat q = c.coeff(key.a, key.b);
                    if (q != 0) eq.add_term(m, q);
                }
                if (eq.is_zero()) continue;
                std::string mono = RingElem::monomial(ansatz.cfg, 1, key.a, key.b).str();
                sys.equations.push_back(
                    {eq, "r=" + std::to_string(r) + " x=" + label + ": " + mono + "*" +
                             ansatz.basis.labels[l]});
            }
        }
    }
    return sys;
}

namespace {

bool unknown_less(const std::string& a, const std::string& b) {
    return Unknown::parse(a) < Unknown::parse(b);
}

// A univariate polynomial with a unique rational root of full multiplicity:
// c (x - v)^d. This is how the ladder passes the perfect-power steps that
// the coefficient pairs produce; no other polynomial yields a value, so the
// search never chooses between roots.
std::optional<Rat> unique_root(const std::vector<Rat>& coeffs) {
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 1 || coeffs[d] == 0) return std::nullopt;
    if (d == 1) return -coeffs[0] / coeffs[1];
    const Rat v = -coeffs[d - 1] / (Rat(d) * coeffs[d]);
    Rat binom = 1;
    for (int i = 0; i <= d; ++i) {
        // coefficient of x^{d-i}: c_d * C(d,i) * (-v)^i
        Rat expect = coeffs[d] * binom * rat_pow(-v, static_cast<unsigned long>(i));
        if (coeffs[d - i] != expect) return std::nullopt;
        binom = binom * Rat(d - i) / Rat(i + 1);
    }
    return v;
}

// One branch of the pivot search. Rules 1 and 2 are forced moves; rule 3
// (expressing an unknown from an equation where it occurs linearly with a
// constant coefficient) is a choice point explored depth-first in the fixed
// (level, name, equation index) order.
struct Ladder {
    std::vector<Constraint> eqs;
    Assignment solved;
    std::vector<std::pair<std::string, UPoly>> expressed;

    void substitute_everywhere(const std::string& key, const UPoly& value) {
        for (auto& eq : eqs) eq.poly = eq.poly.substitute(key, value);
        for (auto& [k, v] : expressed) v = v.substitute(key, value);
    }

    void assign(const std::string& key, const Rat& value) {
        solved[key] = value;
        substitute_everywhere(key, UPoly::constant(value));
    }

    // Drops settled equations; throws Inconsistent on a nonzero constant
    // (every move preserves the solution set, so a contradiction anywhere
    // is a contradiction of the input system).
    void drop_settled() {
        std::vector<Constraint> live;
        for (auto& eq : eqs) {
            if (eq.poly.is_zero()) continue;
            if (eq.poly.is_constant())
                fail(Errc::Inconsistent,
                     "equation from " + eq.origin + " reduces to " +
                         rat_to_string(eq.poly.constant_value()) + " = 0");
            live.push_back(std::move(eq));
        }
        eqs = std::move(live);
    }

    // Applies every forced move until none fires.
    void forced_moves() {
        while (true) {
            drop_settled();
            struct Candidate {
                std::string key;
                size_t eq;
                Rat value;
            };
            std::optional<Candidate> pivot;
            auto consider = [&](const std::string& key, size_t i, const Rat& v) {
                if (!pivot || unknown_less(key, pivot->key) ||
                    (key == pivot->key && i < pivot->eq))
                    pivot = Candidate{key, i, v};
            };
            for (int pass = 1; pass <= 2 && !pivot; ++pass) {
                for (size_t i = 0; i < eqs.size(); ++i) {
                    auto names = eqs[i].poly.unknowns();
                    if (names.size() != 1) continue;
                    const std::string& key = *names.begin();
                    auto coeffs = eqs[i].poly.univariate_coeffs(key);
                    if (pass == 1) {
                        if (coeffs.size() == 2) consider(key, i, -coeffs[0] / coeffs[1]);
                    } else if (auto v = unique_root(coeffs)) {
                        consider(key, i, *v);
                    }
                }
            }
            if (!pivot) return;
            assign(pivot->key, pivot->value);
        }
    }

    std::vector<std::pair<std::string, size_t>> substitution_choices() const {
        std::vector<std::pair<std::string, size_t>> out;
        for (size_t i = 0; i < eqs.size(); ++i)
            for (const auto& key : eqs[i].poly.unknowns()) {
                auto parts = eqs[i].poly.split_linear(key);
                if (!parts) continue;
                const auto& [a, b] = *parts;
                if (!a.is_constant() || a.constant_value() == 0) continue;
                out.push_back({key, i});
            }
        // Highest (level, name) first: the later-level product unknowns are
        // expressed through the current-level data, mirroring the order of
        // the r-induction. Equation index breaks ties.
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) {
                      if (x.first != y.first) return unknown_less(y.first, x.first);
                      return x.second < y.second;
                  });
        return out;
    }

    // Resolves the expressed unknowns, latest first. False when one of them
    // stays symbolic.
    bool back_substitute() {
        for (auto it = expressed.rbegin(); it != expressed.rend(); ++it) {
            UPoly v = it->second;
            for (const auto& [key, value] : solved) v = v.substitute(key, value);
            if (!v.is_constant()) return false;
            solved[it->first] = v.constant_value();
        }
        return true;
    }
};

struct SearchContext {
    long budget = 200000;
    std::set<std::string> dead_states;
    std::string first_dead_end;
};

std::string canonical_state(const Ladder& state) {
    std::vector<std::string> rendered;
    rendered.reserve(state.eqs.size());
    for (const auto& eq : state.eqs) rendered.push_back(eq.poly.str());
    std::sort(rendered.begin(), rendered.end());
    std::string key;
    for (const auto& r : rendered) {
        key += r;
        key += ';';
    }
    return key;
}

std::optional<Assignment> ladder_search(Ladder state, SearchContext& ctx) {
    static const bool trace = std::getenv("EQH_SOLVER_TRACE") != nullptr;
    if (ctx.budget-- < 0) return std::nullopt;
    state.forced_moves();
    if (trace) {
        std::ostringstream os;
        os << "node(depth " << state.expressed.size() << ", eqs " << state.eqs.size()
           << "): solved";
        for (auto& [k, v] : state.solved) os << " " << k << "=" << v;
        os << " | expressed";
        for (auto& [k, v] : state.expressed) os << " " << k << ":=" << v.str();
        std::fprintf(stderr, "%s\n", os.str().c_str());
        for (auto& eq : state.eqs)
            std::fprintf(stderr, "    %s = 0\n", eq.poly.str().c_str());
    }
    if (state.eqs.empty()) {
        if (state.back_substitute()) return state.solved;
        if (ctx.first_dead_end.empty())
            ctx.first_dead_end = "system is underdetermined along the ladder";
        return std::nullopt;
    }
    // Dead states are keyed on the residual equations alone; a hit can only
    // prune to Stuck, never produce a wrong assignment.
    const std::string memo_key = canonical_state(state);
    if (ctx.dead_states.count(memo_key)) return std::nullopt;
    auto choices = state.substitution_choices();
    if (choices.empty() && ctx.first_dead_end.empty()) {
        std::ostringstream os;
        os << "no pivot in the residual system:\n";
        for (const auto& eq : state.eqs)
            os << "  " << eq.poly.str() << " = 0    # " << eq.origin << "\n";
        ctx.first_dead_end = os.str();
    }
    for (const auto& [key, i] : choices) {
        Ladder next = state;
        auto [a, b] = *next.eqs[i].poly.split_linear(key);
        UPoly value = b.scaled(Rat(-1) / a.constant_value());
        next.expressed.push_back({key, value});
        next.eqs.erase(next.eqs.begin() + static_cast<long>(i));
        next.substitute_everywhere(key, value);
        if (auto found = ladder_search(std::move(next), ctx)) return found;
    }
    ctx.dead_states.insert(memo_key);
    return std::nullopt;
}

} // namespace

Assignment solve_sequential(const ConstraintSystem& sys) {
    Ladder root;
    root.eqs = sys.equations;
    for (const auto& [key, value] : sys.seeds) root.assign(key, value);

    SearchContext ctx;
    auto found = ladder_search(root, ctx);
    if (std::getenv("EQH_SOLVER_STATS") != nullptr)
        std::fprintf(stderr, "solver stats: nodes=%ld dead_states=%zu\n",
                     200000 - ctx.budget, ctx.dead_states.size());
    if (!found)
        fail(Errc::Stuck, ctx.first_dead_end.empty()
                              ? "pivot search budget exhausted"
                              : ctx.first_dead_end);

    // Sanity: the assignment kills every original equation.
    for (const auto& eq : sys.equations) {
        UPoly p = eq.poly;
        for (const auto& [key, value] : *found) p = p.substitute(key, value);
        if (!p.is_zero())
            fail(Errc::VerificationFailed,
                 "assignment does not satisfy " + eq.origin);
    }
    return *found;
}


SolveRun induct_over_r(const AnsatzBundle& ansatz, int r_max) {
    if (r_max < 0) fail(Errc::BadParam, "r_max must be nonnegative");
    SolveRun run;
    Assignment all;
    if (!ansatz.has_product) {
        // Nothing to derive: the Seidel template must already be numeric.
        for (int r = 0; r <= r_max; ++r) {
            SeidelFamily f{ansatz.space_id, ansatz.basis, ansatz.cfg,
                           ansatz.maslov_shift, ansatz.seidel_tmpl, false};
            run.levels.push_back({r, seidel_instantiate(f, r), std::nullopt});
        }
        return run;
    }
    std::vector<std::string> inputs = ansatz.basis.labels;
    for (int r = 0; r <= r_max; ++r) {
        ConstraintSystem sys;
        try {
            sys = extract_constraints(ansatz, r, inputs, all);
            run.listings.push_back(sys.listing());
            Assignment solved = solve_sequential(sys);
            all.insert(solved.begin(), solved.end());
        } catch (const Error& e) {
            if (e.code() == Errc::Stuck || e.code() == Errc::Inconsistent)
                fail(e.code(), "at level r=" + std::to_string(r) + ": " + e.what());
            throw;
        }
    }
    if (ansatz.cfg.coeff_domain == CoeffDomain::Integer)
        for (const auto& [key, value] : all)
            if (!is_integral(value))
                fail(Errc::VerificationFailed,
                     "solved value " + key + " = " + rat_to_string(value) +
                         " is not an integer");
    run.values = all;

    // Materialize the solved families for r = 0..r_max.
    for (int r = 0; r <= r_max; ++r) {
        auto substitute_all = [&](const SymMatrix& tmpl, int level) {
            SymMatrix m = leveled(tmpl, level, level, ansatz, all);
            std::vector<std::vector<RingElem>> mat(m.size());
            for (size_t l = 0; l < m.size(); ++l)
                for (const auto& e : m[l]) mat[l].push_back(e.ring_value());
            return mat;
        };
        GradedMap seidel(ansatz.basis, ansatz.basis, ansatz.maslov_shift,
                         substitute_all(ansatz.seidel_tmpl, r));
        GradedMap lop(ansatz.basis, ansatz.basis, ansatz.basis.degree(ansatz.gen),
                      substitute_all(ansatz.product_tmpl, r));
        run.levels.push_back({r, std::move(seidel), std::move(lop)});
    }
    return run;
}

} // namespace eqh
