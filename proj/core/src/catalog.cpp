#include "eqh/catalog.hpp"

#include <algorithm>
#include <sstream>

namespace eqh {

namespace {

SymElem snum(const RingConfig& cfg, const Rat& c, int a = 0, int b = 0) {
    return SymElem::from_ring(RingElem::monomial(cfg, c, a, b));
}

SymElem svar_r(const RingConfig& cfg) { return SymElem::variable(cfg, "r"); }

// (r+1)^m
SymElem r_plus_1_pow(const RingConfig& cfg, int m) {
    return (svar_r(cfg) + SymElem::constant(cfg, 1)).pow(m);
}

SymMatrix zero_tmpl(size_t n, const RingConfig& cfg) {
    return SymMatrix(n, std::vector<SymElem>(n, SymElem(cfg)));
}

BasisSpec standard_basis(size_t count) {
    BasisSpec b;
    for (size_t k = 0; k < count; ++k) {
        b.labels.push_back("e" + std::to_string(k));
        b.degrees.push_back(2 * static_cast<int>(k));
    }
    return b;
}

struct IdParts {
    std::string kind;
    int n = 0;
};

IdParts parse_id(const std::string& id) {
    auto open = id.find('(');
    if (open == std::string::npos) return {id, 0};
    auto close = id.find(')', open);
    if (close == std::string::npos || close + 1 != id.size())
        fail(Errc::BadParam, "malformed space id: " + id);
    IdParts parts{id.substr(0, open), 0};
    try {
        parts.n = std::stoi(id.substr(open + 1, close - open - 1));
    } catch (const std::exception&) {
        fail(Errc::BadParam, "malformed space parameter in: " + id);
    }
    return parts;
}

SpaceSpec make_complex_space(int n, const std::string& id) {
    if (n < 1) fail(Errc::BadParam, "complex_space needs n >= 1");
    SpaceSpec s;
    s.id = id;
    s.ring = ring_config_z();
    s.basis = BasisSpec{{"e0"}, {0}};
    s.has_product = false;
    s.maslov_shift = 2 * n;
    s.seidel_tmpl = {{r_plus_1_pow(s.ring, n) * snum(s.ring, 1, 0, n)}};
    return s;
}

SpaceSpec make_projective_space(int n) {
    if (n < 1) fail(Errc::BadParam, "projective_space needs n >= 1");
    SpaceSpec s;
    s.id = "projective_space(" + std::to_string(n) + ")";
    s.ring = ring_config_zq(2 * (n + 1));
    s.basis = standard_basis(n + 1);
    s.has_product = true;
    s.maslov_shift = 2 * n;
    const auto& cfg = s.ring;

    s.product_tmpl = zero_tmpl(n + 1, cfg);
    s.product_tmpl[1][0] = snum(cfg, 1); // e1 * e0 = e1
    for (int k = 1; k < n; ++k) {
        s.product_tmpl[k + 1][k] = snum(cfg, 1);
        s.product_tmpl[k][k] = -(svar_r(cfg) * snum(cfg, 1, 0, 1));
    }
    s.product_tmpl[0][n] = snum(cfg, 1, 1, 0);
    s.product_tmpl[n][n] = -(svar_r(cfg) * snum(cfg, 1, 0, 1));

    s.seidel_tmpl = zero_tmpl(n + 1, cfg);
    for (int l = 0; l <= n; ++l)
        s.seidel_tmpl[l][0] = r_plus_1_pow(cfg, n - l) * snum(cfg, 1, 0, n - l);
    for (int k = 1; k <= n; ++k)
        for (int l = 0; l < k; ++l)
            s.seidel_tmpl[l][k] =
                r_plus_1_pow(cfg, k - 1 - l) * snum(cfg, 1, 1, k - 1 - l);

    s.inverse_shift = -2 * n;
    s.inverse_tmpl = zero_tmpl(n + 1, cfg);
    s.inverse_tmpl[1][0] = snum(cfg, 1, -1, 0);
    for (int k = 1; k < n; ++k) {
        s.inverse_tmpl[k][k] = -(r_plus_1_pow(cfg, 1) * snum(cfg, 1, -1, 1));
        s.inverse_tmpl[k + 1][k] = snum(cfg, 1, -1, 0);
    }
    s.inverse_tmpl[n][n] = -(r_plus_1_pow(cfg, 1) * snum(cfg, 1, -1, 1));
    s.inverse_tmpl[0][n] = snum(cfg, 1);

    // Ansatz metadata: the classical coefficient names, the fixed-count seed at the
    // bottom of the e0 column, and the level-0 vanishing of the u-terms.
    for (int k = 1; k < n; ++k) {
        AnsatzSlot slot{false, static_cast<size_t>(k), static_cast<size_t>(k), 0, 1};
        s.slot_names[slot] = n == 2 && k == 1 ? "alpha" : "alpha" + std::to_string(k);
        s.level_seeds[{s.slot_names[slot], 0}] = 0;
    }
    {
        AnsatzSlot slot{false, static_cast<size_t>(n), static_cast<size_t>(n), 0, 1};
        s.slot_names[slot] = "gamma";
        s.level_seeds[{"gamma", 0}] = 0;
    }
    for (int l = 1; l < n; ++l) {
        AnsatzSlot slot{true, 0, static_cast<size_t>(l), 0, n - l};
        s.slot_names[slot] = n == 2 && l == 1 ? "A" : "A" + std::to_string(l);
    }
    {
        AnsatzSlot slot{true, 0, 0, 0, n};
        s.slot_names[slot] = "B";
        s.expr_seeds["B"] = r_plus_1_pow(cfg, n);
    }
    for (int k = 2; k <= n; ++k)
        for (int l = 0; l <= k - 2; ++l) {
            AnsatzSlot slot{true, static_cast<size_t>(k), static_cast<size_t>(l), 1,
                            k - 1 - l};
            s.slot_names[slot] = n == 2 ? "F"
                                        : "F" + std::to_string(k) + "_" +
                                              std::to_string(l);
        }
    return s;
}

SpaceSpec make_taut_line_bundle(int n) {
    if (n < 1) fail(Errc::BadParam, "taut_line_bundle needs n >= 1");
    SpaceSpec s;
    s.id = "taut_line_bundle(" + std::to_string(n) + ")";
    s.ring = ring_config_zq(2 * n);
    s.basis = standard_basis(n + 1);
    s.has_product = true;
    s.maslov_shift = 2;
    const auto& cfg = s.ring;

    s.product_tmpl = zero_tmpl(n + 1, cfg);
    s.product_tmpl[1][0] = snum(cfg, 1);
    for (int k = 1; k < n; ++k) s.product_tmpl[k + 1][k] = snum(cfg, 1);
    s.product_tmpl[1][n] = snum(cfg, -1, 1, 0);
    s.product_tmpl[0][n] = svar_r(cfg) * snum(cfg, 1, 1, 1);

    s.seidel_tmpl = zero_tmpl(n + 1, cfg);
    for (int k = 0; k < n; ++k) {
        s.seidel_tmpl[k + 1][k] += snum(cfg, -1);
        s.seidel_tmpl[k][k] += r_plus_1_pow(cfg, 1) * snum(cfg, 1, 0, 1);
    }
    // For n = 1 the q and (r+1)u entries of the last column share a slot.
    s.seidel_tmpl[1][n] += snum(cfg, 1, 1, 0);
    s.seidel_tmpl[n][n] += r_plus_1_pow(cfg, 1) * snum(cfg, 1, 0, 1);
    s.seidel_tmpl[0][n] += -(r_plus_1_pow(cfg, 1) * snum(cfg, 1, 1, 1));

    // Ordered basis for the direct-limit computation.
    ModuleElem g0(s.basis, cfg);
    g0.set_coord(0, RingElem::monomial(cfg, 1, 1, 0));
    g0.set_coord(static_cast<size_t>(n), RingElem::one(cfg));
    s.limit_labels.push_back("g0");
    s.limit_basis.push_back(g0);
    for (int k = 1; k <= n; ++k) {
        s.limit_labels.push_back("g" + std::to_string(k));
        s.limit_basis.push_back(
            ModuleElem::unit(s.basis, cfg, static_cast<size_t>(k)));
    }

    {
        AnsatzSlot slot{false, static_cast<size_t>(n), 0, 1, 1};
        s.slot_names[slot] = "c";
        s.level_seeds[{"c", 0}] = 0;
    }
    {
        AnsatzSlot slot{true, static_cast<size_t>(n), 0, 1, 1};
        s.slot_names[slot] = "d";
    }
    for (int k = 0; k < n; ++k) {
        AnsatzSlot slot{true, static_cast<size_t>(k), static_cast<size_t>(k), 0, 1};
        s.slot_seeds[slot] = r_plus_1_pow(cfg, 1);
    }
    {
        AnsatzSlot slot{true, static_cast<size_t>(n), static_cast<size_t>(n), 0, 1};
        s.slot_seeds[slot] = r_plus_1_pow(cfg, 1);
    }
    return s;
}

// Enumerates the graded-legal slots of one template column.
std::vector<AnsatzSlot> legal_slots(const SpaceSpec& spec, bool in_seidel,
                                    size_t col, int shift) {
    std::vector<AnsatzSlot> out;
    const int q_deg = spec.ring.q_degree;
    for (size_t row = 0; row < spec.rank(); ++row) {
        const int entry_deg = shift + spec.basis.degree(col) - spec.basis.degree(row);
        if (entry_deg < 0) continue;
        const int a_max = spec.ring.has_q ? entry_deg / q_deg : 0;
        for (int a = 0; a <= a_max; ++a) {
            const int rest = entry_deg - a * q_deg;
            if (rest < 0 || rest % 2 != 0) continue;
            out.push_back({in_seidel, col, row, a, rest / 2});
        }
    }
    return out;
}

} // namespace

SeidelFamily SpaceSpec::seidel_family() const {
    return SeidelFamily{id, basis, ring, maslov_shift, seidel_tmpl, false};
}

std::optional<SeidelFamily> SpaceSpec::inverse_family() const {
    if (!inverse_shift) return std::nullopt;
    return SeidelFamily{id, basis, ring, *inverse_shift, inverse_tmpl, true};
}

GeneratorProduct SpaceSpec::product_at(int r) const {
    if (!has_product) fail(Errc::BadParam, id + " has no generator product");
    const size_t unit = basis.index_of(unit_label);
    const size_t gen = basis.index_of(gen_label);
    GradedMap L(basis, basis, basis.degree(gen),
                sym_matrix_eval_r(product_tmpl, r, ring));
    return GeneratorProduct{basis, unit, gen, r, std::move(L)};
}

ProductTable SpaceSpec::table_at(int r) const {
    if (!has_product)
        return ProductTable::trivial(basis, basis.index_of(unit_label), ring);
    return product_expand(product_at(r));
}

void SpaceSpec::validate() const {
    ring.validate();
    basis.validate();
    basis.index_of(unit_label);
    if (has_product) basis.index_of(gen_label);
    auto check_tmpl = [&](const SymMatrix& tmpl, int shift, const std::string& what) {
        if (tmpl.empty()) return;
        if (tmpl.size() != rank())
            fail(Errc::SemanticError, what + " template shape mismatch");
        for (const auto& row : tmpl)
            if (row.size() != rank())
                fail(Errc::SemanticError, what + " template shape mismatch");
        for (int r : {0, 1}) {
            SymMatrix m = sym_matrix_subst_r(tmpl, r);
            for (size_t l = 0; l < rank(); ++l)
                for (size_t k = 0; k < rank(); ++k) {
                    const int want = shift + basis.degree(k) - basis.degree(l);
                    for (const auto& [mono, c] : m[l][k].terms())
                        for (const auto& [key, q] : c.terms())
                            if (key.a * ring.q_degree + 2 * key.b != want)
                                fail(Errc::SemanticError,
                                     what + " entry (" + basis.labels[l] + "," +
                                         basis.labels[k] + ") violates degree " +
                                         std::to_string(want));
                }
        }
    };
    if (has_product)
        check_tmpl(product_tmpl, basis.degree(basis.index_of(gen_label)), "product");
    check_tmpl(seidel_tmpl, maslov_shift, "seidel");
    if (inverse_shift) check_tmpl(inverse_tmpl, *inverse_shift, "inverse seidel");
    if (!limit_basis.empty() && limit_basis.size() != rank())
        fail(Errc::SemanticError, "limit basis must have full rank");
    for (const auto& [nk, v] : level_seeds)
        if (nk.second < 0) fail(Errc::SemanticError, "seed level must be >= 0");
}

bool spec_equal(const SpaceSpec& a, const SpaceSpec& b) {
    return a.id == b.id && a.ring == b.ring && a.basis == b.basis &&
           a.has_product == b.has_product && a.unit_label == b.unit_label &&
           a.gen_label == b.gen_label && a.product_tmpl == b.product_tmpl &&
           a.maslov_shift == b.maslov_shift && a.seidel_tmpl == b.seidel_tmpl &&
           a.inverse_shift == b.inverse_shift && a.inverse_tmpl == b.inverse_tmpl &&
           a.limit_labels == b.limit_labels && a.limit_basis == b.limit_basis &&
           a.expr_seeds == b.expr_seeds && a.level_seeds == b.level_seeds;
}

std::vector<std::string> builtin_ids() {
    return {"complex_plane", "complex_space(n)", "projective_space(n)",
            "taut_line_bundle(n)"};
}

SpaceSpec builtin_space(const std::string& id) {
    const IdParts parts = parse_id(id);
    if (parts.kind == "complex_plane") {
        if (id != "complex_plane") fail(Errc::BadParam, "complex_plane takes no parameter");
        return make_complex_space(1, "complex_plane");
    }
    if (parts.kind == "complex_space") return make_complex_space(parts.n, id);
    if (parts.kind == "projective_space") return make_projective_space(parts.n);
    if (parts.kind == "taut_line_bundle") return make_taut_line_bundle(parts.n);
    fail(Errc::UnknownSpace, id);
}

namespace {

std::string systematic_name(const AnsatzSlot& s) {
    std::ostringstream os;
    os << (s.in_seidel ? "S" : "P") << s.col << "_" << s.row << "_" << s.a << "_"
       << s.b;
    return os.str();
}

} // namespace

AnsatzBundle make_ansatz(const SpaceSpec& spec) {
    // Default structural zeros: every graded-legal slot with b >= 1 that is
    // neither named nor seeded.
    std::vector<AnsatzSlot> zeros;
    auto collect = [&](bool in_seidel, size_t col, int shift) {
        for (const auto& slot : legal_slots(spec, in_seidel, col, shift)) {
            if (slot.b == 0) continue;
            if (spec.slot_names.count(slot) || spec.slot_seeds.count(slot)) continue;
            zeros.push_back(slot);
        }
    };
    if (spec.has_product) {
        const size_t unit = spec.basis.index_of(spec.unit_label);
        const size_t gen = spec.basis.index_of(spec.gen_label);
        for (size_t k = 0; k < spec.rank(); ++k)
            if (k != unit) collect(false, k, spec.basis.degree(gen));
    }
    for (size_t k = 0; k < spec.rank(); ++k) collect(true, k, spec.maslov_shift);
    return make_ansatz(spec, zeros);
}

AnsatzBundle make_ansatz(const SpaceSpec& spec,
                         const std::vector<AnsatzSlot>& structural_zeros) {
    const RingConfig& cfg = spec.ring;
    AnsatzBundle bundle;
    bundle.space_id = spec.id;
    bundle.basis = spec.basis;
    bundle.cfg = cfg;
    if (!spec.has_product) {
        // Nothing to derive: the family itself is the complete answer.
        bundle.has_product = false;
        bundle.unit = spec.basis.index_of(spec.unit_label);
        bundle.maslov_shift = spec.maslov_shift;
        bundle.seidel_tmpl = spec.seidel_tmpl;
        return bundle;
    }
    bundle.has_product = true;
    bundle.unit = spec.basis.index_of(spec.unit_label);
    bundle.gen = spec.basis.index_of(spec.gen_label);
    bundle.maslov_shift = spec.maslov_shift;
    bundle.expr_seeds = spec.expr_seeds;
    bundle.level_seeds = spec.level_seeds;
    bundle.alpha_label = spec.gen_label;

    auto zeroed = [&](const AnsatzSlot& slot) {
        return std::find(structural_zeros.begin(), structural_zeros.end(), slot) !=
               structural_zeros.end();
    };

    auto build = [&](bool in_seidel, const SymMatrix& tmpl, int shift) {
        SymMatrix out = zero_tmpl(spec.rank(), cfg);
        for (size_t col = 0; col < spec.rank(); ++col) {
            if (!in_seidel && col == bundle.unit) {
                out[bundle.gen][col] = SymElem::constant(cfg, 1);
                continue;
            }
            for (const auto& slot : legal_slots(spec, in_seidel, col, shift)) {
                if (slot.b == 0) {
                    // The u^0 layer is the known non-equivariant data; it
                    // must be r-independent in the template.
                    SymElem base = tmpl[slot.row][slot.col].substitute("r", Rat(0));
                    Rat c0 = base.is_zero() ? Rat(0)
                                            : base.ring_value().coeff(slot.a, 0);
                    SymElem at1 = tmpl[slot.row][slot.col].substitute("r", Rat(1));
                    Rat c1 = at1.is_zero() ? Rat(0)
                                           : at1.ring_value().coeff(slot.a, 0);
                    if (c0 != c1)
                        fail(Errc::DegreeViolation,
                             "u^0 layer depends on r at slot " + systematic_name(slot));
                    if (c0 != 0)
                        out[slot.row][slot.col] += snum(cfg, c0, slot.a, 0);
                    continue;
                }
                if (zeroed(slot)) continue;
                auto seed = spec.slot_seeds.find(slot);
                if (seed != spec.slot_seeds.end()) {
                    out[slot.row][slot.col] +=
                        seed->second * snum(cfg, 1, slot.a, slot.b);
                    continue;
                }
                auto named = spec.slot_names.find(slot);
                const std::string name =
                    named != spec.slot_names.end() ? named->second : systematic_name(slot);
                bundle.unknown_names.push_back(name);
                out[slot.row][slot.col] +=
                    SymElem::variable(cfg, name) * snum(cfg, 1, slot.a, slot.b);
            }
        }
        return out;
    };

    bundle.product_tmpl = build(false, spec.product_tmpl, spec.basis.degree(bundle.gen));
    bundle.seidel_tmpl = build(true, spec.seidel_tmpl, spec.maslov_shift);
    std::sort(bundle.unknown_names.begin(), bundle.unknown_names.end());
    return bundle;
}

AnsatzBundle ansatz_from_template_spec(const SpaceSpec& spec) {
    if (!spec.has_product)
        fail(Errc::BadParam, spec.id + " has no product to solve for");
    AnsatzBundle bundle;
    bundle.space_id = spec.id;
    bundle.basis = spec.basis;
    bundle.cfg = spec.ring;
    bundle.has_product = true;
    bundle.unit = spec.basis.index_of(spec.unit_label);
    bundle.gen = spec.basis.index_of(spec.gen_label);
    bundle.maslov_shift = spec.maslov_shift;
    bundle.product_tmpl = spec.product_tmpl;
    bundle.seidel_tmpl = spec.seidel_tmpl;
    bundle.expr_seeds = spec.expr_seeds;
    bundle.level_seeds = spec.level_seeds;
    bundle.alpha_label = spec.gen_label;
    std::set<std::string> names;
    for (const auto* tmpl : {&spec.product_tmpl, &spec.seidel_tmpl})
        for (const auto& row : *tmpl)
            for (const auto& e : row)
                for (const auto& s : e.symbols())
                    if (s != "r") names.insert(s);
    bundle.unknown_names.assign(names.begin(), names.end());
    return bundle;
}

} // namespace eqh
