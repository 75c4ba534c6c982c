#include "eqh/limits.hpp"

#include <algorithm>

namespace eqh {

namespace {

BasisSpec ordered_spec(const std::vector<ModuleElem>& vectors,
                       const std::vector<std::string>& labels) {
    BasisSpec spec;
    for (size_t k = 0; k < vectors.size(); ++k) {
        auto deg = vectors[k].homogeneous_degree();
        if (!deg) fail(Errc::BadParam, "ordered basis vector is zero");
        spec.labels.push_back(k < labels.size() ? labels[k]
                                                : "g" + std::to_string(k));
        spec.degrees.push_back(*deg);
    }
    spec.validate();
    return spec;
}

ModuleElem column_of(const RingMatrix& m, size_t k, const BasisSpec& basis,
                     const RingConfig& cfg) {
    ModuleElem v(basis, cfg);
    for (size_t l = 0; l < m.size(); ++l) v.set_coord(l, m[l][k]);
    return v;
}

} // namespace

GeneratorSequence generator_sequence(const SeidelFamily& f,
                                     const std::vector<ModuleElem>& ordered_basis,
                                     const std::vector<std::string>& ordered_labels,
                                     int p_max) {
    if (p_max < 0) fail(Errc::BadParam, "p_max must be nonnegative");
    const RingConfig& cfg = f.cfg;
    GeneratorSequence seq;
    seq.space_id = f.space_id;
    seq.cfg = cfg;
    seq.local_cfg = localized(cfg);
    seq.ordered = ordered_spec(ordered_basis, ordered_labels);
    const size_t n = seq.ordered.rank();

    // Conjugated matrices A_r and their adjugates.
    std::vector<RingMatrix> conj, adj;
    std::vector<RingElem> dets;
    for (int r = 0; r < p_max; ++r) {
        GradedMap a = seidel_instantiate(f, r).change_basis(ordered_basis, seq.ordered);
        RingMatrix m = a.matrix();
        RingElem det = det_division_free(m, cfg);
        if (det.is_zero())
            fail(Errc::BadParam, "family is not injective at r=" + std::to_string(r));
        conj.push_back(m);
        adj.push_back(adjugate(m, cfg));
        dets.push_back(det);
    }

    // Route one: full adjugate products, recomputed per stage. Route two:
    // the step recurrence x_k^{p+1} = sum_l (A_p*)_{l k} x_l^p.
    std::vector<ModuleElem> rec;
    for (size_t k = 0; k < n; ++k)
        rec.push_back(ModuleElem::unit(seq.ordered, cfg, k));
    for (int p = 0; p <= p_max; ++p) {
        GeneratorStage stage;
        stage.p = p;
        stage.det_step = p == 0 ? RingElem::one(cfg) : dets[p - 1];
        stage.det_product = RingElem::one(cfg);
        for (int r = 0; r < p; ++r) stage.det_product = stage.det_product * dets[r];

        RingMatrix direct = mat_identity(n, cfg);
        for (int r = 0; r < p; ++r) direct = mat_mul(direct, adj[r], cfg);
        for (size_t k = 0; k < n; ++k) {
            ModuleElem d = column_of(direct, k, seq.ordered, cfg);
            if (!(d == rec[k]))
                fail(Errc::RouteMismatch,
                     "adjugate product and recurrence disagree at p=" +
                         std::to_string(p) + " k=" + std::to_string(k) + ": " +
                         d.str() + " vs " + rec[k].str());
            stage.raw.push_back(d);
        }

        const RingElem det_local = stage.det_product.with_config(seq.local_cfg);
        const RingElem det_inv = det_local.inverse();
        for (size_t k = 0; k < n; ++k)
            stage.normalized.push_back(
                stage.raw[k].with_config(seq.local_cfg).scaled(det_inv));
        seq.stages.push_back(std::move(stage));

        if (p < p_max) {
            std::vector<ModuleElem> next;
            for (size_t k = 0; k < n; ++k) {
                ModuleElem acc(seq.ordered, cfg);
                for (size_t l = 0; l < n; ++l) {
                    const RingElem& c = adj[p][l][k];
                    if (c.is_zero()) continue;
                    acc = acc + rec[l].scaled(c);
                }
                next.push_back(acc);
            }
            rec = std::move(next);
        }
    }

    // Rank-two presentation: one (p+1)u factor of D_{p+1} cancels against
    // x_1^{p+1} = (p+1) u x_0^p. The cancellation is checked by exact
    // division; families without this shape get no presentation entries.
    if (n == 2) {
        bool pattern = true;
        for (int p = 1; p <= p_max && pattern; ++p) {
            const RingElem step = RingElem::monomial(cfg, Rat(p), 0, 1);
            const ModuleElem& x1 = seq.stages[p].raw[1];
            const ModuleElem& x0_prev = seq.stages[p - 1].raw[0];
            for (size_t i = 0; i < n && pattern; ++i) {
                if (x1.coord(i).is_zero()) {
                    pattern = x0_prev.coord(i).is_zero();
                    continue;
                }
                try {
                    pattern = x1.coord(i).exact_div(step) == x0_prev.coord(i);
                } catch (const Error&) {
                    pattern = false;
                }
            }
            if (!pattern) break;
            // x_0^p / (1^2 ... p^2 (p+1) u^{2p+1}).
            RingElem divisor = RingElem::monomial(
                seq.local_cfg, Rat(int_pow(factorial(p), 2) * (p + 1)), 0, 2 * p + 1);
            seq.presentation.push_back(
                seq.stages[p].raw[0].with_config(seq.local_cfg).scaled(
                    divisor.inverse()));
        }
        if (!pattern) seq.presentation.clear();
    }
    return seq;
}

ChainReport chain_strictness(const GeneratorSequence& g) {
    ChainReport report;
    auto min_valuation = [](const GeneratorStage& stage) {
        int best = 0;
        bool found = false;
        for (const auto& v : stage.normalized) {
            if (v.is_zero()) continue;
            int val = v.u_valuation();
            if (!found || val < best) best = val;
            found = true;
        }
        return best;
    };
    for (size_t p = 0; p + 1 < g.stages.size(); ++p) {
        ChainStep step;
        step.p = static_cast<int>(p);
        step.min_valuation = min_valuation(g.stages[p]);
        int best = 0;
        bool strict = false;
        std::string witness;
        for (size_t k = 0; k < g.stages[p + 1].normalized.size(); ++k) {
            const auto& v = g.stages[p + 1].normalized[k];
            if (v.is_zero()) continue;
            int val = v.u_valuation();
            if (val < step.min_valuation && (!strict || val < best)) {
                strict = true;
                best = val;
                witness = g.ordered.labels[k];
            }
        }
        step.strict = strict;
        step.next_valuation = strict ? best : step.min_valuation;
        step.witness = witness;
        if (!strict) report.all_strict = false;
        report.steps.push_back(step);
    }
    return report;
}

std::vector<int> image_u_valuations(const SeidelFamily& f, size_t start, int steps) {
    std::vector<int> out;
    ModuleElem x = ModuleElem::unit(f.basis, f.cfg, start);
    for (int t = 0; t < steps; ++t) {
        x = seidel_instantiate(f, t).apply(x);
        out.push_back(x.u_valuation());
    }
    return out;
}

NonequivariantLimitReport nonequivariant_limit(const SeidelFamily& f) {
    NonequivariantLimitReport report;
    const RingConfig& cfg = f.cfg;
    const GradedMap m0 = seidel_instantiate(f, 0).at_u_zero();
    const RingMatrix& m = m0.matrix();
    const size_t n = f.basis.rank();
    report.zero_map = true;
    for (const auto& row : m)
        for (const auto& e : row)
            if (!e.is_zero()) report.zero_map = false;

    const RingElem det = det_bareiss(m, cfg);
    if (!det.is_zero()) {
        report.quotient_rank = n;
        report.quotient_labels = f.basis.labels;
        report.iso_on_quotient = true;
        report.limit_description = "full module";
        return report;
    }
    const RingMatrix adj = adjugate(m, cfg);
    std::optional<size_t> col;
    for (size_t k = 0; k < n && !col; ++k)
        for (size_t l = 0; l < n; ++l)
            if (!adj[l][k].is_zero()) {
                col = k;
                break;
            }
    if (!col) {
        report.limit_description = "kernel rank >= 2 (not presented)";
        return report;
    }
    // Normalize the kernel vector: clear the common coefficient gcd and the
    // common q-power, sign fixed by the highest nonzero coordinate.
    ModuleElem v = column_of(adj, *col, f.basis, cfg);
    Int gcd = 0;
    int qmin = 0;
    bool first = true;
    for (size_t l = 0; l < n; ++l)
        for (const auto& [k, c] : v.coord(l).terms()) {
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(),
                    Int(c.get_num()).get_mpz_t());
            qmin = first ? k.a : std::min(qmin, k.a);
            first = false;
        }
    if (gcd == 0) gcd = 1;
    RingElem scale = RingElem::monomial(cfg, make_rat(1, gcd), -qmin, 0);
    v = v.scaled(scale);
    size_t top = 0;
    for (size_t l = 0; l < n; ++l)
        if (!v.coord(l).is_zero()) top = l;
    if (v.coord(top).terms().begin()->second < 0) v = -v;
    report.kernel.push_back(v);

    // Quotient by the kernel: rewrite the top coordinate and check the
    // induced map is invertible over the Novikov ring.
    if (!v.coord(top).is_unit()) {
        report.limit_description = "kernel top coefficient is not a unit";
        return report;
    }
    std::vector<size_t> reps;
    for (size_t l = 0; l < n; ++l)
        if (l != top) reps.push_back(l);
    report.quotient_rank = reps.size();
    for (size_t l : reps) report.quotient_labels.push_back(f.basis.labels[l]);
    if (reps.empty()) {
        report.iso_on_quotient = true;
        report.limit_description = "0";
        return report;
    }
    const RingElem inv_top = v.coord(top).inverse();
    RingMatrix q(reps.size(), std::vector<RingElem>(reps.size(), RingElem(cfg)));
    for (size_t jj = 0; jj < reps.size(); ++jj) {
        ModuleElem img = m0.apply(ModuleElem::unit(f.basis, cfg, reps[jj]));
        // e_top == -(sum of the other kernel coordinates) / v_top.
        RingElem top_coeff = img.coord(top);
        for (size_t ii = 0; ii < reps.size(); ++ii) {
            RingElem e = img.coord(reps[ii]);
            if (!top_coeff.is_zero())
                e = e - top_coeff * inv_top * v.coord(reps[ii]);
            q[ii][jj] = e;
        }
    }
    RingElem qdet = det_bareiss(q, cfg);
    report.iso_on_quotient = qdet.is_unit();
    report.limit_description =
        report.iso_on_quotient
            ? "free of rank " + std::to_string(reps.size()) + " over the Novikov ring"
            : "quotient map not invertible";
    return report;
}

Rank1Report rank1_limit(const SeidelFamily& f, int s_max) {
    Rank1Report report;
    if (f.basis.rank() != 1) return report;
    std::vector<std::pair<Int, int>> factors;
    for (int s = 0; s <= s_max; ++s) {
        const GradedMap m = seidel_instantiate(f, s);
        const RingElem& e = m.entry(0, 0);
        if (e.terms().size() != 1) return report;
        const auto& [key, c] = *e.terms().begin();
        if (key.a != 0 || !is_integral(c)) return report;
        factors.push_back({Int(c.get_num()), key.b});
    }
    return rank1_limit_from_factors(factors);
}

Rank1Report rank1_limit_from_factors(
    const std::vector<std::pair<Int, int>>& factors) {
    Rank1Report report;
    for (size_t s = 0; s < factors.size(); ++s) {
        const auto& [scalar, upow] = factors[s];
        report.factors.push_back(scalar.get_str() + "*u" +
                                 (upow == 1 ? "" : "^" + std::to_string(upow)));
        if (scalar != Int(static_cast<long>(s + 1)) || upow != 1) return report;
    }
    report.recognized = !factors.empty();
    if (report.recognized) report.limit = "Q[u,u^-1]";
    return report;
}

} // namespace eqh
