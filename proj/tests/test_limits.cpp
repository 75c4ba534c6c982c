#include <doctest.h>

#include "eqh/catalog.hpp"
#include "eqh/limits.hpp"
#include "test_support.hpp"

using namespace eqh;

namespace {

RingElem mono(const RingConfig& cfg, int c, int a, int b) {
    return RingElem::monomial(cfg, c, a, b);
}

RingMatrix ordered_matrix(const SpaceSpec& spec, int r, BasisSpec& ordered_out) {
    BasisSpec ordered;
    for (size_t k = 0; k < spec.limit_labels.size(); ++k) {
        ordered.labels.push_back(spec.limit_labels[k]);
        ordered.degrees.push_back(*spec.limit_basis[k].homogeneous_degree());
    }
    ordered_out = ordered;
    return seidel_instantiate(spec.seidel_family(), r)
        .change_basis(spec.limit_basis, ordered)
        .matrix();
}

SeidelFamily identity_family(const BasisSpec& basis, const RingConfig& cfg) {
    SymMatrix tmpl(basis.rank(), std::vector<SymElem>(basis.rank(), SymElem(cfg)));
    for (size_t i = 0; i < basis.rank(); ++i)
        tmpl[i][i] = SymElem::constant(cfg, 1);
    return SeidelFamily{"identity", basis, cfg, 0, tmpl, false};
}

} // namespace

TEST_CASE("division-free determinants") {
    const SpaceSpec t2 = builtin_space("taut_line_bundle(2)");
    BasisSpec ordered;
    const RingMatrix a1 = ordered_matrix(t2, 1, ordered);
    CHECK(det_division_free(a1, t2.ring) == mono(t2.ring, 8, 0, 3));

    CHECK(det_division_free(mat_identity(4, t2.ring), t2.ring).is_one());

    // n = 1 at r = 0 by hand cofactor expansion: 0 (q+2u) - (-u) u = u^2.
    const SpaceSpec t1 = builtin_space("taut_line_bundle(1)");
    BasisSpec ordered1;
    const RingMatrix a0 = ordered_matrix(t1, 0, ordered1);
    CHECK(det_division_free(a0, t1.ring) == mono(t1.ring, 1, 0, 2));

    // The determinant law across n and r, by both algorithms.
    for (int n : {1, 2, 3}) {
        const SpaceSpec spec =
            builtin_space("taut_line_bundle(" + std::to_string(n) + ")");
        for (int r = 0; r <= 5; ++r) {
            BasisSpec ob;
            const RingMatrix m = ordered_matrix(spec, r, ob);
            const RingElem want =
                mono(spec.ring, 1, 0, n + 1).scaled(int_pow(Int(r + 1), n + 1));
            CHECK(det_bareiss(m, spec.ring) == want);
            CHECK(det_berkowitz(m, spec.ring) == want);
            // The unconjugated matrix has the same determinant.
            const RingMatrix raw =
                seidel_instantiate(spec.seidel_family(), r).matrix();
            CHECK(det_bareiss(raw, spec.ring) == want);
        }
    }

    // The two algorithms agree on every built-in matrix up to rank five.
    for (const char* id : {"complex_plane", "complex_space(4)",
                           "projective_space(2)", "projective_space(3)",
                           "projective_space(4)", "taut_line_bundle(4)"}) {
        const SpaceSpec spec = builtin_space(id);
        for (int r = 0; r <= 5; ++r) {
            const RingMatrix m = seidel_instantiate(spec.seidel_family(), r).matrix();
            CAPTURE(id);
            CHECK(det_bareiss(m, spec.ring) == det_berkowitz(m, spec.ring));
        }
    }
}

TEST_CASE("adjugate") {
    const SpaceSpec t1 = builtin_space("taut_line_bundle(1)");
    BasisSpec ordered;
    const RingMatrix a0 = ordered_matrix(t1, 0, ordered);
    const RingMatrix adj = adjugate(a0, t1.ring);
    CHECK(adj[0][0] == mono(t1.ring, 1, 1, 0) + mono(t1.ring, 2, 0, 1));
    CHECK(adj[0][1] == mono(t1.ring, 1, 0, 1));
    CHECK(adj[1][0] == mono(t1.ring, -1, 0, 1));
    CHECK(adj[1][1].is_zero());

    CHECK(adjugate(mat_identity(3, t1.ring), t1.ring) ==
          mat_identity(3, t1.ring));

    RingMatrix diag(2, std::vector<RingElem>(2, RingElem(t1.ring)));
    diag[0][0] = mono(t1.ring, 3, 1, 0);
    diag[1][1] = mono(t1.ring, 1, 0, 2);
    const RingMatrix adj_diag = adjugate(diag, t1.ring);
    CHECK(adj_diag[0][0] == diag[1][1]);
    CHECK(adj_diag[1][1] == diag[0][0]);

    // Random matrices, both construction paths (cofactor <= 6, charpoly 7).
    eqh::testing::Rng rng(test_seed());
    const RingConfig cfg = ring_config_zq(2);
    for (size_t n : {3u, 7u}) {
        for (int trial = 0; trial < (n <= 6 ? 20 : 2); ++trial) {
            RingMatrix m(n, std::vector<RingElem>(n, RingElem(cfg)));
            for (auto& row : m)
                for (auto& e : row)
                    e = eqh::testing::random_elem(rng, cfg, 1, true);
            const RingElem det = det_bareiss(m, cfg);
            CHECK(det == det_berkowitz(m, cfg));
            const RingMatrix adjm = adjugate(m, cfg); // identity verified inside
            RingMatrix want(n, std::vector<RingElem>(n, RingElem(cfg)));
            for (size_t i = 0; i < n; ++i) want[i][i] = det;
            CHECK(mat_mul(m, adjm, cfg) == want);
        }
    }
}

TEST_CASE("generator_sequence recurrence agrees with adjugate products") {
    const SpaceSpec t1 = builtin_space("taut_line_bundle(1)");
    const GeneratorSequence seq =
        generator_sequence(t1.seidel_family(), t1.limit_basis, t1.limit_labels, 5);
    REQUIRE(seq.stages.size() == 6);

    // x_k^0 are the ordered-basis unit vectors.
    for (size_t k = 0; k < 2; ++k)
        CHECK(seq.stages[0].raw[k] == ModuleElem::unit(seq.ordered, t1.ring, k));

    // x_1^{p+1} = (p+1) u x_0^p and
    // x_0^{p+1} = (q + 2(p+1)u) x_0^p - (p+1)u x_1^p for p = 0..4.
    for (int p = 0; p <= 4; ++p) {
        const RingElem step = mono(t1.ring, p + 1, 0, 1);
        CHECK(seq.stages[p + 1].raw[1] == seq.stages[p].raw[0].scaled(step));
        const RingElem diag = mono(t1.ring, 1, 1, 0) + mono(t1.ring, 2 * (p + 1), 0, 1);
        CHECK(seq.stages[p + 1].raw[0] ==
              seq.stages[p].raw[0].scaled(diag) - seq.stages[p].raw[1].scaled(step));
    }

    // D_p = (p!)^{n+1} u^{(n+1)p} for n <= 3, p <= 4.
    for (int n : {1, 2, 3}) {
        const SpaceSpec spec =
            builtin_space("taut_line_bundle(" + std::to_string(n) + ")");
        const GeneratorSequence s = generator_sequence(
            spec.seidel_family(), spec.limit_basis, spec.limit_labels, 4);
        for (int p = 0; p <= 4; ++p) {
            const RingElem want =
                mono(spec.ring, 1, 0, (n + 1) * p)
                    .scaled(int_pow(factorial(p), n + 1));
            CHECK(s.stages[p].det_product == want);
        }
    }

    // Normalized generators reproduce the raw ones when multiplied back.
    const RingConfig local = seq.local_cfg;
    for (const auto& stage : seq.stages)
        for (size_t k = 0; k < stage.raw.size(); ++k)
            CHECK(stage.normalized[k].scaled(stage.det_product.with_config(local)) ==
                  stage.raw[k].with_config(local));
}

TEST_CASE("the n = 1 closed form holds mod u^2") {
    const SpaceSpec t1 = builtin_space("taut_line_bundle(1)");
    const GeneratorSequence seq =
        generator_sequence(t1.seidel_family(), t1.limit_basis, t1.limit_labels, 4);
    for (int p = 1; p <= 4; ++p) {
        // q^{p-1}((q + p(p+1)u) g0 - u g1)
        ModuleElem want(seq.ordered, t1.ring);
        want.set_coord(0, mono(t1.ring, 1, p, 0) +
                              mono(t1.ring, p * (p + 1), p - 1, 1));
        want.set_coord(1, mono(t1.ring, -1, p - 1, 1));
        CHECK(seq.stages[p].raw[0].truncate_u(2) == want);
    }

    // Presentation entries x_0^p / (1^2..p^2 (p+1) u^{2p+1}): multiplying
    // back by the divisor recovers the raw generator.
    const RingConfig local = seq.local_cfg;
    for (int p = 1; p <= 4; ++p) {
        RingElem divisor =
            mono(local, 1, 0, 2 * p + 1)
                .scaled(Rat(int_pow(factorial(p), 2) * (p + 1)));
        CHECK(seq.presentation[p - 1].scaled(divisor) ==
              seq.stages[p].raw[0].with_config(local));
    }
}

TEST_CASE("chain strictness") {
    const SpaceSpec t1 = builtin_space("taut_line_bundle(1)");
    const GeneratorSequence seq =
        generator_sequence(t1.seidel_family(), t1.limit_basis, t1.limit_labels, 4);
    const ChainReport report = chain_strictness(seq);
    CHECK(report.all_strict);
    REQUIRE(report.steps.size() == 4);
    for (const auto& step : report.steps) CHECK(step.strict);

    // The e_n trajectory keeps u-valuation zero: never divisible by u.
    const SpaceSpec t2 = builtin_space("taut_line_bundle(2)");
    const auto vals = image_u_valuations(t2.seidel_family(), 2, 6);
    for (int v : vals) CHECK(v == 0);

    // The constant family stabilizes at p = 0.
    const SeidelFamily id = identity_family(t1.basis, t1.ring);
    std::vector<ModuleElem> std_basis;
    for (size_t k = 0; k < t1.basis.rank(); ++k)
        std_basis.push_back(ModuleElem::unit(t1.basis, t1.ring, k));
    const GeneratorSequence idseq =
        generator_sequence(id, std_basis, t1.basis.labels, 3);
    const ChainReport idreport = chain_strictness(idseq);
    CHECK(!idreport.all_strict);
    for (const auto& step : idreport.steps) CHECK(!step.strict);
}

TEST_CASE("nonequivariant_limit") {
    const SpaceSpec t2 = builtin_space("taut_line_bundle(2)");
    const NonequivariantLimitReport r2 = nonequivariant_limit(t2.seidel_family());
    CHECK(!r2.zero_map);
    REQUIRE(r2.kernel.size() == 1);
    ModuleElem want(t2.basis, t2.ring);
    want.set_coord(0, mono(t2.ring, 1, 1, 0));
    want.set_coord(2, RingElem::one(t2.ring));
    CHECK(r2.kernel[0] == want);
    CHECK(r2.quotient_rank == 2);
    CHECK(r2.iso_on_quotient);

    const SpaceSpec c = builtin_space("complex_plane");
    const NonequivariantLimitReport rc = nonequivariant_limit(c.seidel_family());
    CHECK(rc.zero_map);
    CHECK(rc.quotient_rank == 0);
    CHECK(rc.limit_description == "0");

    const SeidelFamily id = identity_family(t2.basis, t2.ring);
    const NonequivariantLimitReport rid = nonequivariant_limit(id);
    CHECK(rid.kernel.empty());
    CHECK(rid.quotient_rank == t2.basis.rank());
    CHECK(rid.iso_on_quotient);
}

TEST_CASE("rank-one recognizer") {
    const SpaceSpec c = builtin_space("complex_plane");
    const Rank1Report report = rank1_limit(c.seidel_family(), 5);
    CHECK(report.recognized);
    CHECK(report.limit == "Q[u,u^-1]");

    // The squared family (r+1)^2 u^2 is not the (s+1) u pattern.
    const SpaceSpec c2 = builtin_space("complex_space(2)");
    CHECK(!rank1_limit(c2.seidel_family(), 5).recognized);

    CHECK(rank1_limit_from_factors({{1, 1}, {2, 1}, {3, 1}}).recognized);
    CHECK(!rank1_limit_from_factors({{1, 1}, {3, 1}}).recognized);
}
