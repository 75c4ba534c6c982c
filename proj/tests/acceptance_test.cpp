// Acceptance suite: every criterion prints one pass/fail line with its
// runtime; the binary exits nonzero if any criterion fails. Randomized
// sections honor --seed N and print the seed they used.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "eqh/catalog.hpp"
#include "eqh/limits.hpp"
#include "eqh/solver.hpp"
#include "eqh/zhao.hpp"
#include "test_support.hpp"

using namespace eqh;

namespace {

uint64_t g_seed = 0x5eed'20ac'11eeULL;
int g_failures = 0;

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<void(Check&)>& body) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    check.expect(elapsed < budget_seconds,
                 "runtime " + std::to_string(elapsed) + "s exceeds " +
                     std::to_string(budget_seconds) + "s");
    std::printf("[%s] criterion %d: %s (%.3fs)\n", check.ok ? "PASS" : "FAIL",
                number, name.c_str(), elapsed);
    if (!check.ok) {
        std::printf("       %s\n", check.detail.c_str());
        ++g_failures;
    }
}

RingElem mono(const RingConfig& cfg, const Rat& c, int a, int b) {
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

void c1_plane(Check& check) {
    const SpaceSpec c = builtin_space("complex_plane");
    for (int r = 0; r <= 5; ++r) {
        const GradedMap m = seidel_instantiate(c.seidel_family(), r);
        check.expect(m.entry(0, 0) == mono(c.ring, r + 1, 0, 1),
                     "plane family at r=" + std::to_string(r));
        check.expect(m.shift() == 2, "plane shift");
    }
}

void c2_vector_space(Check& check) {
    for (int n = 1; n <= 4; ++n) {
        const SpaceSpec c =
            builtin_space("complex_space(" + std::to_string(n) + ")");
        for (int r = 0; r <= 5; ++r) {
            const GradedMap m = seidel_instantiate(c.seidel_family(), r);
            check.expect(
                m.entry(0, 0) ==
                    mono(c.ring, int_pow(Int(r + 1), n), 0, n),
                "((r+1)u)^n at n=" + std::to_string(n) + " r=" + std::to_string(r));
            check.expect(m.shift() == 2 * n, "shift 2n");
        }
    }
}

void c3_projective(Check& check) {
    const WeightRule rule{1, 0};
    for (int n : {2, 3, 4}) {
        const SpaceSpec spec =
            builtin_space("projective_space(" + std::to_string(n) + ")");
        const SolveRun run = induct_over_r(make_ansatz(spec), 5);
        for (int r = 0; r <= 5; ++r) {
            check.expect(run.levels[r].seidel ==
                             seidel_instantiate(spec.seidel_family(), r),
                         "seidel closed form n=" + std::to_string(n) +
                             " r=" + std::to_string(r));
            check.expect(*run.levels[r].product_operator == spec.product_at(r).L,
                         "product closed form n=" + std::to_string(n) +
                             " r=" + std::to_string(r));
            // The solved table carries the q e0 - r u e_n row.
            const ProductTable table = product_expand(
                GeneratorProduct{spec.basis, 0, 1, r, *run.levels[r].product_operator});
            ModuleElem row(spec.basis, spec.ring);
            row.set_coord(0, mono(spec.ring, 1, 1, 0));
            row.set_coord(n, mono(spec.ring, -r, 0, 1));
            check.expect(table.entry(1, n) == row, "e1 * en row");
        }
        const SeidelFamily family = spec.seidel_family();
        for (int r = 0; r <= 5; ++r) {
            const ProductTable pr = spec.table_at(r);
            const ProductTable pr1 = spec.table_at(r + 1);
            for (size_t k = 0; k < spec.rank(); ++k)
                check.expect(
                    intertwining_residual(family, pr, pr1, "e1", "e1", rule,
                                          ModuleElem::unit(spec.basis, spec.ring, k),
                                          r)
                        .is_zero(),
                    "residual n=" + std::to_string(n));
            check.expect(verify_inverse_pair(family, *spec.inverse_family(), r).passed,
                         "inverse pair n=" + std::to_string(n));
        }
    }
}

void c4_taut_bundle(Check& check) {
    const WeightRule rule{1, 0};
    for (int n : {1, 2, 3}) {
        const SpaceSpec spec =
            builtin_space("taut_line_bundle(" + std::to_string(n) + ")");
        const SolveRun run = induct_over_r(make_ansatz(spec), 5);
        for (int r = 0; r <= 5; ++r) {
            check.expect(run.levels[r].seidel ==
                             seidel_instantiate(spec.seidel_family(), r),
                         "seidel closed form n=" + std::to_string(n));
            const ProductTable table = product_expand(
                GeneratorProduct{spec.basis, 0, 1, r, *run.levels[r].product_operator});
            ModuleElem row(spec.basis, spec.ring);
            row.set_coord(1, mono(spec.ring, -1, 1, 0));
            row.set_coord(0, mono(spec.ring, r, 1, 1));
            check.expect(table.entry(1, n) == row,
                         "e1 * en = -q e1 + r u q e0 at n=" + std::to_string(n));
            const ProductTable pr = spec.table_at(r);
            const ProductTable pr1 = spec.table_at(r + 1);
            for (size_t k = 0; k < spec.rank(); ++k)
                check.expect(
                    intertwining_residual(spec.seidel_family(), pr, pr1, "e1", "e1",
                                          rule,
                                          ModuleElem::unit(spec.basis, spec.ring, k),
                                          r)
                        .is_zero(),
                    "residual n=" + std::to_string(n));
            // u = 0: e_k -> -e_{k+1}, e_n -> q e_1.
            const GradedMap m0 = run.levels[r].seidel.at_u_zero();
            for (int k = 0; k < n; ++k)
                for (size_t l = 0; l < spec.rank(); ++l)
                    check.expect(m0.entry(l, k) ==
                                     (l == static_cast<size_t>(k + 1)
                                          ? mono(spec.ring, -1, 0, 0)
                                          : RingElem(spec.ring)),
                                 "u=0 column k");
            for (size_t l = 0; l < spec.rank(); ++l)
                check.expect(m0.entry(l, n) == (l == 1 ? mono(spec.ring, 1, 1, 0)
                                                       : RingElem(spec.ring)),
                             "u=0 column n");
        }
    }
}

void c5_determinant_law(Check& check) {
    for (int n = 1; n <= 3; ++n) {
        const SpaceSpec spec =
            builtin_space("taut_line_bundle(" + std::to_string(n) + ")");
        for (int r = 0; r <= 5; ++r) {
            BasisSpec ordered;
            const RingMatrix m = ordered_matrix(spec, r, ordered);
            const RingElem want =
                mono(spec.ring, int_pow(Int(r + 1), n + 1), 0, n + 1);
            check.expect(det_bareiss(m, spec.ring) == want, "bareiss");
            check.expect(det_berkowitz(m, spec.ring) == want, "berkowitz");
        }
    }
}

void c6_generators(Check& check) {
    const SpaceSpec spec = builtin_space("taut_line_bundle(1)");
    const GeneratorSequence seq = generator_sequence(
        spec.seidel_family(), spec.limit_basis, spec.limit_labels, 5);
    // The two routes agree by construction (RouteMismatch otherwise); the
    // recurrence shape and the closed form are asserted explicitly.
    for (int p = 0; p <= 4; ++p) {
        const RingElem step = mono(spec.ring, p + 1, 0, 1);
        check.expect(seq.stages[p + 1].raw[1] == seq.stages[p].raw[0].scaled(step),
                     "x1 recurrence p=" + std::to_string(p));
    }
    for (int p = 1; p <= 4; ++p) {
        ModuleElem want(seq.ordered, spec.ring);
        want.set_coord(0, mono(spec.ring, 1, p, 0) +
                              mono(spec.ring, p * (p + 1), p - 1, 1));
        want.set_coord(1, mono(spec.ring, -1, p - 1, 1));
        check.expect(seq.stages[p].raw[0].truncate_u(2) == want,
                     "closed form mod u^2 at p=" + std::to_string(p));
    }
    const ChainReport chain = chain_strictness(seq);
    check.expect(chain.all_strict, "chain strictness");
}

void c7_nonequivariant(Check& check) {
    for (int n = 1; n <= 3; ++n) {
        const SpaceSpec spec =
            builtin_space("taut_line_bundle(" + std::to_string(n) + ")");
        const NonequivariantLimitReport report =
            nonequivariant_limit(spec.seidel_family());
        ModuleElem want(spec.basis, spec.ring);
        want.set_coord(0, mono(spec.ring, 1, 1, 0));
        want.set_coord(n, RingElem::one(spec.ring));
        check.expect(report.kernel.size() == 1 && report.kernel[0] == want,
                     "kernel e_n + q e_0 at n=" + std::to_string(n));
        check.expect(report.quotient_rank == static_cast<size_t>(n),
                     "quotient rank n");
        check.expect(report.iso_on_quotient, "iso on quotient");
    }
}

void c8_zhao(Check& check) {
    for (int s = 0; s <= 4; ++s)
        for (int K = 2; K <= 10; ++K)
            check.expect(verify_d_squared(build_complex(s, K)).passed,
                         "d^2 at s=" + std::to_string(s) + " K=" + std::to_string(K));
    for (int s = 0; s <= 3; ++s) {
        const ZhaoComplex complex = build_complex(s, 10);
        const auto entries = cohomology(complex, -2 * s, 4);
        for (const auto& e : entries) {
            check.expect(e.rank == (e.degree % 2 == 0 ? 1u : 0u),
                         "rank at degree " + std::to_string(e.degree));
            check.expect(e.torsion.empty(), "torsion-free");
        }
    }
    std::vector<std::pair<Int, int>> factors;
    for (int s = 0; s <= 4; ++s) {
        const ContinuationFactor f = continuation_action(s);
        check.expect(f.scalar == Int(s + 1) && f.u_power == 1,
                     "continuation factor at s=" + std::to_string(s));
        factors.push_back({f.scalar, f.u_power});
    }
    const Rank1Report rank1 = rank1_limit_from_factors(factors);
    check.expect(rank1.recognized && rank1.limit == "Q[u,u^-1]",
                 "rank-one recognizer");
}

void c9_property_suites(Check& check) {
    eqh::testing::Rng rng(g_seed);
    std::printf("       criterion 9 seed: %llu\n",
                static_cast<unsigned long long>(g_seed));
    int cases = 0;

    // Ring round trips and axioms.
    const RingConfig configs[] = {ring_config_z(), ring_config_zq(4),
                                  localized(ring_config_zq(2))};
    for (const auto& cfg : configs)
        for (int i = 0; i < 150; ++i) {
            RingElem x = eqh::testing::random_elem(rng, cfg, 4, true);
            RingElem y = eqh::testing::random_elem(rng, cfg);
            RingElem z = eqh::testing::random_elem(rng, cfg, 3, true);
            check.expect((x * y).exact_div(y) == x, "div/mul round trip");
            check.expect(x * y == y * x, "commutativity");
            check.expect((x + y) * z == x * z + y * z, "distributivity");
            check.expect((x * y) * z == x * (y * z), "associativity");
            cases += 4;
        }

    // Product axioms on every builtin for r <= 5.
    for (const char* id : {"complex_plane", "complex_space(3)",
                           "projective_space(2)", "projective_space(3)",
                           "projective_space(4)", "taut_line_bundle(1)",
                           "taut_line_bundle(2)", "taut_line_bundle(3)"}) {
        const SpaceSpec spec = builtin_space(id);
        for (int r = 0; r <= 5; ++r) {
            check.expect(spec.table_at(r).check_axioms().passed,
                         std::string("axioms ") + id);
            check.expect(
                seidel_instantiate(spec.seidel_family(), r).check_grading().passed,
                std::string("gradedness ") + id);
            cases += 2;
        }
    }

    // Parse-render fixpoints on randomized specs.
    for (int trial = 0; trial < 120; ++trial) {
        SpaceSpec spec;
        spec.id = "fuzz" + std::to_string(trial);
        const int rank = rng.range(1, 4);
        const bool has_q = rng.range(0, 1) == 1;
        spec.ring = has_q ? ring_config_zq(2 * rng.range(1, 4)) : ring_config_z();
        for (int k = 0; k < rank; ++k) {
            spec.basis.labels.push_back("e" + std::to_string(k));
            spec.basis.degrees.push_back(2 * k);
        }
        spec.maslov_shift = 2 * rng.range(1, 3);
        spec.seidel_tmpl.assign(rank, std::vector<SymElem>(rank, SymElem(spec.ring)));
        for (int col = 0; col < rank; ++col)
            for (int row = 0; row < rank; ++row) {
                const int entry_deg = spec.maslov_shift + 2 * col - 2 * row;
                if (entry_deg < 0) continue;
                const int a_max = has_q ? entry_deg / spec.ring.q_degree : 0;
                for (int a = 0; a <= a_max; ++a) {
                    const int rest = entry_deg - a * spec.ring.q_degree;
                    if (rest % 2 != 0 || rng.range(0, 2) != 0) continue;
                    int c = rng.range(-5, 5);
                    if (c == 0) c = 1;
                    SymElem term = SymElem::from_ring(
                        RingElem::monomial(spec.ring, c, a, rest / 2));
                    if (rng.range(0, 1))
                        term = term * (SymElem::variable(spec.ring, "r") +
                                       SymElem::constant(spec.ring, 1));
                    spec.seidel_tmpl[row][col] += term;
                }
            }
        const std::string text = render_space(spec);
        const SpaceSpec back = parse_space(text);
        check.expect(spec_equal(spec, back), "parse-render round trip");
        check.expect(render_space(back) == text, "render fixpoint");
        cases += 2;
    }
    check.expect(cases >= 1000,
                 "case count " + std::to_string(cases) + " below 1000");
    std::printf("       criterion 9 cases: %d\n", cases);
}

} // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc)
            g_seed = std::strtoull(argv[i + 1], nullptr, 0);

    criterion(1, "plane Seidel family 1 -> (r+1)u", 1.0, c1_plane);
    criterion(2, "vector space family 1 -> ((r+1)u)^n", 1.0, c2_vector_space);
    criterion(3, "projective-space derivation matches the closed forms", 5.0,
              c3_projective);
    criterion(4, "tautological-bundle derivation matches the closed forms", 5.0,
              c4_taut_bundle);
    criterion(5, "determinant law (r+1)^{n+1} u^{n+1} by two algorithms", 1.0,
              c5_determinant_law);
    criterion(6, "generator recurrence, closed form mod u^2, strict chain", 2.0,
              c6_generators);
    criterion(7, "u = 0 kernel and quotient of the bundle family", 1.0,
              c7_nonequivariant);
    criterion(8, "plane cochain complex: d^2, ranks, continuation factors", 10.0,
              c8_zhao);
    criterion(9, "randomized property suites", 30.0, c9_property_suites);

    if (g_failures > 0) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all 9 acceptance criteria passed\n");
    return 0;
}
