#include <doctest.h>

#include "eqh/catalog.hpp"
#include "eqh/module.hpp"
#include "eqh/seidel.hpp"
#include "test_support.hpp"

using namespace eqh;

namespace {

RingElem mono(const RingConfig& cfg, int c, int a, int b) {
    return RingElem::monomial(cfg, c, a, b);
}

} // namespace

TEST_CASE("map_apply on the projective-space family") {
    const SpaceSpec p2 = builtin_space("projective_space(2)");
    const GradedMap s0 = seidel_instantiate(p2.seidel_family(), 0);
    const ModuleElem e0 = ModuleElem::unit(p2.basis, p2.ring, 0);
    ModuleElem want(p2.basis, p2.ring);
    want.set_coord(2, RingElem::one(p2.ring));
    want.set_coord(1, mono(p2.ring, 1, 0, 1));
    want.set_coord(0, mono(p2.ring, 1, 0, 2));
    CHECK(s0.apply(e0) == want);

    const GradedMap zero = GradedMap::zero(p2.basis, p2.basis, p2.ring, 4);
    CHECK(zero.apply(want).is_zero());

    const GradedMap id = GradedMap::identity(p2.basis, p2.ring);
    CHECK(id.apply(want) == want);

    // Homogeneous input shifts degree by the Maslov shift.
    CHECK(*s0.apply(e0).homogeneous_degree() == 0 + 4);
}

TEST_CASE("map_compose") {
    const SpaceSpec p2 = builtin_space("projective_space(2)");
    const SeidelFamily fwd = p2.seidel_family();
    const SeidelFamily inv = *p2.inverse_family();
    for (int r = 0; r <= 4; ++r) {
        const GradedMap comp =
            seidel_instantiate(inv, r).compose_after(seidel_instantiate(fwd, r));
        CHECK(comp.is_identity());
        CHECK(comp.shift() == 0);
    }

    const GradedMap id = GradedMap::identity(p2.basis, p2.ring);
    const GradedMap m = seidel_instantiate(fwd, 3);
    CHECK(m.compose_after(id) == m);

    const SpaceSpec c = builtin_space("complex_plane");
    const GradedMap chain = seidel_compose_chain(c.seidel_family(), 0, 2);
    CHECK(chain.entry(0, 0) == mono(c.ring, 2, 0, 2));
    CHECK(chain.shift() == 4);
}

TEST_CASE("map_check_grading") {
    const SpaceSpec taut = builtin_space("taut_line_bundle(2)");
    CHECK(seidel_instantiate(taut.seidel_family(), 1).check_grading().passed);
    CHECK(seidel_instantiate(taut.seidel_family(), 1).shift() == 2);

    const SpaceSpec p3 = builtin_space("projective_space(3)");
    CHECK(seidel_instantiate(p3.seidel_family(), 2).check_grading().passed);
    CHECK(p3.maslov_shift == 6);

    // A q entry in a u slot is located precisely.
    auto mat = seidel_instantiate(taut.seidel_family(), 0).matrix();
    mat[0][0] = mono(taut.ring, 1, 1, 0);
    GradedMap bad = GradedMap::unchecked(taut.basis, taut.basis, 2, mat);
    auto report = bad.check_grading();
    CHECK(!report.passed);
    REQUIRE(report.issues.size() == 1);
    CHECK(report.issues[0].row == 0);
    CHECK(report.issues[0].col == 0);
}

TEST_CASE("change_basis on the tautological bundle") {
    const SpaceSpec taut = builtin_space("taut_line_bundle(1)");
    BasisSpec ordered{{"g0", "g1"}, {2, 2}};
    for (int r = 0; r <= 3; ++r) {
        const GradedMap a =
            seidel_instantiate(taut.seidel_family(), r)
                .change_basis(taut.limit_basis, ordered);
        // Hand conjugation: EQS(e1 + q e0) = (r+1)u e1 and
        // EQS(e1) = -(r+1)u (e1 + q e0) + (q + 2(r+1)u) e1.
        CHECK(a.entry(0, 0).is_zero());
        CHECK(a.entry(0, 1) == mono(taut.ring, -(r + 1), 0, 1));
        CHECK(a.entry(1, 0) == mono(taut.ring, r + 1, 0, 1));
        CHECK(a.entry(1, 1) ==
              mono(taut.ring, 1, 1, 0) + mono(taut.ring, 2 * (r + 1), 0, 1));
    }

    // Identity change keeps the matrix.
    const SpaceSpec t2 = builtin_space("taut_line_bundle(2)");
    std::vector<ModuleElem> std_basis;
    for (size_t k = 0; k < t2.rank(); ++k)
        std_basis.push_back(ModuleElem::unit(t2.basis, t2.ring, k));
    const GradedMap m = seidel_instantiate(t2.seidel_family(), 2);
    CHECK(m.change_basis(std_basis, t2.basis).matrix() == m.matrix());

    // First column of the ordered-basis matrix is (0, ..., 0, (r+1)u).
    BasisSpec ordered2{{"g0", "g1", "g2"}, {4, 2, 4}};
    const GradedMap a2 = m.change_basis(t2.limit_basis, ordered2);
    CHECK(a2.entry(0, 0).is_zero());
    CHECK(a2.entry(1, 0).is_zero());
    CHECK(a2.entry(2, 0) == mono(t2.ring, 3, 0, 1));

    // Round trip: conjugating back recovers the original matrix.
    std::vector<ModuleElem> inverse_basis;
    {
        // Columns of C^{-1}: e0 = q^{-1}(g0 - g2), e1 = g1, e2 = g2.
        BasisSpec gb = ordered2;
        ModuleElem c0(gb, t2.ring);
        c0.set_coord(0, mono(t2.ring, 1, -1, 0));
        c0.set_coord(2, mono(t2.ring, -1, -1, 0));
        inverse_basis.push_back(c0);
        inverse_basis.push_back(ModuleElem::unit(gb, t2.ring, 1));
        inverse_basis.push_back(ModuleElem::unit(gb, t2.ring, 2));
    }
    CHECK(a2.change_basis(inverse_basis, t2.basis).matrix() == m.matrix());

    // Non-invertible changes are rejected.
    std::vector<ModuleElem> degenerate = t2.limit_basis;
    degenerate[1] = degenerate[2];
    try {
        (void)m.change_basis(degenerate, ordered2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInvertible);
    }
}

TEST_CASE("u_act") {
    const SpaceSpec p2 = builtin_space("projective_space(2)");
    const ModuleElem e0 = ModuleElem::unit(p2.basis, p2.ring, 0);
    CHECK(e0.u_act(1).coord(0) == mono(p2.ring, 1, 0, 1));

    ModuleElem qe1(p2.basis, p2.ring);
    qe1.set_coord(1, mono(p2.ring, 1, 1, 0));
    CHECK(qe1.u_act(2).coord(1) == mono(p2.ring, 1, 1, 2));

    ModuleElem qe0(p2.basis, p2.ring);
    qe0.set_coord(0, mono(p2.ring, 1, 1, 0));
    CHECK(qe0.u_act(1).coord(0) == mono(p2.ring, 1, 1, 1));
}

TEST_CASE("map_compose is associative") {
    const SpaceSpec p2 = builtin_space("projective_space(2)");
    const SeidelFamily f = p2.seidel_family();
    const GradedMap s0 = seidel_instantiate(f, 0);
    const GradedMap s1 = seidel_instantiate(f, 1);
    const GradedMap s2 = seidel_instantiate(f, 2);
    CHECK(s2.compose_after(s1).compose_after(s0) ==
          s2.compose_after(s1.compose_after(s0)));
}

TEST_CASE("u = 0 specialization recovers the quantum Seidel maps") {
    for (int n : {1, 2, 3}) {
        const SpaceSpec taut =
            builtin_space("taut_line_bundle(" + std::to_string(n) + ")");
        for (int r = 0; r <= 3; ++r) {
            const GradedMap m0 =
                seidel_instantiate(taut.seidel_family(), r).at_u_zero();
            for (int k = 0; k < n; ++k) {
                for (size_t l = 0; l < taut.rank(); ++l)
                    CHECK(m0.entry(l, k) == (l == static_cast<size_t>(k + 1)
                                                 ? mono(taut.ring, -1, 0, 0)
                                                 : RingElem(taut.ring)));
            }
            for (size_t l = 0; l < taut.rank(); ++l)
                CHECK(m0.entry(l, n) ==
                      (l == 1 ? mono(taut.ring, 1, 1, 0) : RingElem(taut.ring)));
        }
    }
}

TEST_CASE("u = 0 recovers the projective-space quantum Seidel map") {
    for (int n : {2, 3}) {
        const SpaceSpec spec =
            builtin_space("projective_space(" + std::to_string(n) + ")");
        const GradedMap m0 = seidel_instantiate(spec.seidel_family(), 3).at_u_zero();
        // e_0 -> e_n and e_k -> q e_{k-1}.
        for (size_t l = 0; l < spec.rank(); ++l)
            CHECK(m0.entry(l, 0) == (l == static_cast<size_t>(n)
                                         ? RingElem::one(spec.ring)
                                         : RingElem(spec.ring)));
        for (int k = 1; k <= n; ++k)
            for (size_t l = 0; l < spec.rank(); ++l)
                CHECK(m0.entry(l, k) == (l == static_cast<size_t>(k - 1)
                                             ? mono(spec.ring, 1, 1, 0)
                                             : RingElem(spec.ring)));
    }
}

TEST_CASE("instantiated matrices stay homogeneous on random inputs") {
    eqh::testing::Rng rng(test_seed());
    for (const char* id : {"projective_space(2)", "projective_space(3)",
                           "taut_line_bundle(2)", "complex_space(3)"}) {
        const SpaceSpec spec = builtin_space(id);
        for (int r = 0; r <= 5; ++r) {
            const GradedMap m = seidel_instantiate(spec.seidel_family(), r);
            for (size_t k = 0; k < spec.rank(); ++k) {
                ModuleElem x = ModuleElem::unit(spec.basis, spec.ring, k)
                                   .scaled(eqh::testing::random_elem(rng, spec.ring, 1));
                if (!x.is_homogeneous()) continue;
                auto dx = x.homogeneous_degree();
                auto dy = m.apply(x).homogeneous_degree();
                if (dy) CHECK(*dy == *dx + m.shift());
            }
        }
    }
}
