#include "eqh/seidel.hpp"

namespace eqh {

bool SeidelFamily::has_unknowns() const {
    for (const auto& row : tmpl)
        for (const auto& e : row)
            for (const auto& s : e.symbols())
                if (s != "r") return true;
    return false;
}

GradedMap seidel_instantiate(const SeidelFamily& f, int r) {
    if (r < 0) fail(Errc::BadParam, "negative level");
    auto mat = sym_matrix_eval_r(f.tmpl, r, f.cfg);
    // Checked constructor: every instantiation must be graded of the
    // declared Maslov shift.
    return GradedMap(f.basis, f.basis, f.maslov_shift, std::move(mat));
}

GradedMap seidel_compose_chain(const SeidelFamily& f, int r0, int count) {
    if (count <= 0) fail(Errc::BadParam, "chain length must be positive");
    GradedMap acc = seidel_instantiate(f, r0);
    for (int i = 1; i < count; ++i)
        acc = seidel_instantiate(f, r0 + i).compose_after(acc);
    return acc;
}

GradedMap weighted_seidel(const GradedMap& m, const WeightRule& w) {
    const RingConfig& cfg = m.config();
    std::vector<std::vector<RingElem>> mat(
        m.target().rank(), std::vector<RingElem>(m.source().rank(), RingElem(cfg)));
    for (size_t l = 0; l < m.target().rank(); ++l)
        for (size_t k = 0; k < m.source().rank(); ++k) {
            RingElem acc(cfg);
            for (const auto& [key, c] : m.entry(l, k).terms()) {
                Rat weight = weight_of(w.slope, w.offset, key.a);
                Rat coeff = weight * c;
                if (coeff == 0) continue;
                if (cfg.coeff_domain == CoeffDomain::Integer && !is_integral(coeff))
                    fail(Errc::NonIntegralWeight,
                         "weight " + rat_to_string(weight) + " on " +
                             m.entry(l, k).str() + " leaves the integers");
                acc += RingElem::monomial(cfg, coeff, key.a, key.b);
            }
            mat[l][k] = acc;
        }
    return GradedMap::unchecked(m.source(), m.target(), m.shift() - 2,
                                std::move(mat));
}

ModuleElem intertwining_residual(const SeidelFamily& f, const ProductTable& p_r,
                                 const ProductTable& p_r1,
                                 const std::string& alpha_plus,
                                 const std::string& alpha_minus, const WeightRule& w,
                                 const ModuleElem& x, int r) {
    if (!(p_r.basis() == f.basis) || !(p_r1.basis() == f.basis))
        fail(Errc::BasisMismatch, "product tables over wrong basis");
    const size_t ip = f.basis.index_of(alpha_plus);
    const size_t im = f.basis.index_of(alpha_minus);
    if (f.basis.degree(ip) != 2 || f.basis.degree(im) != 2)
        fail(Errc::BadParam, "alpha classes must have degree 2");
    const GradedMap s = seidel_instantiate(f, r);
    const ModuleElem ap = ModuleElem::unit(f.basis, x.config(), ip);
    const ModuleElem am = ModuleElem::unit(f.basis, x.config(), im);
    const ModuleElem lhs = s.apply(p_r.multiply(x, ap));
    const ModuleElem mid = p_r1.multiply(s.apply(x), am);
    const ModuleElem err = weighted_seidel(s, w).apply(x).u_act(1);
    return lhs - mid - err;
}

InversePairReport verify_inverse_pair(const SeidelFamily& f,
                                      const SeidelFamily& f_inv, int r) {
    if (!f_inv.inverse)
        fail(Errc::BadParam, "second family is not declared as an inverse");
    if (f_inv.maslov_shift != -f.maslov_shift)
        fail(Errc::BadParam, "inverse family shift must negate the forward shift");
    InversePairReport report;
    const GradedMap fwd = seidel_instantiate(f, r);
    const GradedMap inv = seidel_instantiate(f_inv, r);
    auto scan = [&](const GradedMap& comp, const std::string& which) {
        const GradedMap id = GradedMap::identity(f.basis, fwd.config());
        for (size_t l = 0; l < f.basis.rank(); ++l)
            for (size_t k = 0; k < f.basis.rank(); ++k)
                if (!(comp.entry(l, k) == id.entry(l, k))) {
                    report.passed = false;
                    report.issues.push_back({which, l, k, comp.entry(l, k).str()});
                }
    };
    scan(fwd.compose_after(inv), "forward∘inverse");
    scan(inv.compose_after(fwd), "inverse∘forward");
    return report;
}

} // namespace eqh
