#include "eqh/product.hpp"

#include <sstream>

namespace eqh {

ProductTable::ProductTable(BasisSpec basis, size_t unit, RingConfig cfg,
                           std::vector<std::vector<ModuleElem>> table)
    : basis_(std::move(basis)), unit_(unit), cfg_(std::move(cfg)),
      table_(std::move(table)) {
    if (table_.size() != basis_.rank())
        fail(Errc::BadParam, "table shape does not match basis");
    for (const auto& row : table_)
        if (row.size() != basis_.rank())
            fail(Errc::BadParam, "table shape does not match basis");
}

ProductTable ProductTable::trivial(const BasisSpec& basis, size_t unit,
                                   const RingConfig& cfg) {
    std::vector<std::vector<ModuleElem>> table(
        basis.rank(),
        std::vector<ModuleElem>(basis.rank(), ModuleElem::zero(basis, cfg)));
    for (size_t j = 0; j < basis.rank(); ++j) {
        table[unit][j] = ModuleElem::unit(basis, cfg, j);
        table[j][unit] = ModuleElem::unit(basis, cfg, j);
    }
    return ProductTable(basis, unit, cfg, std::move(table));
}

ModuleElem ProductTable::multiply(const ModuleElem& x, const ModuleElem& y) const {
    if (!(x.basis() == basis_) || !(y.basis() == basis_))
        fail(Errc::BasisMismatch, "product inputs over wrong basis");
    ModuleElem out(basis_, cfg_);
    for (size_t i = 0; i < basis_.rank(); ++i) {
        if (x.coord(i).is_zero()) continue;
        for (size_t j = 0; j < basis_.rank(); ++j) {
            if (y.coord(j).is_zero()) continue;
            out = out + table_[i][j].scaled(x.coord(i) * y.coord(j));
        }
    }
    return out;
}

AxiomReport ProductTable::check_axioms() const {
    AxiomReport report;
    const size_t n = basis_.rank();
    auto flag = [&](const std::string& kind, const std::string& where,
                    const std::string& detail) {
        report.passed = false;
        report.issues.push_back({kind, where, detail});
    };
    for (size_t j = 0; j < n; ++j) {
        if (!(table_[unit_][j] == ModuleElem::unit(basis_, cfg_, j)))
            flag("unit", basis_.labels[unit_] + "*" + basis_.labels[j],
                 "got " + table_[unit_][j].str());
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            if (!(table_[i][j] == table_[j][i]))
                flag("commutativity", basis_.labels[i] + "*" + basis_.labels[j],
                     table_[i][j].str() + " vs " + table_[j][i].str());
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                ModuleElem left =
                    multiply(table_[i][j], ModuleElem::unit(basis_, cfg_, k));
                ModuleElem right =
                    multiply(ModuleElem::unit(basis_, cfg_, i), table_[j][k]);
                if (!(left == right))
                    flag("associativity",
                         "(" + basis_.labels[i] + "*" + basis_.labels[j] + ")*" +
                             basis_.labels[k],
                         left.str() + " vs " + right.str());
            }
    // Ring-linearity on a few sampled scalars; bilinearity is structural but
    // the sample documents it against table-level regressions.
    const RingElem samples[] = {
        RingElem::monomial(cfg_, 2, 0, 1),
        cfg_.has_q ? RingElem::monomial(cfg_, -3, 1, 0) : RingElem::constant(cfg_, 5),
    };
    for (const auto& s : samples)
        for (size_t i = 0; i < n && report.passed; ++i)
            for (size_t j = 0; j < n; ++j) {
                ModuleElem xi = ModuleElem::unit(basis_, cfg_, i).scaled(s);
                ModuleElem left = multiply(xi, ModuleElem::unit(basis_, cfg_, j));
                if (!(left == table_[i][j].scaled(s))) {
                    flag("linearity", basis_.labels[i] + "*" + basis_.labels[j],
                         "scalar " + s.str());
                    break;
                }
            }
    return report;
}

GradedMap ProductTable::generator_operator(size_t gen) const {
    const size_t n = basis_.rank();
    std::vector<std::vector<RingElem>> mat(n, std::vector<RingElem>(n, RingElem(cfg_)));
    for (size_t j = 0; j < n; ++j)
        for (size_t l = 0; l < n; ++l) mat[l][j] = table_[gen][j].coord(l);
    return GradedMap::unchecked(basis_, basis_, basis_.degree(gen), std::move(mat));
}

ProductTable ProductTable::at_u_zero() const {
    auto table = table_;
    for (auto& row : table)
        for (auto& e : row) e = e.at_u_zero();
    return ProductTable(basis_, unit_, cfg_, std::move(table));
}

bool ProductTable::operator==(const ProductTable& o) const {
    return basis_ == o.basis_ && unit_ == o.unit_ && table_ == o.table_;
}

std::string ProductTable::csv() const {
    std::ostringstream os;
    os << "i,j,product\n";
    for (size_t i = 0; i < basis_.rank(); ++i)
        for (size_t j = 0; j < basis_.rank(); ++j)
            os << basis_.labels[i] << "," << basis_.labels[j] << ",\""
               << table_[i][j].str() << "\"\n";
    return os.str();
}

ProductTable product_expand(const GeneratorProduct& g) {
    const BasisSpec& basis = g.basis;
    const RingConfig& cfg = g.L.config();
    const size_t n = basis.rank();
    if (!(g.L.source() == basis) || !(g.L.target() == basis))
        fail(Errc::BasisMismatch, "generator operator over wrong basis");

    // Powers v_k = L^k(e_unit).
    std::vector<ModuleElem> powers;
    powers.push_back(ModuleElem::unit(basis, cfg, g.unit));
    for (size_t k = 1; k < n; ++k) powers.push_back(g.L.apply(powers.back()));

    // Triangularity: v_k is supported on indices <= k with a unit at k.
    // (Basis order is by index; the unit must sit at index 0.)
    for (size_t k = 0; k < n; ++k) {
        for (size_t l = k + 1; l < n; ++l)
            if (!powers[k].coord(l).is_zero())
                fail(Errc::NotGenerated, "L^" + std::to_string(k) +
                                             "(unit) has support above index " +
                                             std::to_string(k));
        if (!powers[k].coord(k).is_unit())
            fail(Errc::NotGenerated, "L^" + std::to_string(k) +
                                         "(unit) has non-unit leading coordinate " +
                                         powers[k].coord(k).str());
    }

    // Express e_j = sum_m c[j][m] v_m by peeling the highest index first.
    std::vector<std::vector<RingElem>> c(n, std::vector<RingElem>(n, RingElem(cfg)));
    for (size_t j = 0; j < n; ++j) {
        ModuleElem rest = ModuleElem::unit(basis, cfg, j);
        for (size_t m = j + 1; m-- > 0;) {
            if (rest.coord(m).is_zero()) continue;
            RingElem cm = rest.coord(m).exact_div(powers[m].coord(m));
            c[j][m] = cm;
            rest = rest - powers[m].scaled(cm);
        }
        if (!rest.is_zero())
            fail(Errc::NotGenerated, "unit powers do not span " + basis.labels[j]);
    }

    // e_i * e_j = p_i(L)(e_j).
    std::vector<std::vector<ModuleElem>> table(
        n, std::vector<ModuleElem>(n, ModuleElem::zero(basis, cfg)));
    for (size_t j = 0; j < n; ++j) {
        std::vector<ModuleElem> lpow;
        lpow.push_back(ModuleElem::unit(basis, cfg, j));
        for (size_t m = 1; m < n; ++m) lpow.push_back(g.L.apply(lpow.back()));
        for (size_t i = 0; i < n; ++i) {
            ModuleElem acc(basis, cfg);
            for (size_t m = 0; m < n; ++m) {
                if (c[i][m].is_zero()) continue;
                acc = acc + lpow[m].scaled(c[i][m]);
            }
            table[i][j] = acc;
        }
    }
    return ProductTable(basis, g.unit, cfg, std::move(table));
}

} // namespace eqh
