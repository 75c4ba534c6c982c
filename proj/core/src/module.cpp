#include "eqh/module.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "eqh/linalg.hpp"

namespace eqh {

size_t BasisSpec::index_of(const std::string& label) const {
    auto idx = find(label);
    if (!idx) fail(Errc::BasisMismatch, "unknown basis label " + label);
    return *idx;
}

std::optional<size_t> BasisSpec::find(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    return std::nullopt;
}

void BasisSpec::validate() const {
    if (labels.size() != degrees.size())
        fail(Errc::BadParam, "label/degree count mismatch");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) fail(Errc::BadParam, "duplicate basis labels");
}

ModuleElem::ModuleElem(BasisSpec basis, RingConfig cfg)
    : basis_(std::move(basis)), cfg_(std::move(cfg)),
      coords_(basis_.rank(), RingElem(cfg_)) {}

ModuleElem ModuleElem::zero(const BasisSpec& basis, const RingConfig& cfg) {
    return ModuleElem(basis, cfg);
}

ModuleElem ModuleElem::unit(const BasisSpec& basis, const RingConfig& cfg, size_t k) {
    ModuleElem e(basis, cfg);
    e.set_coord(k, RingElem::one(cfg));
    return e;
}

void ModuleElem::set_coord(size_t k, RingElem v) {
    if (!(v.config() == cfg_)) fail(Errc::ConfigMismatch, "coordinate config differs");
    coords_.at(k) = std::move(v);
}

bool ModuleElem::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](const RingElem& c) { return c.is_zero(); });
}

void ModuleElem::check_compatible(const ModuleElem& o) const {
    if (!(basis_ == o.basis_)) fail(Errc::BasisMismatch, "bases differ");
    if (!(cfg_ == o.cfg_)) fail(Errc::ConfigMismatch, "ring configs differ");
}

ModuleElem ModuleElem::operator+(const ModuleElem& o) const {
    check_compatible(o);
    ModuleElem out(basis_, cfg_);
    for (size_t k = 0; k < coords_.size(); ++k)
        out.coords_[k] = coords_[k] + o.coords_[k];
    return out;
}

ModuleElem ModuleElem::operator-(const ModuleElem& o) const { return *this + (-o); }

ModuleElem ModuleElem::operator-() const {
    ModuleElem out(basis_, cfg_);
    for (size_t k = 0; k < coords_.size(); ++k) out.coords_[k] = -coords_[k];
    return out;
}

ModuleElem ModuleElem::scaled(const RingElem& c) const {
    ModuleElem out(basis_, cfg_);
    for (size_t k = 0; k < coords_.size(); ++k) out.coords_[k] = coords_[k] * c;
    return out;
}

bool ModuleElem::operator==(const ModuleElem& o) const {
    return basis_ == o.basis_ && cfg_ == o.cfg_ && coords_ == o.coords_;
}

ModuleElem ModuleElem::u_act(int k) const {
    if (k < 0) fail(Errc::BadParam, "u_act needs k >= 0");
    return scaled(RingElem::monomial(cfg_, 1, 0, k));
}

bool ModuleElem::is_homogeneous() const {
    std::optional<int> d;
    for (size_t k = 0; k < coords_.size(); ++k) {
        if (coords_[k].is_zero()) continue;
        if (!coords_[k].is_homogeneous()) return false;
        int dk = coords_[k].degree() + basis_.degree(k);
        if (d && *d != dk) return false;
        d = dk;
    }
    return true;
}

std::optional<int> ModuleElem::homogeneous_degree() const {
    std::optional<int> d;
    for (size_t k = 0; k < coords_.size(); ++k) {
        if (coords_[k].is_zero()) continue;
        int dk = coords_[k].degree() + basis_.degree(k);
        if (d && *d != dk) fail(Errc::NotHomogeneous, "mixed-degree element " + str());
        d = dk;
    }
    return d;
}

int ModuleElem::u_valuation() const {
    if (is_zero()) fail(Errc::ZeroElement, "u-valuation of zero element");
    std::optional<int> v;
    for (const auto& c : coords_) {
        if (c.is_zero()) continue;
        int vc = c.u_valuation();
        if (!v || vc < *v) v = vc;
    }
    return *v;
}

ModuleElem ModuleElem::truncate_u(int order) const {
    ModuleElem out(basis_, cfg_);
    for (size_t k = 0; k < coords_.size(); ++k)
        out.coords_[k] = coords_[k].truncate_u(order);
    return out;
}

ModuleElem ModuleElem::with_config(const RingConfig& to) const {
    ModuleElem out(basis_, to);
    for (size_t k = 0; k < coords_.size(); ++k)
        out.coords_[k] = coords_[k].with_config(to);
    return out;
}

std::string ModuleElem::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < coords_.size(); ++k) {
        if (coords_[k].is_zero()) continue;
        std::string c = coords_[k].str();
        std::string piece;
        if (c == "1") {
            piece = basis_.labels[k];
        } else if (c == "-1") {
            piece = "-" + basis_.labels[k];
        } else if (coords_[k].terms().size() == 1) {
            piece = c + "*" + basis_.labels[k];
        } else {
            piece = "(" + c + ")*" + basis_.labels[k];
        }
        if (first) {
            os << piece;
            first = false;
        } else if (piece.front() == '-') {
            os << " - " << piece.substr(1);
        } else {
            os << " + " << piece;
        }
    }
    return os.str();
}

GradedMap::GradedMap(BasisSpec source, BasisSpec target, int shift,
                     std::vector<std::vector<RingElem>> matrix)
    : source_(std::move(source)), target_(std::move(target)), shift_(shift),
      mat_(std::move(matrix)) {
    if (mat_.size() != target_.rank() ||
        (mat_.size() && mat_[0].size() != source_.rank()))
        fail(Errc::BadParam, "matrix shape does not match bases");
    cfg_ = mat_.empty() || mat_[0].empty() ? RingConfig{} : mat_[0][0].config();
    auto report = check_grading();
    if (!report.passed) {
        const auto& i = report.issues.front();
        fail(Errc::DegreeViolation,
             "entry (" + std::to_string(i.row) + "," + std::to_string(i.col) +
                 ") = " + i.entry + " " + i.reason);
    }
}

GradedMap GradedMap::unchecked(BasisSpec source, BasisSpec target, int shift,
                               std::vector<std::vector<RingElem>> matrix) {
    GradedMap m;
    m.source_ = std::move(source);
    m.target_ = std::move(target);
    m.shift_ = shift;
    m.mat_ = std::move(matrix);
    m.cfg_ = m.mat_.empty() || m.mat_[0].empty() ? RingConfig{} : m.mat_[0][0].config();
    return m;
}

GradedMap GradedMap::identity(const BasisSpec& basis, const RingConfig& cfg) {
    std::vector<std::vector<RingElem>> mat(
        basis.rank(), std::vector<RingElem>(basis.rank(), RingElem(cfg)));
    for (size_t i = 0; i < basis.rank(); ++i) mat[i][i] = RingElem::one(cfg);
    return GradedMap(basis, basis, 0, std::move(mat));
}

GradedMap GradedMap::zero(const BasisSpec& source, const BasisSpec& target,
                          const RingConfig& cfg, int shift) {
    std::vector<std::vector<RingElem>> mat(
        target.rank(), std::vector<RingElem>(source.rank(), RingElem(cfg)));
    return GradedMap::unchecked(source, target, shift, std::move(mat));
}

ModuleElem GradedMap::apply(const ModuleElem& x) const {
    if (!(x.basis() == source_)) fail(Errc::BasisMismatch, "input over wrong basis");
    if (!(x.config() == cfg_)) fail(Errc::ConfigMismatch, "input ring config differs");
    ModuleElem y(target_, cfg_);
    for (size_t l = 0; l < target_.rank(); ++l) {
        RingElem acc(cfg_);
        for (size_t k = 0; k < source_.rank(); ++k) {
            if (mat_[l][k].is_zero() || x.coord(k).is_zero()) continue;
            acc += mat_[l][k] * x.coord(k);
        }
        y.set_coord(l, acc);
    }
    return y;
}

GradedMap GradedMap::compose_after(const GradedMap& first) const {
    if (!(first.target_ == source_))
        fail(Errc::BasisMismatch, "composition bases do not chain");
    if (!(first.cfg_ == cfg_)) fail(Errc::ConfigMismatch, "ring configs differ");
    std::vector<std::vector<RingElem>> mat(
        target_.rank(), std::vector<RingElem>(first.source_.rank(), RingElem(cfg_)));
    for (size_t l = 0; l < target_.rank(); ++l)
        for (size_t k = 0; k < first.source_.rank(); ++k) {
            RingElem acc(cfg_);
            for (size_t m = 0; m < source_.rank(); ++m) {
                if (mat_[l][m].is_zero() || first.mat_[m][k].is_zero()) continue;
                acc += mat_[l][m] * first.mat_[m][k];
            }
            mat[l][k] = acc;
        }
    return GradedMap::unchecked(first.source_, target_, shift_ + first.shift_,
                                std::move(mat));
}

GradingReport GradedMap::check_grading() const {
    GradingReport report;
    for (size_t l = 0; l < target_.rank(); ++l)
        for (size_t k = 0; k < source_.rank(); ++k) {
            const RingElem& e = mat_[l][k];
            if (e.is_zero()) continue;
            const int want = shift_ + source_.degree(k) - target_.degree(l);
            if (!e.is_homogeneous()) {
                report.passed = false;
                report.issues.push_back({l, k, e.str(), "is not homogeneous"});
            } else if (e.degree() != want) {
                report.passed = false;
                report.issues.push_back(
                    {l, k, e.str(),
                     "has degree " + std::to_string(e.degree()) + ", expected " +
                         std::to_string(want)});
            }
        }
    return report;
}

GradedMap GradedMap::change_basis(const std::vector<ModuleElem>& new_basis,
                                  const BasisSpec& new_spec) const {
    if (!(source_ == target_))
        fail(Errc::BadParam, "basis change needs an endomorphism");
    if (new_basis.size() != source_.rank())
        fail(Errc::BadParam, "basis change needs a full basis");
    std::vector<std::vector<RingElem>> C(
        source_.rank(), std::vector<RingElem>(source_.rank(), RingElem(cfg_)));
    for (size_t j = 0; j < new_basis.size(); ++j) {
        if (!(new_basis[j].basis() == source_))
            fail(Errc::BasisMismatch, "new basis vector over wrong basis");
        for (size_t i = 0; i < source_.rank(); ++i) C[i][j] = new_basis[j].coord(i);
    }
    const RingElem det = det_bareiss(C, cfg_);
    if (!det.is_unit())
        fail(Errc::NotInvertible, "basis-change determinant " + det.str() +
                                      " is not a unit");
    const auto adj = adjugate(C, cfg_);
    const RingElem det_inv = det.inverse();
    // C^{-1} M C with C^{-1} = adj(C) / det(C).
    auto mult = [&](const std::vector<std::vector<RingElem>>& A,
                    const std::vector<std::vector<RingElem>>& B) {
        size_t n = A.size();
        std::vector<std::vector<RingElem>> R(n,
                                             std::vector<RingElem>(n, RingElem(cfg_)));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                RingElem acc(cfg_);
                for (size_t m = 0; m < n; ++m) acc += A[i][m] * B[m][j];
                R[i][j] = acc;
            }
        return R;
    };
    auto conj = mult(adj, mult(mat_, C));
    for (auto& row : conj)
        for (auto& e : row) e = e * det_inv;
    return GradedMap::unchecked(new_spec, new_spec, shift_, std::move(conj));
}

GradedMap GradedMap::at_u_zero() const {
    auto mat = mat_;
    for (auto& row : mat)
        for (auto& e : row) e = e.at_u_zero();
    return GradedMap::unchecked(source_, target_, shift_, std::move(mat));
}

GradedMap GradedMap::with_config(const RingConfig& to) const {
    auto mat = mat_;
    for (auto& row : mat)
        for (auto& e : row) e = e.with_config(to);
    GradedMap m = GradedMap::unchecked(source_, target_, shift_, std::move(mat));
    return m;
}

bool GradedMap::operator==(const GradedMap& o) const {
    return source_ == o.source_ && target_ == o.target_ && shift_ == o.shift_ &&
           mat_ == o.mat_;
}

bool GradedMap::is_identity() const {
    if (!(source_ == target_)) return false;
    for (size_t l = 0; l < target_.rank(); ++l)
        for (size_t k = 0; k < source_.rank(); ++k) {
            if (l == k ? !mat_[l][k].is_one() : !mat_[l][k].is_zero()) return false;
        }
    return true;
}

std::string GradedMap::entry_list() const {
    std::ostringstream os;
    for (size_t k = 0; k < source_.rank(); ++k) {
        ModuleElem col(target_, cfg_);
        for (size_t l = 0; l < target_.rank(); ++l) col.set_coord(l, mat_[l][k]);
        os << source_.labels[k] << " -> " << col.str() << "\n";
    }
    return os.str();
}

} // namespace eqh
