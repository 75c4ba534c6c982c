#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eqh/catalog.hpp"
#include "eqh/limits.hpp"
#include "eqh/solver.hpp"
#include "eqh/zhao.hpp"

using json = nlohmann::ordered_json;
using namespace eqh;

namespace {

struct Output {
    std::string format = "text";
    std::string path;

    void emit(const std::string& text, const json& payload) const {
        std::ostringstream os;
        if (format == "json")
            os << payload.dump(2) << "\n";
        else
            os << text;
        if (path.empty()) {
            std::cout << os.str();
        } else {
            std::ofstream out(path);
            if (!out) fail(Errc::BadParam, "cannot open output file " + path);
            out << os.str();
        }
    }
};

json json_header(const std::string& command, json inputs) {
    return json{{"schema", 1},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"results", json::object()}};
}

SpaceSpec load_space(const std::string& space, const std::string& spec_file) {
    if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        if (!in) fail(Errc::BadParam, "cannot read spec file " + spec_file);
        std::ostringstream os;
        os << in.rdbuf();
        return parse_space(os.str());
    }
    return builtin_space(space);
}

int cmd_spaces(const Output& out) {
    json payload = json_header("spaces", json::object());
    std::ostringstream text;
    auto& list = payload["results"]["spaces"] = json::array();
    for (const auto& id : builtin_ids()) {
        list.push_back(id);
        text << id << "\n";
    }
    out.emit(text.str(), payload);
    return 0;
}

int cmd_product(const std::string& space, int r, const Output& out) {
    const SpaceSpec spec = builtin_space(space);
    const ProductTable table = spec.table_at(r);
    json payload = json_header("product", {{"space", space}, {"r", r}});
    auto& entries = payload["results"]["entries"] = json::array();
    std::ostringstream text;
    if (out.format == "csv") {
        text << table.csv();
    } else {
        for (size_t i = 0; i < spec.rank(); ++i)
            for (size_t j = 0; j < spec.rank(); ++j)
                text << spec.basis.labels[i] << " * " << spec.basis.labels[j]
                     << " = " << table.entry(i, j).str() << "\n";
    }
    for (size_t i = 0; i < spec.rank(); ++i)
        for (size_t j = 0; j < spec.rank(); ++j)
            entries.push_back({{"i", spec.basis.labels[i]},
                               {"j", spec.basis.labels[j]},
                               {"value", table.entry(i, j).str()}});
    out.emit(text.str(), payload);
    return 0;
}

int cmd_seidel(const std::string& space, int r, bool weighted, const Output& out) {
    const SpaceSpec spec = builtin_space(space);
    GradedMap m = seidel_instantiate(spec.seidel_family(), r);
    if (weighted) m = weighted_seidel(m, WeightRule{1, 0});
    json payload = json_header(
        "seidel", {{"space", space}, {"r", r}, {"weighted", weighted}});
    payload["results"]["shift"] = m.shift();
    auto& cols = payload["results"]["columns"] = json::array();
    std::ostringstream text;
    std::ostringstream csv;
    csv << "source,image\n";
    for (size_t k = 0; k < spec.rank(); ++k) {
        ModuleElem col(spec.basis, spec.ring);
        for (size_t l = 0; l < spec.rank(); ++l) col.set_coord(l, m.entry(l, k));
        cols.push_back({{"source", spec.basis.labels[k]}, {"image", col.str()}});
        text << spec.basis.labels[k] << " -> " << col.str() << "\n";
        csv << spec.basis.labels[k] << ",\"" << col.str() << "\"\n";
    }
    out.emit(out.format == "csv" ? csv.str() : text.str(), payload);
    return 0;
}

int cmd_verify(const std::string& space, int rmax, const Output& out) {
    const SpaceSpec spec = builtin_space(space);
    const SeidelFamily family = spec.seidel_family();
    json payload = json_header("verify", {{"space", space}, {"rmax", rmax}});
    auto& checks = payload["results"]["checks"] = json::array();
    std::ostringstream text;
    bool ok = true;
    auto record = [&](const std::string& name, bool passed,
                      const std::string& detail = "") {
        checks.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
        text << (passed ? "pass" : "FAIL") << "  " << name;
        if (!detail.empty()) text << "  (" << detail << ")";
        text << "\n";
        ok = ok && passed;
    };

    for (int r = 0; r <= rmax; ++r) {
        const GradedMap m = seidel_instantiate(family, r);
        record("gradedness r=" + std::to_string(r), m.check_grading().passed);
    }
    for (int r = 0; r <= rmax; ++r) {
        auto axioms = spec.table_at(r).check_axioms();
        record("product axioms r=" + std::to_string(r), axioms.passed,
               axioms.passed ? "" : axioms.issues.front().kind + " at " +
                                        axioms.issues.front().where);
    }
    if (spec.has_product) {
        const WeightRule rule{1, 0};
        for (int r = 0; r <= rmax; ++r) {
            const ProductTable pr = spec.table_at(r);
            const ProductTable pr1 = spec.table_at(r + 1);
            bool zero = true;
            std::string where;
            for (size_t k = 0; k < spec.rank(); ++k) {
                const ModuleElem x = ModuleElem::unit(spec.basis, spec.ring, k);
                const ModuleElem res = intertwining_residual(
                    family, pr, pr1, spec.gen_label, spec.gen_label, rule, x, r);
                if (!res.is_zero()) {
                    zero = false;
                    where = "x=" + spec.basis.labels[k] + ": " + res.str();
                    break;
                }
            }
            record("intertwining residual r=" + std::to_string(r), zero, where);
        }
    }
    if (auto inverse = spec.inverse_family()) {
        for (int r = 0; r <= rmax; ++r)
            record("inverse pair r=" + std::to_string(r),
                   verify_inverse_pair(family, *inverse, r).passed);
    }
    {
        const GradedMap base = seidel_instantiate(family, 0).at_u_zero();
        bool stable = true;
        for (int r = 1; r <= rmax; ++r)
            if (!(seidel_instantiate(family, r).at_u_zero() == base)) stable = false;
        record("u=0 layer is r-independent", stable);
    }
    payload["results"]["passed"] = ok;
    text << (ok ? "all checks passed" : "verification FAILED") << "\n";
    out.emit(text.str(), payload);
    return ok ? 0 : 1;
}

int cmd_solve(const std::string& space, int rmax, const std::string& spec_file,
              const Output& out) {
    const SpaceSpec spec = load_space(space, spec_file);
    const AnsatzBundle ansatz = spec_file.empty()
                                    ? make_ansatz(spec)
                                    : ansatz_from_template_spec(spec);
    const SolveRun run = induct_over_r(ansatz, rmax);
    json payload = json_header(
        "solve", {{"space", spec.id}, {"rmax", rmax},
                  {"spec_file", spec_file.empty() ? json(nullptr) : json(spec_file)}});
    auto& coeffs = payload["results"]["coefficients"] = json::array();
    std::ostringstream text;
    for (const auto& [key, value] : run.values) {
        const Unknown u = Unknown::parse(key);
        coeffs.push_back(
            {{"name", u.name}, {"level", u.level}, {"value", rat_to_string(value)}});
        text << key << " = " << rat_to_string(value) << "\n";
    }
    auto& levels = payload["results"]["levels"] = json::array();
    for (const auto& level : run.levels) {
        json entry{{"r", level.r}, {"seidel", level.seidel.entry_list()}};
        if (level.product_operator)
            entry["product_generator"] = level.product_operator->entry_list();
        levels.push_back(entry);
    }
    auto& systems = payload["results"]["constraint_systems"] = json::array();
    for (const auto& listing : run.listings) systems.push_back(listing);
    out.emit(text.str(), payload);
    return 0;
}

int cmd_esh(const std::string& space, int pmax, int truncate, const Output& out) {
    const SpaceSpec spec = builtin_space(space);
    std::vector<ModuleElem> ordered = spec.limit_basis;
    std::vector<std::string> labels = spec.limit_labels;
    if (ordered.empty()) {
        for (size_t k = 0; k < spec.rank(); ++k) {
            ordered.push_back(ModuleElem::unit(spec.basis, spec.ring, k));
            labels.push_back(spec.basis.labels[k]);
        }
    }
    const GeneratorSequence seq =
        generator_sequence(spec.seidel_family(), ordered, labels, pmax);
    const ChainReport chain = chain_strictness(seq);
    json payload = json_header(
        "esh", {{"space", space}, {"pmax", pmax}, {"truncate_u", truncate}});
    std::ostringstream text;
    std::ostringstream csv;
    csv << "p,generator,element,det_product\n";
    auto display = [&](const ModuleElem& e) {
        return truncate >= 0 ? e.truncate_u(truncate).str() : e.str();
    };
    auto& stages = payload["results"]["stages"] = json::array();
    for (const auto& stage : seq.stages) {
        json js{{"p", stage.p},
                {"det_step", stage.det_step.str()},
                {"det_product", stage.det_product.str()}};
        auto& gens = js["generators"] = json::array();
        text << "p = " << stage.p << "   D_p = " << stage.det_product.str() << "\n";
        for (size_t k = 0; k < stage.raw.size(); ++k) {
            gens.push_back({{"label", seq.ordered.labels[k]},
                            {"raw", display(stage.raw[k])},
                            {"normalized", display(stage.normalized[k])}});
            text << "  x_" << seq.ordered.labels[k] << "^" << stage.p << " = "
                 << display(stage.raw[k]) << "\n";
            csv << stage.p << "," << seq.ordered.labels[k] << ",\""
                << display(stage.raw[k]) << "\",\"" << stage.det_product.str()
                << "\"\n";
        }
        stages.push_back(js);
    }
    if (!seq.presentation.empty()) {
        auto& pres = payload["results"]["presentation"] = json::array();
        text << "presentation generators:\n";
        for (size_t i = 0; i < seq.presentation.size(); ++i) {
            pres.push_back(display(seq.presentation[i]));
            text << "  p = " << i + 1 << ": " << display(seq.presentation[i])
                 << "\n";
        }
    }
    auto& steps = payload["results"]["chain"] = json::array();
    for (const auto& step : chain.steps) {
        steps.push_back({{"p", step.p},
                         {"strict", step.strict},
                         {"witness", step.witness},
                         {"valuation", step.min_valuation},
                         {"next_valuation", step.next_valuation}});
        text << "chain p=" << step.p << (step.strict ? " strict" : " stable");
        if (step.strict)
            text << " (witness " << step.witness << ", valuation "
                 << step.next_valuation << " < " << step.min_valuation << ")";
        text << "\n";
    }
    payload["results"]["all_strict"] = chain.all_strict;
    const Rank1Report rank1 = rank1_limit(spec.seidel_family(), pmax);
    if (rank1.recognized) {
        payload["results"]["limit"] = rank1.limit;
        text << "direct limit: " << rank1.limit << "\n";
    }
    out.emit(out.format == "csv" ? csv.str() : text.str(), payload);
    return 0;
}

int cmd_zhao(int s, int K, const Output& out) {
    const ZhaoComplex complex = build_complex(s, K);
    const DSquaredReport dsq = verify_d_squared(complex);
    json payload = json_header("zhao", {{"s", s}, {"K", K}});
    payload["results"]["d_squared_zero"] = dsq.passed;
    std::ostringstream text;
    std::ostringstream csv;
    text << "generators: " << complex.gens.size() << "\n";
    text << "d^2 = 0: " << (dsq.passed ? "yes" : "NO") << "\n";
    // The window of degrees untouched by the truncation boundary.
    int lo = -2 * s, hi = lo - 1;
    for (int d = lo; d <= complex.max_degree(); ++d) {
        bool valid = true;
        for (int dd = d - 1; dd <= d + 1; ++dd)
            for (size_t i : complex.degree_indices(dd))
                if (complex.gens[i].k >= K - 1) valid = false;
        if (!valid) break;
        hi = d;
    }
    auto& coh = payload["results"]["cohomology"] = json::array();
    csv << "degree,rank,torsion\n";
    if (hi >= lo) {
        for (const auto& entry : cohomology(complex, lo, hi)) {
            json torsion = json::array();
            for (const auto& t : entry.torsion) torsion.push_back(t.get_str());
            coh.push_back({{"degree", entry.degree},
                           {"rank", entry.rank},
                           {"torsion", torsion}});
            text << "H^" << entry.degree << ": rank " << entry.rank;
            if (!entry.torsion.empty()) text << " plus torsion";
            text << "\n";
            csv << entry.degree << "," << entry.rank << ",";
            for (const auto& t : entry.torsion) csv << t.get_str() << " ";
            csv << "\n";
        }
    }
    auto& factors = payload["results"]["continuation_factors"] = json::array();
    std::vector<std::pair<Int, int>> pattern;
    for (int ss = 0; ss <= s; ++ss) {
        const ContinuationFactor f = continuation_action(ss);
        factors.push_back({{"s", ss},
                           {"scalar", f.scalar.get_str()},
                           {"u_power", f.u_power}});
        pattern.push_back({f.scalar, f.u_power});
        text << "kappa_" << ss << " = " << f.scalar.get_str() << "*u\n";
    }
    const Rank1Report rank1 = rank1_limit_from_factors(pattern);
    payload["results"]["limit"] = rank1.recognized ? rank1.limit : "unrecognized";
    text << "direct limit: " << (rank1.recognized ? rank1.limit : "unrecognized")
         << "\n";
    payload["results"]["differential"] = json::array();
    for (size_t i = 0; i < complex.gens.size(); ++i) {
        if (complex.diff[i].empty()) continue;
        std::ostringstream ds;
        bool first = true;
        for (const auto& [dst, coeff] : complex.diff[i]) {
            if (!first) ds << " + ";
            first = false;
            ds << coeff.get_str() << "*" << complex.gens[dst].str();
        }
        payload["results"]["differential"].push_back(
            {{"generator", complex.gens[i].str()}, {"image", ds.str()}});
    }
    out.emit(out.format == "csv" ? csv.str() : text.str(), payload);
    return dsq.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic engine for equivariant quantum cohomology "
                 "computations"};
    app.require_subcommand(1);

    Output out;
    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", out.path, "write output to a file");

    std::string space, spec_file;
    int r = 0, rmax = 5, pmax = 3, truncate = -1, zs = 1, zk = 6;
    bool weighted = false;

    auto* spaces = app.add_subcommand("spaces", "list the built-in spaces");
    spaces->fallthrough();
    auto* product = app.add_subcommand("product", "print a product table");
    product->fallthrough();
    product->add_option("--space", space, "space id")->required();
    product->add_option("--r", r, "equivariance level");
    auto* seidel = app.add_subcommand("seidel", "print a Seidel matrix");
    seidel->fallthrough();
    seidel->add_option("--space", space, "space id")->required();
    seidel->add_option("--r", r, "equivariance level");
    seidel->add_flag("--weighted", weighted, "apply the q-weight rule");
    auto* verify = app.add_subcommand("verify", "run the verification suite");
    verify->fallthrough();
    verify->add_option("--space", space, "space id")->required();
    verify->add_option("--rmax", rmax, "largest level");
    auto* solve = app.add_subcommand("solve", "derive unknown coefficients");
    solve->fallthrough();
    solve->add_option("--space", space, "space id");
    solve->add_option("--rmax", rmax, "largest level");
    solve->add_option("--spec", spec_file, "definition file with ?unknowns");
    auto* esh = app.add_subcommand("esh", "generator sequence and chain report");
    esh->fallthrough();
    esh->add_option("--space", space, "space id")->required();
    esh->add_option("--pmax", pmax, "number of stages");
    esh->add_option("--truncate-u", truncate, "display mod u^K");
    auto* zhao = app.add_subcommand("zhao", "plane cochain complex");
    zhao->fallthrough();
    zhao->add_option("--s", zs, "slope index")->required();
    zhao->add_option("--K", zk, "u-truncation bound")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        // Test hook for the exit-code contract.
        if (std::getenv("EQH_FAULT_INJECT") != nullptr)
            throw std::runtime_error("injected fault");
        if (app.got_subcommand("spaces")) return cmd_spaces(out);
        if (app.got_subcommand("product")) return cmd_product(space, r, out);
        if (app.got_subcommand("seidel")) return cmd_seidel(space, r, weighted, out);
        if (app.got_subcommand("verify")) return cmd_verify(space, rmax, out);
        if (app.got_subcommand("solve")) return cmd_solve(space, rmax, spec_file, out);
        if (app.got_subcommand("esh")) return cmd_esh(space, pmax, truncate, out);
        if (app.got_subcommand("zhao")) return cmd_zhao(zs, zk, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.code()) {
            case Errc::UnknownSpace:
            case Errc::BadParam:
            case Errc::SyntaxError:
            case Errc::SemanticError:
                return 2;
            case Errc::Stuck:
            case Errc::Inconsistent:
            case Errc::VerificationFailed:
                return 1;
            default:
                return 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "internal fault: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
