#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ewspa/catalog.hpp"
#include "ewspa/channels.hpp"
#include "ewspa/errors.hpp"
#include "ewspa/operator_file.hpp"
#include "ewspa/spa.hpp"
#include "ewspa/witness.hpp"

namespace ewspa::cli {

namespace {

using json = nlohmann::ordered_json;

struct Input {
    std::string file;
    std::string catalog;
};

struct Loaded {
    BipartiteOperator op;
    std::string name;
    std::optional<OptimalityClaim> claim;
};

struct SearchFlags {
    int restarts = CMaxOptions{}.restarts;
    std::uint64_t seed = CMaxOptions{}.seed;
    int max_iterations = CMaxOptions{}.max_iterations;

    CMaxOptions options() const {
        CMaxOptions o;
        o.restarts = restarts;
        o.seed = seed;
        o.max_iterations = max_iterations;
        return o;
    }
};

void add_input(CLI::App& cmd, Input& in) {
    cmd.add_option("file", in.file, "Operator file (JSON)");
    cmd.add_option("--catalog", in.catalog, "Catalog entry NAME[:params] instead of a file");
}

void add_search(CLI::App& cmd, SearchFlags& s) {
    cmd.add_option("--restarts", s.restarts, "Random see-saw restarts")->check(CLI::NonNegativeNumber);
    cmd.add_option("--seed", s.seed, "Seed for the see-saw restarts");
    cmd.add_option("--max-iterations", s.max_iterations, "Alternation budget per see-saw run")
        ->check(CLI::NonNegativeNumber);
}

Loaded load(const Input& in) {
    if (in.file.empty() == in.catalog.empty())
        throw Error(ErrorCode::BadParameter, "give exactly one of an operator file or --catalog");
    if (!in.catalog.empty()) {
        CatalogEntry e = catalog_lookup(in.catalog);
        return {std::move(e.op), in.catalog, e.claim};
    }
    const OperatorFile f = read_operator_file(in.file);
    return {to_bipartite(f), f.name.empty() ? in.file : f.name, std::nullopt};
}

json spectrum_json(const BipartiteOperator& o) {
    const Spectrum s = hermitian_eig(o);
    return std::vector<double>(s.eigenvalues.begin(), s.eigenvalues.end());
}

json verdict_json(const SeparabilityVerdict& v) {
    return {{"outcome", to_string(v.outcome)},
            {"certificate", to_string(v.certificate)},
            {"min_pt_eigenvalue", v.min_pt_eigenvalue}};
}

json product_json(const ProductVector& v) {
    return {{"a", vector_to_json(v.a)}, {"b", vector_to_json(v.b)}};
}

void emit(const json& report, const std::string& json_path, std::ostream& out) {
    out << report.dump(2) << '\n';
    if (json_path.empty()) return;
    std::ofstream file(json_path);
    if (!file) throw Error(ErrorCode::Parse, "cannot write " + json_path);
    file << report.dump(2) << '\n';
}

int cmd_spa(const Input& in, const SearchFlags& search, bool expect_separable, const std::string& json_path,
            std::ostream& out) {
    const Loaded l = load(in);
    const SpaReport r = spa_witness(Witness::validate(l.op, search.options()));
    json report{{"name", l.name},
                {"shift_s", r.shift_s},
                {"noise_p", r.noise_p},
                {"verdict", to_string(r.verdict.outcome)},
                {"certificate", to_string(r.verdict.certificate)},
                {"entanglement_breaking", to_string(r.entanglement_breaking)},
                {"eigenvalues_w", spectrum_json(l.op)},
                {"eigenvalues_w_pt", spectrum_json(partial_transpose(l.op))}};
    emit(report, json_path, out);
    if (expect_separable && r.verdict.outcome != Outcome::Separable) return kExpectationMismatch;
    return kOk;
}

int cmd_cmax(const Input& in, const SearchFlags& search, const std::string& json_path, std::ostream& out) {
    const Loaded l = load(in);
    const CMaxResult r = c_max(l.op, search.options());
    json report{{"name", l.name},
                {"value", r.value},
                {"argmin", product_json(r.argmin)},
                {"starts_used", r.starts_used},
                {"converged", r.converged},
                {"lower_bound", min_eigenvalue(l.op)},
                {"upper_bound", r.certified_upper_bound},
                {"seed", search.seed},
                {"restarts", search.restarts}};
    emit(report, json_path, out);
    return r.converged ? kOk : kNotConverged;
}

int cmd_check_witness(const Input& in, const SearchFlags& search, const std::string& json_path, std::ostream& out) {
    const Loaded l = load(in);
    json report{{"name", l.name}, {"lambda_min", min_eigenvalue(l.op)}};
    try {
        const Witness w = Witness::validate(l.op, search.options());
        const WeakOptimality weak = weak_optimality(w);
        report["is_witness"] = true;
        report["min_product_expectation"] = weak.min_product_expectation;
        report["weakly_optimal"] = weak.weakly_optimal;
        report["vanishing_vector"] = weak.vanishing_vector ? product_json(*weak.vanishing_vector) : json(nullptr);
        const SpectralNptCheck s = spectral_npt_check(w);
        report["spa_npt_by_spectrum"] = s.violating;
        report["lambda_min_pt"] = s.min_eig_wpt;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotAWitness && e.code() != ErrorCode::NotBlockPositive) throw;
        const CMaxResult cm = c_max(l.op, search.options());
        report["is_witness"] = false;
        report["reason"] = to_string(e.code());
        report["min_product_expectation"] = cm.value;
        if (!cm.converged) {
            emit(report, json_path, out);
            return kNotConverged;
        }
    }
    report["seed"] = search.seed;
    emit(report, json_path, out);
    return kOk;
}

int cmd_conjecture(const Input& in, const SearchFlags& search, const std::string& claim_text,
                   const std::string& json_path, std::ostream& out) {
    const Loaded l = load(in);
    const OptimalityClaim claim = !claim_text.empty() ? parse_claim(claim_text) : l.claim.value_or(OptimalityClaim::None);
    const ConjectureReport r = conjecture_check(Witness::validate(l.op, search.options()), claim);
    json certificates = json::array();
    for (const ViolationCertificate& c : r.certificates) {
        certificates.push_back(
            {{"rule", to_string(c.rule)}, {"side", to_string(c.side)}, {"verdict", verdict_json(c.verdict)}});
    }
    json report{{"name", l.name},
                {"claim", to_string(claim)},
                {"spa_verdict", verdict_json(r.spa.verdict)},
                {"lambda_min_w", r.min_eig_w},
                {"lambda_min_w_pt", r.min_eig_wpt},
                {"certificates", certificates},
                {"weakly_optimal", r.weak ? json(r.weak->weakly_optimal) : json(nullptr)},
                {"status", to_string(r.status)}};
    emit(report, json_path, out);
    return r.weak ? kOk : kNotConverged;
}

int cmd_choi(const Input& in, const std::string& json_path, std::ostream& out) {
    const Loaded l = load(in);
    const ChoiMatrix c = choi_of_witness(l.op);
    const SpaMapResult m = spa_map(c);
    json report{{"name", l.name},
                {"dim_in", c.dim_in()},
                {"dim_out", c.dim_out()},
                {"trace_preserving", is_trace_preserving(c)},
                {"completely_positive", m.already_cp},
                {"p_star", m.p_star},
                {"spa_entanglement_breaking", verdict_json(is_entanglement_breaking(m.choi))},
                {"spa_choi", to_json(make_operator_file(m.choi.op(), "choi", l.name + " spa"))}};
    emit(report, json_path, out);
    return kOk;
}

int cmd_apply(const Input& in, const std::string& state_path, bool spa, const std::string& json_path,
              std::ostream& out) {
    const Loaded l = load(in);
    const OperatorFile state = read_operator_file(state_path);
    ChoiMatrix c = choi_of_witness(l.op);
    if (spa) c = spa_map(c).choi;
    const ComplexMatrix image = apply_map(c, state.matrix);
    OperatorFile result;
    result.dims = {c.dim_out()};
    result.matrix = image;
    result.kind = "raw";
    result.name = (spa ? "spa(" + l.name + ")" : l.name) + " applied to " + state_path;
    emit(to_json(result), json_path, out);
    return kOk;
}

int cmd_catalog(const std::string& name, const std::string& json_path, std::ostream& out) {
    if (name.empty()) {
        for (const std::string& n : catalog_names()) {
            const CatalogEntry e = catalog_lookup(n);
            out << std::left << std::setw(14) << n << e.note << '\n';
        }
        return kOk;
    }
    const CatalogEntry e = catalog_lookup(name);
    OperatorFile f = make_operator_file(e.op, e.kind == EntryKind::State ? "state" : "witness", name);
    f.provenance = {{"parameters", e.parameters}, {"claim", to_string(e.claim)}, {"note", e.note}};
    if (!e.source.empty()) f.provenance["source"] = e.source;
    emit(to_json(f), json_path, out);
    return kOk;
}

int cmd_reproduce(const std::string& filter, const std::string& json_path, std::ostream& out) {
    const std::vector<ReproduceRow> rows = reproduce_rows(filter);
    std::size_t failed = 0;
    json all = json::array();
    out << std::left << std::setw(14) << "group" << std::setw(52) << "quantity" << std::setw(16) << "reference"
        << std::setw(16) << "computed" << std::setw(12) << "|delta|" << "result\n";
    for (const ReproduceRow& r : rows) {
        auto cell = [](const json& v, int precision) {
            if (v.is_string()) return v.get<std::string>();
            std::ostringstream text;
            text << std::setprecision(precision) << v.get<double>();
            return text.str();
        };
        out << std::left << std::setw(14) << r.group << std::setw(52) << r.quantity << std::setw(16)
            << cell(r.reference, 10) << std::setw(16) << cell(r.computed, 10) << std::setw(12)
            << (r.delta.is_null() ? "-" : cell(r.delta, 3)) << (r.pass ? "pass" : "FAIL") << '\n';
        if (!r.pass) ++failed;
        all.push_back(to_json(r));
    }
    out << rows.size() - failed << "/" << rows.size() << " rows pass\n";
    if (!json_path.empty()) {
        std::ofstream file(json_path);
        if (!file) throw Error(ErrorCode::Parse, "cannot write " + json_path);
        file << json{{"rows", all}, {"passed", rows.size() - failed}, {"failed", failed}}.dump(2) << '\n';
    }
    return failed == 0 ? kOk : kExpectationMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entanglement witnesses and their structural physical approximations"};
    app.require_subcommand(1);

    Input in;
    SearchFlags search;
    std::string json_path;
    bool expect_separable = false;
    std::string claim;
    std::string state_path;
    bool apply_spa = false;
    std::string catalog_name;
    std::string filter;

    auto* spa = app.add_subcommand("spa", "SPA shift, noise weight and separability verdict of a witness");
    add_input(*spa, in);
    add_search(*spa, search);
    spa->add_flag("--expect-separable", expect_separable, "Exit 2 unless the SPA is certified separable");

    auto* cmax = app.add_subcommand("cmax", "Minimum of <ab|O|ab> over product vectors");
    add_input(*cmax, in);
    add_search(*cmax, search);

    auto* check = app.add_subcommand("check-witness", "Witness validity and weak optimality");
    add_input(*check, in);
    add_search(*check, search);

    auto* conj = app.add_subcommand("conjecture", "Look for SPA-conjecture violation certificates");
    add_input(*conj, in);
    add_search(*conj, search);
    conj->add_option("--claim", claim, "Optimality claim (defaults to the catalog claim, else none)")
        ->check(CLI::IsMember({"none", "weak", "optimal", "onew"}));

    auto* choi = app.add_subcommand("choi", "Treat the operator as a Choi matrix: CP, trace preservation, SPA map");
    add_input(*choi, in);

    auto* apply = app.add_subcommand("apply", "Apply the map with the given Choi matrix to a state");
    add_input(*apply, in);
    apply->add_option("--state", state_path, "Single-system state file")->required();
    apply->add_flag("--spa", apply_spa, "Apply the SPA of the map instead");

    auto* catalog = app.add_subcommand("catalog", "List catalog entries or print one as an operator file");
    catalog->add_option("name", catalog_name, "NAME[:params]");

    auto* reproduce = app.add_subcommand("reproduce", "Recompute every reference value and compare");
    reproduce->add_option("--filter", filter, "Only groups containing this text");

    for (CLI::App* cmd : {spa, cmax, check, conj, choi, apply, catalog, reproduce})
        cmd->add_option("--json", json_path, "Also write the report to this path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*spa) return cmd_spa(in, search, expect_separable, json_path, out);
        if (*cmax) return cmd_cmax(in, search, json_path, out);
        if (*check) return cmd_check_witness(in, search, json_path, out);
        if (*conj) return cmd_conjecture(in, search, claim, json_path, out);
        if (*choi) return cmd_choi(in, json_path, out);
        if (*apply) return cmd_apply(in, state_path, apply_spa, json_path, out);
        if (*catalog) return cmd_catalog(catalog_name, json_path, out);
        if (*reproduce) return cmd_reproduce(filter, json_path, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
        return e.code() == ErrorCode::DidNotConverge ? kNotConverged : kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace ewspa::cli
