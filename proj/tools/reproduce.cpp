#include <cmath>
#include <numbers>

#include "cli.hpp"
#include "ewspa/catalog.hpp"
#include "ewspa/channels.hpp"
#include "ewspa/spa.hpp"
#include "ewspa/witness.hpp"

namespace ewspa::cli {

namespace {

using json = nlohmann::ordered_json;

class Table {
public:
    explicit Table(std::string filter) : filter_(std::move(filter)) {}

    bool wants(const std::string& group) const { return filter_.empty() || group.find(filter_) != std::string::npos; }

    void number(const std::string& group, std::string quantity, double reference, double computed, double tol) {
        const double delta = std::abs(computed - reference);
        rows_.push_back({group, std::move(quantity), reference, computed, delta, tol, delta <= tol});
    }

    void label(const std::string& group, std::string quantity, std::string_view reference, std::string_view computed) {
        rows_.push_back({group, std::move(quantity), std::string(reference), std::string(computed), nullptr, 0.0,
                         reference == computed});
    }

    std::vector<ReproduceRow> take() { return std::move(rows_); }

private:
    std::string filter_;
    std::vector<ReproduceRow> rows_;
};

void special_case_rows(Table& t) {
    const std::string g = "special-case";
    const SpecialCase sc = special_case();
    t.number(g, "lambda_min(rho)", 0.0, min_eigenvalue(sc.rho), 1e-12);
    t.number(g, "lambda_min(sigma)", 0.3, min_eigenvalue(sc.sigma), 1e-12);
    t.number(g, "c_max(rho)", 0.1, c_max(sc.rho).value, 1e-4);
    t.number(g, "c_max(sigma)", 0.4, c_max(sc.sigma).value, 1e-4);
    t.number(g, "sigma - 0.4 I minus rho + 0.1 I (max entry)", 0.0,
             max_abs(sc.sigma.shifted(-0.4).matrix() - sc.rho.shifted(-0.1).matrix()), 1e-15);

    const Witness w = from_separable(sc.sigma, 0.4);
    t.label(g, "weakly optimal at c = 0.4", "true", weak_optimality(w).weakly_optimal ? "true" : "false");
    t.label(g, "weakly optimal at c = 0.35", "false",
            weak_optimality(from_separable(sc.sigma, 0.35)).weakly_optimal ? "true" : "false");
    const ComplementarySpaReport r = complementary_spa_check(w);
    t.label(g, "SPA(sigma - 0.4 I)", "Entangled", to_string(r.spa_w.outcome));
    t.label(g, "SPA((sigma - 0.4 I)^T_B)", "Separable", r.spa_wpt ? to_string(r.spa_wpt->outcome) : "PtPositive");
}

void korbicz_rows(Table& t) {
    const std::string g = "korbicz";
    for (double a : {0.05, 0.1, 0.25, 0.5, 1.0}) {
        const SpaReport r = spa_witness(Witness::validate(korbicz_witness(a, 0.4).op));
        t.number(g, "noise_p at a = " + json(a).dump() + ", 4a/(4a+1)", 4.0 * a / (4.0 * a + 1.0), r.noise_p, 1e-9);
    }

    int mismatches = 0;
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            const SpaReport r = spa_witness(Witness::validate(korbicz_witness(0.1 * i, 0.1 * j).op));
            if ((r.verdict.outcome == Outcome::Entangled) != (j > i)) ++mismatches;
        }
    t.number(g, "SPA Entangled iff b > a, mismatches on 10x10 grid", 0.0, mismatches, 0.0);

    const QubitAngles vanishing{std::numbers::pi / 2.0, std::numbers::pi / 2.0, std::numbers::pi, 0.0};
    t.number(g, "<ab|W|ab> at (|0>-|1>)(|0>+|1>)/2", 0.0, expectation(korbicz_witness(0.1, 0.4).op,
                                                                        vanishing.to_product_vector().joint()),
             1e-14);
    t.number(g, "c_max(W(0.1, 0.4))", 0.0, c_max(korbicz_witness(0.1, 0.4).op).value, 1e-6);

    for (auto [a, b] : {std::pair{0.1, 0.4}, {0.4, 0.1}}) {
        const std::string at = "(" + json(a).dump() + ", " + json(b).dump() + ")";
        const ComplementarySpaReport r = complementary_spa_check(Witness::validate(korbicz_witness(a, b).op));
        t.label(g, "SPA(W" + at + ")", b > a ? "Entangled" : "Separable", to_string(r.spa_w.outcome));
        t.label(g, "SPA(W" + at + "^T_B)", b > a ? "Separable" : "Entangled",
                r.spa_wpt ? to_string(r.spa_wpt->outcome) : "PtPositive");
    }
}

void ha_rows(Table& t) {
    const std::string g = "ha";
    const Witness w = Witness::validate(ha_violation_instance().op);
    const SpectralNptCheck s = spectral_npt_check(w);
    t.number(g, "lambda_min(W)", -0.7286, s.min_eig_w, 5e-5);
    t.number(g, "lambda_min(W^T_B)", -0.6440, s.min_eig_wpt, 5e-5);
    const ConjectureReport r = conjecture_check(w, OptimalityClaim::OptimalNondecomposable);
    bool gap = false;
    for (const ViolationCertificate& c : r.certificates) gap = gap || c.rule == ViolationRule::OnewSpectralGap;
    t.label(g, "ONEW spectral-gap certificate", "present", gap ? "present" : "absent");
}

void transpose_rows(Table& t) {
    const std::string g = "transpose";
    const SpaMapResult m = spa_map(choi_of_witness(transpose_witness(2).op));
    t.number(g, "p_star of the qubit transpose map", 2.0 / 3.0, m.p_star, 1e-12);
    t.label(g, "SPA of the qubit transpose map", "Separable", to_string(is_entanglement_breaking(m.choi).outcome));
    t.label(g, "SPA(bell-pt)", "Separable",
            to_string(spa_witness(Witness::validate(bell_pt_witness().op)).verdict.outcome));
    t.number(g, "swap-state validity threshold, d = 2", 2.0 / 3.0, swap_state_threshold(2), 1e-15);
}

}  // namespace

std::vector<ReproduceRow> reproduce_rows(const std::string& filter) {
    Table table(filter);
    if (table.wants("special-case")) special_case_rows(table);
    if (table.wants("korbicz")) korbicz_rows(table);
    if (table.wants("ha")) ha_rows(table);
    if (table.wants("transpose")) transpose_rows(table);
    return table.take();
}

json to_json(const ReproduceRow& row) {
    return {{"group", row.group},         {"quantity", row.quantity}, {"reference", row.reference},
            {"computed", row.computed},   {"delta", row.delta},       {"tolerance", row.tolerance},
            {"pass", row.pass}};
}

}  // namespace ewspa::cli
