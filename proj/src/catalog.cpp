#include "ewspa/catalog.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ewspa/channels.hpp"
#include "ewspa/errors.hpp"

namespace ewspa {

namespace {

void set_sym(ComplexMatrix& m, Eigen::Index r, Eigen::Index c, Complex value) {
    m(r, c) = value;
    m(c, r) = std::conj(value);
}

std::vector<double> parse_numbers(std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string token(text.substr(0, comma));
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != token.size())
            throw Error(ErrorCode::BadParameter, "cannot parse catalog parameter '" + token + "'");
        out.push_back(value);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::size_t as_count(double value, const char* what) {
    if (value < 0 || value != std::floor(value))
        throw Error(ErrorCode::BadParameter, std::string(what) + " must be a non-negative integer");
    return static_cast<std::size_t>(value);
}

}  // namespace

CatalogEntry korbicz_witness(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw Error(ErrorCode::BadParameter, "korbicz witness needs a > 0 and b > 0");
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = a;
    m(3, 3) = a;
    m(1, 1) = b;
    m(2, 2) = b;
    set_sym(m, 1, 2, a + b);
    return {"korbicz", {a, b}, BipartiteOperator({2, 2}, std::move(m)), OptimalityClaim::WeaklyOptimal,
            EntryKind::Witness, "Korbicz et al., Phys. Rev. A 78, 062105 (2008)",
            "W = Q1 + Q2^T_B; weakly optimal, not optimal"};
}

CatalogEntry ha_witness(double a, double b, double c, double theta) {
    constexpr double pi = std::numbers::pi;
    if (!(a >= 0.0) || !(b >= 0.0) || !(c >= 0.0) || !std::isfinite(a + b + c))
        throw Error(ErrorCode::BadParameter, "ha witness needs a, b, c >= 0");
    if (!(theta >= -pi && theta <= pi)) throw Error(ErrorCode::BadParameter, "theta must lie in [-pi, pi]");

    ComplexMatrix m = ComplexMatrix::Zero(9, 9);
    const double diagonal[9] = {a, c, b, b, a, c, c, b, a};
    for (Eigen::Index k = 0; k < 9; ++k) m(k, k) = diagonal[k];
    const Complex e = std::polar(1.0, theta);
    set_sym(m, 0, 4, -e);
    set_sym(m, 0, 8, -std::conj(e));
    set_sym(m, 4, 8, -e);

    std::string note = "optimal nondecomposable for the cited parameter families";
    if (c == 0.0) note += "; c = 0 boundary admitted";
    return {"ha", {a, b, c, theta}, BipartiteOperator({3, 3}, std::move(m)),
            OptimalityClaim::OptimalNondecomposable, EntryKind::Witness,
            "Ha and Kye, Phys. Rev. A 86, 034301 (2012)", std::move(note)};
}

CatalogEntry ha_violation_instance() {
    constexpr double theta = std::numbers::pi / 12.0;
    return ha_witness(4.0 / 3.0 * std::cos(theta), 2.0 / 3.0 * std::cos(theta), 0.0, theta);
}

CatalogEntry swap_witness(std::size_t d) {
    if (d < 2) throw Error(ErrorCode::BadParameter, "swap witness needs d >= 2");
    return {"swap", {static_cast<double>(d)}, BipartiteOperator({d, d}, swap_matrix(d)), OptimalityClaim::Optimal,
            EntryKind::Witness, "Werner, Phys. Rev. A 40, 4277 (1989)", "V|ij> = |ji>"};
}

double swap_state_threshold(std::size_t d) {
    const auto da = static_cast<double>(d);
    return da * da / (da + da * da);
}

BipartiteOperator swap_state(std::size_t d, double p) {
    if (d < 2) throw Error(ErrorCode::BadParameter, "swap state needs d >= 2");
    if (!(p >= swap_state_threshold(d) && p <= 1.0))
        throw Error(ErrorCode::BadParameter, "swap state is positive only for p in [d^2/(d+d^2), 1]");
    const auto da = static_cast<double>(d);
    const auto n = static_cast<Eigen::Index>(d * d);
    return {{d, d}, p / (da * da) * ComplexMatrix::Identity(n, n) + (1.0 - p) / da * swap_matrix(d)};
}

CatalogEntry transpose_witness(std::size_t d) {
    if (d < 2) throw Error(ErrorCode::BadParameter, "transpose witness needs d >= 2");
    auto choi = choi_of_map(d, d, [](const ComplexMatrix& x) -> ComplexMatrix { return x.transpose(); });
    return {"transpose", {static_cast<double>(d)}, choi.op(), OptimalityClaim::Optimal, EntryKind::Witness,
            "Fiurasek, Phys. Rev. A 66, 052315 (2002)", "Choi state of the transpose map, V/d"};
}

CatalogEntry bell_pt_witness() {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
    set_sym(m, 1, 2, 1.0);
    return {"bell-pt", {}, BipartiteOperator({2, 2}, std::move(m)), OptimalityClaim::Optimal, EntryKind::Witness,
            "Augusiak et al., J. Phys. A 44, 212001 (2011)", "2|phi+><phi+|^T_B, unnormalized"};
}

SpecialCase special_case() {
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    rho.diagonal() << 0.2, 0.5, 0.5, 0.2;
    set_sym(rho, 1, 2, 0.5);
    ComplexMatrix sigma = ComplexMatrix::Zero(4, 4);
    sigma.diagonal() << 0.5, 0.8, 0.8, 0.5;
    set_sym(sigma, 1, 2, 0.5);

    BipartiteOperator sigma_op({2, 2}, std::move(sigma));
    CatalogEntry w{"special-case", {0.4}, sigma_op.shifted(-0.4), OptimalityClaim::WeaklyOptimal,
                   EntryKind::Witness, "", "sigma - 0.4 I, equal to rho - 0.1 I and korbicz(0.1, 0.4)"};
    return {std::move(w), BipartiteOperator({2, 2}, std::move(rho)), std::move(sigma_op)};
}

RandomWitness random_witness(Dims dims, std::uint64_t seed, const CMaxOptions& options) {
    if (dims.total() > 9) throw Error(ErrorCode::DimensionTooLarge, "random witnesses are limited to d_A*d_B <= 9");
    const std::size_t d = dims.total();
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> rank_dist(1, d);

    for (int attempt = 0; attempt < 100; ++attempt) {
        const BipartiteOperator rho(dims, random_density_matrix(d, rank_dist(rng), rng));
        const auto n = static_cast<Eigen::Index>(d);
        const double distance = (rho.matrix() - ComplexMatrix::Identity(n, n) / static_cast<double>(d)).norm();
        const double p_max = std::min(1.0, separable_ball_radius(d) / distance);
        const BipartiteOperator sigma = depolarize(rho, p_max * (0.5 + 0.5 * unit(rng)));

        CMaxOptions local = options;
        local.seed = options.seed ^ seed;
        const CMaxResult cm = c_max(sigma, local);
        const double lambda = min_eigenvalue(sigma);
        const double gap = cm.value - lambda;
        if (gap < 1e-6) continue;
        const double eps = 1e-3 * gap;
        const double c = lambda + eps + (1.0 - unit(rng)) * (gap - eps);
        Witness w = from_validated(sigma, c, cm);
        CatalogEntry entry{"random",
                           {static_cast<double>(dims.a), static_cast<double>(dims.b), static_cast<double>(seed)},
                           w.op(),
                           OptimalityClaim::None,
                           EntryKind::Witness,
                           "",
                           "sigma in the separable ball, c = " + std::to_string(c)};
        return {std::move(entry), std::move(w)};
    }
    throw Error(ErrorCode::RetryExhausted, "no witness-admitting sigma after 100 draws");
}

std::vector<std::string> catalog_names() {
    return {"korbicz", "ha", "swap", "transpose", "bell-pt", "special-case", "random"};
}

CatalogEntry catalog_lookup(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

    auto numbers = [&](std::size_t expected) {
        std::vector<double> values = parse_numbers(args);
        if (values.size() != expected) {
            throw Error(ErrorCode::BadParameter, "catalog entry '" + std::string(name) + "' takes " +
                                                     std::to_string(expected) + " parameters");
        }
        return values;
    };

    if (name == "korbicz") {
        if (args.empty()) return korbicz_witness(0.1, 0.4);
        const auto v = numbers(2);
        return korbicz_witness(v[0], v[1]);
    }
    if (name == "ha") {
        if (args.empty()) return ha_violation_instance();
        const auto v = numbers(4);
        return ha_witness(v[0], v[1], v[2], v[3]);
    }
    if (name == "swap" || name == "transpose") {
        const std::size_t d = args.empty() ? 2 : as_count(numbers(1)[0], "d");
        return name == "swap" ? swap_witness(d) : transpose_witness(d);
    }
    if (name == "bell-pt") {
        if (!args.empty()) throw Error(ErrorCode::BadParameter, "bell-pt takes no parameters");
        return bell_pt_witness();
    }
    if (name == "special-case") {
        SpecialCase sc = special_case();
        if (args.empty() || args == "w") return sc.w;
        if (args == "rho" || args == "sigma") {
            const bool is_rho = args == "rho";
            return {is_rho ? "special-case:rho" : "special-case:sigma", {},
                    is_rho ? sc.rho : sc.sigma, OptimalityClaim::None, EntryKind::State, "",
                    is_rho ? "entangled (unnormalized)" : "separable (unnormalized)"};
        }
        throw Error(ErrorCode::BadParameter, "special-case takes w, rho or sigma");
    }
    if (name == "random") {
        if (args.empty()) return random_witness({2, 2}, 0).entry;
        const auto v = numbers(3);
        return random_witness({as_count(v[0], "d_A"), as_count(v[1], "d_B")},
                              static_cast<std::uint64_t>(as_count(v[2], "seed")))
            .entry;
    }
    throw Error(ErrorCode::BadParameter, "unknown catalog entry '" + std::string(name) + "'");
}

}  // namespace ewspa
