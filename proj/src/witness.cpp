#include "ewspa/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ewspa/errors.hpp"

namespace ewspa {

namespace {

constexpr double kUnitTol = 1e-10;
constexpr double kPsdTol = 1e-10;

double scale_of(const BipartiteOperator& o) { return std::max(1.0, o.max_abs()); }

void require_psd(const BipartiteOperator& o, ErrorCode code, const char* what) {
    if (!o.is_hermitian()) throw Error(ErrorCode::NotHermitian, std::string(what) + " is not Hermitian");
    const double lambda = min_eigenvalue(o);
    if (lambda < -kPsdTol * scale_of(o)) {
        throw Error(code, std::string(what) + " has negative eigenvalue " + std::to_string(lambda));
    }
}

ComplexVector basis_vector(std::size_t n, std::size_t k) {
    ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    e(static_cast<Eigen::Index>(k)) = 1.0;
    return e;
}

struct Run {
    double value;
    ComplexVector a;
    ComplexVector b;
    bool converged;
    std::vector<double> trace;
};

// One see-saw run from (a, b). The first half step re-optimizes a.
Run see_saw(const BipartiteOperator& sigma, ComplexVector a, ComplexVector b, const CMaxOptions& options) {
    Run run{expectation(sigma, kron(a, b)), std::move(a), std::move(b), false, {}};
    if (options.record_traces) run.trace.push_back(run.value);
    const double tol = options.tolerance * scale_of(sigma);

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        const double before = run.value;

        Spectrum side_a = hermitian_eig(conditioned_on_b(sigma, run.b));
        run.a = side_a.min_vector();
        run.value = side_a.min();
        if (options.record_traces) run.trace.push_back(run.value);

        Spectrum side_b = hermitian_eig(conditioned_on_a(sigma, run.a));
        run.b = side_b.min_vector();
        run.value = side_b.min();
        if (options.record_traces) run.trace.push_back(run.value);

        if (std::abs(before - run.value) < tol) {
            run.converged = true;
            break;
        }
    }
    return run;
}

}  // namespace

ProductVector::ProductVector(ComplexVector a_in, ComplexVector b_in) : a(std::move(a_in)), b(std::move(b_in)) {
    if (std::abs(a.norm() - 1.0) > kUnitTol || std::abs(b.norm() - 1.0) > kUnitTol)
        throw Error(ErrorCode::NotNormalized, "product vector factors must be unit vectors");
}

ProductVector QubitAngles::to_product_vector() const {
    auto qubit = [](double theta, double t) {
        ComplexVector v(2);
        v(0) = std::cos(theta / 2.0);
        v(1) = std::polar(1.0, t) * std::sin(theta / 2.0);
        return v;
    };
    return {qubit(theta1, t1), qubit(theta2, t2)};
}

ComplexMatrix conditioned_on_b(const BipartiteOperator& o, const ComplexVector& b) {
    const auto da = static_cast<Eigen::Index>(o.dims().a);
    const auto db = static_cast<Eigen::Index>(o.dims().b);
    if (b.size() != db) throw Error(ErrorCode::DimensionMismatch, "conditioning vector has wrong length");
    ComplexMatrix m(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index k = 0; k < da; ++k) m(i, k) = b.dot(o.matrix().block(i * db, k * db, db, db) * b);
    return 0.5 * (m + m.adjoint());
}

ComplexMatrix conditioned_on_a(const BipartiteOperator& o, const ComplexVector& a) {
    const auto da = static_cast<Eigen::Index>(o.dims().a);
    const auto db = static_cast<Eigen::Index>(o.dims().b);
    if (a.size() != da) throw Error(ErrorCode::DimensionMismatch, "conditioning vector has wrong length");
    ComplexMatrix m = ComplexMatrix::Zero(db, db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index k = 0; k < da; ++k)
            m += std::conj(a(i)) * a(k) * o.matrix().block(i * db, k * db, db, db);
    return 0.5 * (m + m.adjoint());
}

CMaxResult c_max(const BipartiteOperator& sigma, const CMaxOptions& options) {
    if (!sigma.is_hermitian()) throw Error(ErrorCode::NotHermitian, "c_max needs a Hermitian operator");
    if (options.restarts < 0) throw Error(ErrorCode::BadParameter, "restarts must be non-negative");
    const auto [da, db] = sigma.dims();

    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < sigma.side(); ++k) upper = std::min(upper, sigma(k, k).real());

    std::vector<Run> runs;
    if (options.basis_starts) {
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j)
                runs.push_back(see_saw(sigma, basis_vector(da, i), basis_vector(db, j), options));
    }
    Rng rng(options.seed);
    for (int r = 0; r < options.restarts; ++r) {
        ComplexVector a = random_unit_vector(da, rng);
        ComplexVector b = random_unit_vector(db, rng);
        runs.push_back(see_saw(sigma, std::move(a), std::move(b), options));
    }
    if (runs.empty()) throw Error(ErrorCode::BadParameter, "c_max needs at least one start");

    // First strict minimum in start order: independent of evaluation order.
    std::size_t best = 0;
    for (std::size_t k = 1; k < runs.size(); ++k)
        if (runs[k].value < runs[best].value) best = k;

    ProductVector argmin(runs[best].a / runs[best].a.norm(), runs[best].b / runs[best].b.norm());
    CMaxResult result{expectation(sigma, argmin.joint()), std::move(argmin), static_cast<int>(runs.size()),
                      runs[best].converged, upper, {}};
    if (options.record_traces) {
        result.traces.reserve(runs.size());
        for (auto& run : runs) result.traces.push_back(std::move(run.trace));
    }
    return result;
}

double separable_ball_radius(std::size_t total_dim) {
    const auto d = static_cast<double>(total_dim);
    return 1.0 / std::sqrt(d * (d - 1.0));
}

bool in_separable_ball(const BipartiteOperator& rho) {
    const double tr = rho.trace();
    if (!rho.is_hermitian() || tr <= 0.0) return false;
    const auto n = static_cast<Eigen::Index>(rho.side());
    const ComplexMatrix diff = rho.matrix() / tr - ComplexMatrix::Identity(n, n) / static_cast<double>(n);
    return diff.norm() <= separable_ball_radius(rho.side()) * (1.0 + 1e-12);
}

Witness Witness::validate(const BipartiteOperator& op, const CMaxOptions& options) {
    if (!op.is_hermitian()) throw Error(ErrorCode::NotHermitian, "witness candidate is not Hermitian");
    const double lambda = min_eigenvalue(op);
    if (lambda >= -kHermitianTol * scale_of(op)) {
        throw Error(ErrorCode::NotAWitness,
                    "operator is positive semidefinite (lambda_min = " + std::to_string(lambda) + ")");
    }
    CMaxResult cm = c_max(op, options);
    if (cm.value < -kTolBlock) {
        throw Error(ErrorCode::NotBlockPositive,
                    "negative on a product vector (min product expectation = " + std::to_string(cm.value) + ")");
    }
    return Witness(op, std::nullopt, WitnessValidation{lambda, cm.value, std::move(cm.argmin), cm.converged});
}

Witness from_validated(const BipartiteOperator& sigma, double c, const CMaxResult& sigma_cmax) {
    if (!std::isfinite(c) || c < 0.0) throw Error(ErrorCode::BadParameter, "c must be finite and >= 0");
    require_psd(sigma, ErrorCode::NotAState, "sigma");
    const double lambda_sigma = min_eigenvalue(sigma);
    if (c <= lambda_sigma) {
        throw Error(ErrorCode::NotAWitness, "c = " + std::to_string(c) + " <= lambda_min(sigma) = " +
                                                std::to_string(lambda_sigma) + "; operator is positive");
    }
    if (c > sigma_cmax.value + kTolBlock) {
        throw Error(ErrorCode::NotBlockPositive, "c = " + std::to_string(c) + " > c_max(sigma) = " +
                                                     std::to_string(sigma_cmax.value));
    }
    BipartiteOperator w = sigma.shifted(-c);
    WitnessValidation validation{min_eigenvalue(w), sigma_cmax.value - c, sigma_cmax.argmin, sigma_cmax.converged};
    Provenance provenance{sigma, c, in_separable_ball(sigma)};
    return Witness(std::move(w), std::move(provenance), std::move(validation));
}

Witness from_separable(const BipartiteOperator& sigma, double c, const CMaxOptions& options) {
    if (!std::isfinite(c) || c < 0.0) throw Error(ErrorCode::BadParameter, "c must be finite and >= 0");
    require_psd(sigma, ErrorCode::NotAState, "sigma");
    return from_validated(sigma, c, c_max(sigma, options));
}

DecomposedForm decompose_form(const BipartiteOperator& w, const CMaxOptions& options) {
    const Witness checked = Witness::validate(w, options);
    const double lambda = checked.validation().min_eigenvalue;
    const std::size_t d = w.side();
    const auto n = static_cast<Eigen::Index>(d);

    // rho = (w + |lambda| I) / N is a state on the PSD boundary; mixing it
    // with I/d by the largest weight p that stays in the separable ball gives
    // sigma = p rho + (1-p) I/d and sigma - c I = (p/N) w.
    const double shift = -lambda;
    const double norm = w.trace() + shift * static_cast<double>(d);
    const ComplexMatrix rho = (w.matrix() + shift * ComplexMatrix::Identity(n, n)) / norm;
    const ComplexMatrix mixed = ComplexMatrix::Identity(n, n) / static_cast<double>(d);
    const double distance = (rho - mixed).norm();
    const double p = std::min(1.0, separable_ball_radius(d) / distance);

    BipartiteOperator sigma(w.dims(), p * rho + (1.0 - p) * mixed);
    const double c = p * shift / norm + (1.0 - p) / static_cast<double>(d);
    return {std::move(sigma), c, p / norm, p};
}

WeakOptimality weak_optimality(const Witness& w) {
    const auto& v = w.validation();
    if (!v.converged) {
        throw Error(ErrorCode::DidNotConverge,
                    "product-vector minimization did not converge; best value " +
                        std::to_string(v.min_product_expectation));
    }
    WeakOptimality out;
    out.min_product_expectation = v.min_product_expectation;
    out.weakly_optimal = v.min_product_expectation <= kTolBlock;
    if (out.weakly_optimal) out.vanishing_vector = v.argmin;
    return out;
}

Witness make_finer(const Witness& w, double delta) {
    const auto& provenance = w.provenance();
    if (!provenance) throw Error(ErrorCode::BadParameter, "make_finer needs a witness built from (sigma, c)");
    if (!(delta > 0.0)) throw Error(ErrorCode::BadParameter, "delta must be > 0");
    const double cmax = provenance->c + w.validation().min_product_expectation;
    const double target = provenance->c + delta;
    if (target > cmax + kTolBlock) {
        throw Error(ErrorCode::ExceedsWeakOptimal,
                    "c + delta = " + std::to_string(target) + " exceeds c_max(sigma) = " + std::to_string(cmax));
    }
    const CMaxResult sigma_cmax{cmax, w.validation().argmin, 0, w.validation().converged, cmax, {}};
    return from_validated(provenance->sigma, target, sigma_cmax);
}

Detection detects(const Witness& w, const BipartiteOperator& state) {
    if (state.dims() != w.dims()) throw Error(ErrorCode::DimensionMismatch, "state and witness dims differ");
    require_psd(state, ErrorCode::NotAState, "state");
    if (!(state.trace() > 0.0)) throw Error(ErrorCode::NotAState, "state has non-positive trace");
    const double value = trace_product(w.op().matrix(), state.matrix());
    return {value < -kTolDetect, value};
}

double korbicz_product_expectation(double a, double b, const QubitAngles& x) {
    const double c1 = std::cos(x.theta1 / 2.0);
    const double s1 = std::sin(x.theta1 / 2.0);
    const double c2 = std::cos(x.theta2 / 2.0);
    const double s2 = std::sin(x.theta2 / 2.0);
    const double norm_terms = c1 * c1 * c2 * c2 + c1 * c1 * s2 * s2 + s1 * s1 * c2 * c2 + s1 * s1 * s2 * s2;
    return 0.5 * (a + b) * norm_terms + (a + b) * c1 * s2 * s1 * c2 * 2.0 * std::cos(x.t1 - x.t2) +
           0.5 * (a - b) * std::cos(x.theta1) * std::cos(x.theta2);
}

}  // namespace ewspa
