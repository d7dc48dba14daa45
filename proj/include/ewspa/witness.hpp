#pragma once

// Entanglement witnesses of the form W = sigma - c I.
//
// A Hermitian W is accepted as a witness when it has a negative eigenvalue
// and is block positive: <a b|W|a b> >= 0 for all unit product vectors, which
// is checked numerically through the product-vector infimum (c_max).

#include <cstdint>
#include <optional>
#include <vector>

#include "ewspa/linalg.hpp"

namespace ewspa {

/// Slack for block positivity and weak optimality. c_max is a nonconvex
/// estimate, so this is looser than the spectral tolerances.
inline constexpr double kTolBlock = 1e-7;
/// tr(W rho) < -kTolDetect counts as detection.
inline constexpr double kTolDetect = 1e-10;

struct ProductVector {
    ComplexVector a;
    ComplexVector b;

    /// Throws NotNormalized unless both factors are unit within 1e-10.
    ProductVector(ComplexVector a, ComplexVector b);

    ComplexVector joint() const { return kron(a, b); }
    Dims dims() const { return {static_cast<std::size_t>(a.size()), static_cast<std::size_t>(b.size())}; }
};

/// Qubit parametrization cos(theta/2)|0> + e^{it} sin(theta/2)|1> per factor.
struct QubitAngles {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;

    ProductVector to_product_vector() const;
};

struct CMaxOptions {
    int restarts = 64;
    std::uint64_t seed = 0x5EED;
    /// A run stops once one full alternation changes the objective by less than this.
    double tolerance = 1e-12;
    int max_iterations = 5000;
    /// Also start from every computational basis product vector |ij>.
    bool basis_starts = true;
    /// Keep the objective after every half step of every run.
    bool record_traces = false;
};

struct CMaxResult {
    double value;
    ProductVector argmin;
    int starts_used;
    bool converged;
    /// min_ij <ij|sigma|ij>, an upper bound attained by product vectors.
    double certified_upper_bound;
    std::vector<std::vector<double>> traces;
};

/// Estimates inf <a b|sigma|a b> over unit product vectors by multistart
/// see-saw: with one factor fixed the objective is a Hermitian form in the
/// other, minimized exactly by its lowest eigenvector.
///
/// Works for any Hermitian operator, not only states. Non-convergence is
/// reported through `converged`, never thrown.
CMaxResult c_max(const BipartiteOperator& sigma, const CMaxOptions& options = {});

/// <a b|o|a b> with o viewed as a form on the first factor for fixed b.
ComplexMatrix conditioned_on_b(const BipartiteOperator& o, const ComplexVector& b);
ComplexMatrix conditioned_on_a(const BipartiteOperator& o, const ComplexVector& a);

/// Radius of the Frobenius ball around I/d made of separable states.
double separable_ball_radius(std::size_t total_dim);
/// True when rho / tr(rho) lies in that ball.
bool in_separable_ball(const BipartiteOperator& rho);

struct Provenance {
    BipartiteOperator sigma;
    double c;
    bool ball_certified;
};

struct WitnessValidation {
    double min_eigenvalue;
    double min_product_expectation;
    ProductVector argmin;
    bool converged;
};

class Witness {
public:
    /// Validates an arbitrary Hermitian operator. Throws NotHermitian,
    /// NotAWitness (no negative eigenvalue) or NotBlockPositive.
    static Witness validate(const BipartiteOperator& op, const CMaxOptions& options = {});

    const BipartiteOperator& op() const { return op_; }
    Dims dims() const { return op_.dims(); }
    const std::optional<Provenance>& provenance() const { return provenance_; }
    const WitnessValidation& validation() const { return validation_; }

private:
    Witness(BipartiteOperator op, std::optional<Provenance> provenance, WitnessValidation validation)
        : op_(std::move(op)), provenance_(std::move(provenance)), validation_(std::move(validation)) {}

    friend Witness from_separable(const BipartiteOperator&, double, const CMaxOptions&);
    friend Witness from_validated(const BipartiteOperator&, double, const CMaxResult&);

    BipartiteOperator op_;
    std::optional<Provenance> provenance_;
    WitnessValidation validation_;
};

/// W = sigma - c I. Requires sigma PSD (1e-10) and lambda_min(sigma) < c <= c_max(sigma) + kTolBlock.
Witness from_separable(const BipartiteOperator& sigma, double c, const CMaxOptions& options = {});

/// Same as from_separable but reuses an existing c_max(sigma) estimate.
Witness from_validated(const BipartiteOperator& sigma, double c, const CMaxResult& sigma_cmax);

/// Rewrites a witness as scale * w = sigma - c I with sigma a trace-one state
/// certified separable by the ball around I/d.
struct DecomposedForm {
    BipartiteOperator sigma;
    double c;
    double scale;
    /// Weight of the (normalized) w + |lambda_min| I component in sigma.
    double mixing_p;
};

DecomposedForm decompose_form(const BipartiteOperator& w, const CMaxOptions& options = {});

struct WeakOptimality {
    bool weakly_optimal = false;
    double min_product_expectation = 0.0;
    std::optional<ProductVector> vanishing_vector;
};

/// Throws DidNotConverge when the stored c_max estimate was not converged.
WeakOptimality weak_optimality(const Witness& w);

/// sigma - (c + delta) I; throws ExceedsWeakOptimal past c_max(sigma).
Witness make_finer(const Witness& w, double delta);

struct Detection {
    bool detected = false;
    double value = 0.0;
};

/// tr(W state). Throws NotAState unless state is PSD with positive trace.
Detection detects(const Witness& w, const BipartiteOperator& state);

/// Closed-form <a b|W(a,b)|a b> for the two-qubit family
/// W = a(|00><00| + |11><11|) + b(|01><01| + |10><10|) + (a+b)(|01><10| + |10><01|).
double korbicz_product_expectation(double a, double b, const QubitAngles& angles);

}  // namespace ewspa
