#include "ewspa/spa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ewspa/errors.hpp"

namespace ewspa {

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
    case Outcome::Separable: return "Separable";
    case Outcome::Entangled: return "Entangled";
    case Outcome::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string_view to_string(Certificate certificate) {
    switch (certificate) {
    case Certificate::PptAndLowDim: return "PptAndLowDim";
    case Certificate::NptEigenvalue: return "NptEigenvalue";
    case Certificate::PptHighDim: return "PptHighDim";
    case Certificate::SeparableBall: return "SeparableBall";
    }
    return "?";
}

std::string_view to_string(EntanglementBreaking eb) {
    switch (eb) {
    case EntanglementBreaking::Yes: return "yes";
    case EntanglementBreaking::No: return "no";
    case EntanglementBreaking::Unknown: return "unknown";
    }
    return "?";
}

std::string_view to_string(OptimalityClaim claim) {
    switch (claim) {
    case OptimalityClaim::None: return "none";
    case OptimalityClaim::WeaklyOptimal: return "weak";
    case OptimalityClaim::Optimal: return "optimal";
    case OptimalityClaim::OptimalNondecomposable: return "onew";
    }
    return "?";
}

std::string_view to_string(ViolationRule rule) {
    switch (rule) {
    case ViolationRule::NptOptimal: return "NptOptimal";
    case ViolationRule::OnewSpectralGap: return "OnewSpectralGap";
    }
    return "?";
}

std::string_view to_string(WitnessSide side) {
    return side == WitnessSide::Witness ? "W" : "W^T_B";
}

std::string_view to_string(ConjectureStatus status) {
    switch (status) {
    case ConjectureStatus::NotApplicable: return "NotApplicable";
    case ConjectureStatus::Consistent: return "Consistent";
    case ConjectureStatus::Violated: return "Violated";
    case ConjectureStatus::Undetermined: return "Undetermined";
    }
    return "?";
}

OptimalityClaim parse_claim(std::string_view text) {
    if (text == "none" || text == "None") return OptimalityClaim::None;
    if (text == "weak" || text == "WeaklyOptimal") return OptimalityClaim::WeaklyOptimal;
    if (text == "optimal" || text == "Optimal") return OptimalityClaim::Optimal;
    if (text == "onew" || text == "OptimalNondecomposable") return OptimalityClaim::OptimalNondecomposable;
    throw Error(ErrorCode::BadParameter, "unknown optimality claim '" + std::string(text) + "'");
}

EntanglementBreaking eb_from(const SeparabilityVerdict& verdict) {
    switch (verdict.outcome) {
    case Outcome::Separable: return EntanglementBreaking::Yes;
    case Outcome::Entangled: return EntanglementBreaking::No;
    case Outcome::Inconclusive: return EntanglementBreaking::Unknown;
    }
    return EntanglementBreaking::Unknown;
}

SeparabilityVerdict separability_verdict(const BipartiteOperator& o) {
    const Spectrum spectrum = hermitian_eig(o);
    const double norm = std::max(std::abs(spectrum.min()), std::abs(spectrum.max()));
    const double scale = std::max(1.0, norm);
    if (spectrum.min() < -kTolPpt * scale) {
        throw Error(ErrorCode::NotAState, "operator has negative eigenvalue " + std::to_string(spectrum.min()));
    }
    const double lambda_pt = min_eigenvalue(partial_transpose(o, Subsystem::B));
    if (lambda_pt < -kTolPpt * scale) return {Outcome::Entangled, Certificate::NptEigenvalue, lambda_pt};
    if (o.side() <= kPptExactMaxDim) return {Outcome::Separable, Certificate::PptAndLowDim, lambda_pt};
    if (in_separable_ball(o)) return {Outcome::Separable, Certificate::SeparableBall, lambda_pt};
    return {Outcome::Inconclusive, Certificate::PptHighDim, lambda_pt};
}

double noise_from_shift(double shift, std::size_t total_dim) {
    const double sd = shift * static_cast<double>(total_dim);
    return sd / (1.0 + sd);
}

double shift_from_noise(double noise, std::size_t total_dim) {
    if (!(noise >= 0.0 && noise < 1.0)) throw Error(ErrorCode::BadParameter, "noise weight must lie in [0, 1)");
    return noise / ((1.0 - noise) * static_cast<double>(total_dim));
}

SpaReport spa_witness(const Witness& w) {
    const double lambda = min_eigenvalue(w.op());
    const double shift = std::max(0.0, -lambda);
    BipartiteOperator approximated = w.op().shifted(shift);
    const SeparabilityVerdict verdict = separability_verdict(approximated);
    return {w, shift, noise_from_shift(shift, w.op().side()), std::move(approximated), verdict, eb_from(verdict)};
}

BipartiteOperator spa_of_state_form(const BipartiteOperator& sigma, double c, const CMaxOptions& options) {
    (void)from_separable(sigma, c, options);
    return sigma.shifted(-min_eigenvalue(sigma));
}

SpectralNptCheck spectral_npt_check(const Witness& w) {
    const double lw = min_eigenvalue(w.op());
    const double lwpt = min_eigenvalue(partial_transpose(w.op(), Subsystem::B));
    return {lwpt < lw - 1e-12, lw, lwpt};
}

Witness pt_witness(const Witness& w, const CMaxOptions& options) {
    const BipartiteOperator wpt = partial_transpose(w.op(), Subsystem::B);
    const double lambda = min_eigenvalue(wpt);
    if (lambda >= -kHermitianTol * std::max(1.0, wpt.max_abs())) {
        throw Error(ErrorCode::PtPositive,
                    "partial transpose is positive semidefinite (lambda_min = " + std::to_string(lambda) + ")");
    }
    return Witness::validate(wpt, options);
}

ComplementarySpaReport complementary_spa_check(const Witness& w, const CMaxOptions& options) {
    if (w.op().side() > kPptExactMaxDim) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "complementary SPA guarantee needs d_A*d_B <= 6, got " + std::to_string(w.op().side()));
    }
    ComplementarySpaReport report{spa_witness(w).verdict, std::nullopt, false, false};
    try {
        report.spa_wpt = spa_witness(pt_witness(w, options)).verdict;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::PtPositive) throw;
        report.pt_positive = true;
    }
    report.one_separable = report.spa_w.outcome == Outcome::Separable ||
                           (report.spa_wpt && report.spa_wpt->outcome == Outcome::Separable);
    return report;
}

ConjectureReport conjecture_check(const Witness& w, OptimalityClaim claim) {
    SpaReport spa = spa_witness(w);
    const SpectralNptCheck spectra = spectral_npt_check(w);

    ConjectureReport report{claim, spa, spectra.min_eig_w, spectra.min_eig_wpt, {}, std::nullopt,
                            ConjectureStatus::NotApplicable};
    try {
        report.weak = weak_optimality(w);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DidNotConverge) throw;
    }

    const bool optimal = claim == OptimalityClaim::Optimal || claim == OptimalityClaim::OptimalNondecomposable;
    if (optimal && spa.verdict.outcome == Outcome::Entangled)
        report.certificates.push_back({ViolationRule::NptOptimal, WitnessSide::Witness, spa.verdict});

    if (claim == OptimalityClaim::OptimalNondecomposable &&
        std::abs(spectra.min_eig_wpt - spectra.min_eig_w) > 1e-9) {
        // The side with the larger lambda_min has an NPT SPA: for X in {W, W^T_B},
        // SPA(X)^T_B = X^T_B - lambda_min(X) I.
        if (spectra.min_eig_wpt < spectra.min_eig_w) {
            report.certificates.push_back({ViolationRule::OnewSpectralGap, WitnessSide::Witness, spa.verdict});
        } else {
            const BipartiteOperator wpt = partial_transpose(w.op(), Subsystem::B);
            const SeparabilityVerdict verdict = separability_verdict(wpt.shifted(-spectra.min_eig_wpt));
            report.certificates.push_back({ViolationRule::OnewSpectralGap, WitnessSide::PartialTranspose, verdict});
        }
    }

    if (!optimal) {
        report.status = ConjectureStatus::NotApplicable;
    } else if (!report.certificates.empty()) {
        report.status = ConjectureStatus::Violated;
    } else if (spa.verdict.outcome == Outcome::Separable) {
        report.status = ConjectureStatus::Consistent;
    } else {
        report.status = ConjectureStatus::Undetermined;
    }
    return report;
}

}  // namespace ewspa
