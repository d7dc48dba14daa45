#pragma once

// Structural physical approximation (SPA) at the operator level:
// W~ = W + s I with the smallest s >= 0 making W~ positive semidefinite,
// equivalently p/d I + (1-p) W with s = p / ((1-p) d).

#include <optional>
#include <string_view>
#include <vector>

#include "ewspa/linalg.hpp"
#include "ewspa/witness.hpp"

namespace ewspa {

/// Partial-transpose eigenvalue threshold, scaled by max(1, ||O||_2).
inline constexpr double kTolPpt = 1e-9;
/// Largest d_A * d_B where PPT implies separability.
inline constexpr std::size_t kPptExactMaxDim = 6;

enum class Outcome { Separable, Entangled, Inconclusive };

enum class Certificate {
    PptAndLowDim,    ///< PPT and d_A d_B <= 6
    NptEigenvalue,   ///< partial transpose has a negative eigenvalue
    PptHighDim,      ///< PPT, dimension too large to conclude
    SeparableBall,   ///< normalized operator within the separable ball around I/d
};

struct SeparabilityVerdict {
    Outcome outcome;
    Certificate certificate;
    /// lambda_min of the partial transpose (the NPT eigenvalue when entangled).
    double min_pt_eigenvalue;
};

enum class EntanglementBreaking { Yes, No, Unknown };

std::string_view to_string(Outcome outcome);
std::string_view to_string(Certificate certificate);
std::string_view to_string(EntanglementBreaking eb);

EntanglementBreaking eb_from(const SeparabilityVerdict& verdict);

/// Throws NotAState when o has an eigenvalue below -kTolPpt * ||o||.
SeparabilityVerdict separability_verdict(const BipartiteOperator& o);

double noise_from_shift(double shift, std::size_t total_dim);
double shift_from_noise(double noise, std::size_t total_dim);

struct SpaReport {
    Witness input;
    double shift_s;
    double noise_p;
    BipartiteOperator approximated;
    SeparabilityVerdict verdict;
    EntanglementBreaking entanglement_breaking;
};

SpaReport spa_witness(const Witness& w);

/// SPA of sigma - c I, which is sigma - lambda_min(sigma) I whatever c is.
BipartiteOperator spa_of_state_form(const BipartiteOperator& sigma, double c, const CMaxOptions& options = {});

/// lambda_min(W^T_B) < lambda_min(W) forces the SPA of W to be NPT in any dimension.
struct SpectralNptCheck {
    bool violating;
    double min_eig_w;
    double min_eig_wpt;
};

SpectralNptCheck spectral_npt_check(const Witness& w);

/// W^T_B as a validated witness. Throws PtPositive when W^T_B is PSD.
Witness pt_witness(const Witness& w, const CMaxOptions& options = {});

/// In d_A d_B <= 6 at least one of SPA(W), SPA(W^T_B) is separable.
struct ComplementarySpaReport {
    SeparabilityVerdict spa_w;
    std::optional<SeparabilityVerdict> spa_wpt;  ///< empty when W^T_B is PSD
    bool pt_positive;
    bool one_separable;
};

/// Throws DimensionTooLarge when d_A d_B > 6.
ComplementarySpaReport complementary_spa_check(const Witness& w, const CMaxOptions& options = {});

enum class OptimalityClaim { None, WeaklyOptimal, Optimal, OptimalNondecomposable };

std::string_view to_string(OptimalityClaim claim);
/// Accepts none, weak, optimal, onew (and the enum spellings).
OptimalityClaim parse_claim(std::string_view text);

enum class ViolationRule {
    NptOptimal,      ///< optimal (claimed) witness whose SPA is entangled
    OnewSpectralGap, ///< ONEW with lambda_min(W^T_B) != lambda_min(W): one of the two SPAs is NPT
};
enum class WitnessSide { Witness, PartialTranspose };

std::string_view to_string(ViolationRule rule);
std::string_view to_string(WitnessSide side);

struct ViolationCertificate {
    ViolationRule rule;
    WitnessSide side;
    /// Verdict on the SPA of the named side.
    SeparabilityVerdict verdict;
};

enum class ConjectureStatus { NotApplicable, Consistent, Violated, Undetermined };
std::string_view to_string(ConjectureStatus status);

struct ConjectureReport {
    OptimalityClaim claim;
    SpaReport spa;
    double min_eig_w;
    double min_eig_wpt;
    std::vector<ViolationCertificate> certificates;
    std::optional<WeakOptimality> weak;  ///< empty when the c_max estimate did not converge
    ConjectureStatus status;
};

/// The optimality claim is caller-supplied metadata and is not verified here.
ConjectureReport conjecture_check(const Witness& w, OptimalityClaim claim);

}  // namespace ewspa
