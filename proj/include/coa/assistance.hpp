#pragma once

#include <cstdint>
#include <optional>

#include "coa/coherence.hpp"
#include "coa/decomp.hpp"

namespace coa {

inline constexpr std::uint64_t kDefaultSeed = 20190611;
// Geometric "not parallel" threshold on 2x2 subvector determinants.
inline constexpr double kParTol = 1e-9;
inline constexpr double kClassTol = 1e-9;
inline constexpr double kPurityTol = 1e-9;
inline constexpr double kSatTol = 1e-6;
inline constexpr std::size_t kDefaultSaturationBudget = 50000;

struct OptimizerConfig {
    std::size_t restarts = 20;
    // 0 selects dim^2 members.
    std::size_t ensemble_size = 0;
    std::size_t max_iters = 20000;
    double stall_tol = 1e-8;
    std::size_t stall_iters = 500;
    std::uint64_t seed = kDefaultSeed;
    // Worker threads for restarts; results do not depend on it.
    std::size_t jobs = 1;
    // Iteration budget of the equal-diagonal seed used for qutrits.
    std::size_t seed_budget = kDefaultSaturationBudget;
};

struct AssistanceResult {
    Measure measure = Measure::L1;
    // Best average coherence found; for closed forms, the closed-form value.
    double lower_bound = 0.0;
    Ensemble witness;
    // sum_{i!=j} sqrt(rho_ii rho_jj) for L1, S(dephase(rho)) for relative entropy.
    double upper_bound = 0.0;
    // The true value is known: pure input, or dimension <= 3.
    bool exact = false;
    std::size_t restarts_used = 0;
    bool converged = false;
    // Equal-diagonal residual of the witness, when one was computed.
    std::optional<double> residual;
};

double upper_bound_l1(const DensityMatrix& rho);
double upper_bound_rel_ent(const DensityMatrix& rho, const Tolerances& tol = {});
double upper_bound(const DensityMatrix& rho, Measure m, const Tolerances& tol = {});

// Closed form for dimension <= 3. Throws BadDimension above that.
AssistanceResult analytic_ca_l1(const DensityMatrix& rho, std::size_t budget = kDefaultSaturationBudget,
                                std::uint64_t seed = kDefaultSeed, const Tolerances& tol = {});

// Multi-start local search over the mixing unitary. Restart 0 starts from the
// closed-form qubit decomposition or an equal-diagonal search (qutrits) when
// applicable, the next from the spectral ensemble, the rest from Haar-random
// remixes of it.
AssistanceResult optimize_ca(const DensityMatrix& rho, Measure measure, const OptimizerConfig& config = {},
                             const Tolerances& tol = {});

struct SaturationResult {
    bool saturated = false;
    double residual = 0.0;
    Ensemble ensemble;
    double average_l1 = 0.0;
};

SaturationResult saturation_check(const DensityMatrix& rho, std::size_t budget = kDefaultSaturationBudget,
                                  std::uint64_t seed = kDefaultSeed, double sat_tol = kSatTol,
                                  const Tolerances& tol = {});

// A decomposition of a mixed state whose average l1 coherence is strictly
// larger than that of the state itself. Throws NotMixed for pure input and
// NoCoordinatePair when no usable eigenvector pair exists.
Ensemble strict_increase_ensemble(const DensityMatrix& rho, const Tolerances& tol = {});

enum class StateClassKind { S1PureIncoherent, S2PureCoherent, S3Mixed };

std::string_view to_string(StateClassKind k) noexcept;

struct StateClass {
    StateClassKind kind = StateClassKind::S1PureIncoherent;
    double accessible_l1 = 0.0;
    double accessible_rel_ent = 0.0;
};

StateClass classify(const DensityMatrix& rho, const OptimizerConfig& config = {}, const Tolerances& tol = {});
// Same classification from already computed coherences of assistance.
StateClass classify(const DensityMatrix& rho, const AssistanceResult& l1, const AssistanceResult& rel_ent,
                    const Tolerances& tol = {});

}  // namespace coa
