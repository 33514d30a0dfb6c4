#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coa/coherence.hpp"
#include "coa/qmat.hpp"

namespace coa {

using Rng = std::mt19937_64;

// Members with weight at or below this are dropped; renormalizing them is meaningless.
inline constexpr double kWeightCut = 1e-12;
// Eigenvalues at or below this do not contribute an ensemble member.
inline constexpr double kSpectralCut = 1e-12;
// Diagonal entries at or below this count as zero in the qubit decomposition.
inline constexpr double kDiagCut = 1e-12;
inline constexpr double kUnitTol = 1e-8;

struct EnsembleMember {
    double weight;
    PureState state;
};

// A weighted list of pure states. Weights are non-negative; whether they sum
// to one is checked by `assemble`, so the same type also carries
// decompositions of unnormalized positive matrices.
class Ensemble {
public:
    Ensemble() = default;
    explicit Ensemble(std::vector<EnsembleMember> members);

    // Members from unnormalized vectors sqrt(p_k)|psi_k>; vectors with squared
    // norm at or below `weight_cut` are dropped.
    static Ensemble from_scaled_vectors(const std::vector<std::vector<Complex>>& vectors,
                                        double weight_cut = kWeightCut);

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    std::size_t dim() const noexcept { return members_.empty() ? 0 : members_.front().state.dim(); }
    std::span<const EnsembleMember> members() const noexcept { return members_; }
    const EnsembleMember& operator[](std::size_t k) const { return members_[k]; }

    double total_weight() const;
    // sqrt(p_k)|psi_k>, one vector per member.
    std::vector<std::vector<Complex>> scaled_vectors() const;
    // sum_k p_k C(psi_k)
    double average_coherence(Measure m) const;

private:
    std::vector<EnsembleMember> members_;
};

class MixingUnitary {
public:
    MixingUnitary() = default;
    // Throws NotUnitary unless U^dagger U = I within `unit_tol`.
    explicit MixingUnitary(ComplexMatrix u, double unit_tol = kUnitTol);

    std::size_t size() const noexcept { return u_.rows(); }
    const ComplexMatrix& mat() const noexcept { return u_; }
    const Complex& operator()(std::size_t k, std::size_t l) const { return u_(k, l); }

private:
    ComplexMatrix u_;
};

// Largest entrywise modulus of U^dagger U - I.
double unitarity_defect(const ComplexMatrix& u);

// sum_k p_k |psi_k><psi_k| without any normalization check.
ComplexMatrix assemble_matrix(const Ensemble& e);
// Throws InvalidEnsemble if the weights do not sum to one.
DensityMatrix assemble(const Ensemble& e, const Tolerances& tol = {});

// Eigenpairs with eigenvalue above kSpectralCut, weights descending.
Ensemble spectral_ensemble(const DensityMatrix& rho, const Tolerances& tol = {});

// sqrt(p_k)|phi_k> = sum_l U_kl sqrt(lambda_l)|psi_l>, with `e` zero-padded to
// u.size() members before mixing.
Ensemble mix(const Ensemble& e, const MixingUnitary& u, double weight_cut = kWeightCut);

// Explicit two-member decomposition of a 2x2 positive semidefinite matrix with
// both member diagonals proportional to the diagonal of `a`. Weights sum to
// tr(a), so the input need not be normalized.
Ensemble lemma1_decompose(const ComplexMatrix& a, const Tolerances& tol = {});

// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal
// made positive.
MixingUnitary haar_unitary(std::size_t m, Rng& rng);

struct EqualDiagonalResult {
    Ensemble ensemble;
    // max_k || diag(psi_k psi_k^dagger) - diag(rho) ||_inf
    double residual;
    // Residual after every accepted step of the final search, oldest first.
    std::vector<double> accepted_residuals;
};

// Worst-member deviation of the normalized member diagonals from diag(rho).
double diagonal_residual(const Ensemble& e, std::span<const double> target);

// Best-effort search for a decomposition whose members all share the diagonal
// of rho. Never claims success; the residual is the evidence.
EqualDiagonalResult equal_diagonal_search(const DensityMatrix& rho, std::size_t ensemble_size,
                                          std::size_t budget, std::uint64_t seed,
                                          const Tolerances& tol = {});

}  // namespace coa
