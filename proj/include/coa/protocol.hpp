#pragma once

#include "coa/assistance.hpp"
#include "coa/decomp.hpp"

// Assisted distillation: Bob holds a purifying system, measures it
// projectively and tells Alice the outcome.
namespace coa {

class Purification {
public:
    Purification() = default;
    // Throws BadDimension unless state.dim() == alice_dim * bob_dim.
    Purification(std::size_t alice_dim, std::size_t bob_dim, PureState state);

    // Also checks Tr_B |Psi><Psi| = source within tol.recon (NotPurification otherwise).
    static Purification validated(std::size_t alice_dim, std::size_t bob_dim, PureState state,
                                  const DensityMatrix& source, const Tolerances& tol = {});

    std::size_t alice_dim() const noexcept { return alice_dim_; }
    std::size_t bob_dim() const noexcept { return bob_dim_; }
    const PureState& state() const noexcept { return state_; }
    ComplexMatrix alice_marginal() const;
    // Unnormalized Alice vector conditioned on Bob's basis state |b>.
    std::vector<Complex> alice_branch(std::size_t b) const;

private:
    std::size_t alice_dim_ = 0;
    std::size_t bob_dim_ = 0;
    PureState state_;
};

// sum_s sqrt(lambda_s) |psi_s>_A |s>_B over the nonzero spectrum.
Purification purify(const DensityMatrix& rho, const Tolerances& tol = {});

// (1/2) sum_i |psi_i>_A |i>_B with |psi_i> = (1/2) sum_j (-1)^{delta_ij} |j>,
// a purification of the maximally mixed 4-dimensional state.
Purification demo_dim4_purification();

class MeasurementBasis {
public:
    MeasurementBasis() = default;
    // Throws NotUnitary unless the vectors are orthonormal and complete
    // within tol.orth.
    explicit MeasurementBasis(std::vector<PureState> vectors, const Tolerances& tol = {});

    static MeasurementBasis computational(std::size_t dim);
    // Basis vectors are the conjugated rows of u.
    static MeasurementBasis from_rows_conj(const ComplexMatrix& u, const Tolerances& tol = {});

    std::size_t dim() const noexcept { return vectors_.size(); }
    std::span<const PureState> vectors() const noexcept { return vectors_; }

private:
    std::vector<PureState> vectors_;
};

// Outcome k has weight ||(I (x) <b_k|)|Psi>||^2; zero-weight outcomes are dropped.
Ensemble measure_bob(const Purification& p, const MeasurementBasis& basis);

enum class BasisStrategy { Computational, HaarSearch };

struct ProtocolReport {
    double initial_l1 = 0.0;
    double final_average_l1 = 0.0;
    double gain = 0.0;
    Ensemble ensemble;
    MeasurementBasis basis;
};

ProtocolReport run_protocol(const DensityMatrix& rho, BasisStrategy strategy, const OptimizerConfig& config = {},
                            const Tolerances& tol = {});
// Same, with a caller-supplied purification of rho.
ProtocolReport run_protocol(const DensityMatrix& rho, const Purification& purification, BasisStrategy strategy,
                            const OptimizerConfig& config = {}, const Tolerances& tol = {});

}  // namespace coa
