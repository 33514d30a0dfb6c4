#pragma once

#include "coa/assistance.hpp"
#include "coa/decomp.hpp"

namespace coa {

// A state on C^d (x) C^d; A is the major tensor factor.
struct BipartiteState {
    std::size_t local_dim = 0;
    DensityMatrix mat;
};

// sum_ij rho_ij |ii><jj|
BipartiteState to_maximally_correlated(const DensityMatrix& rho);
// sum_i a_i |i>|i>
PureState to_schmidt_form(const PureState& psi);

// Sum of |w| over the negative eigenvalues of the partial transpose on B.
double negativity(const BipartiteState& s, const Tolerances& tol = {});
double negativity(const PureState& psi, std::size_t dim_a, std::size_t dim_b, const Tolerances& tol = {});

// Von Neumann entropy of the A marginal of a pure bipartite state, in bits.
double entanglement_entropy(const PureState& psi, std::size_t dim_a, std::size_t dim_b,
                            const Tolerances& tol = {});

struct NegativityOfAssistance {
    double value = 0.0;
    // sum_k p_k N(psi'_k) evaluated from partial-transpose spectra.
    double direct_value = 0.0;
    AssistanceResult coherence_side;
    // Witness mapped member-wise into Schmidt form.
    Ensemble bipartite_witness;
};

// N_a(rho_mc) through the coherence-side optimizer: half the l1 coherence of
// assistance. The mapped witness is re-evaluated directly and must agree to
// 1e-10, otherwise InvalidEnsemble is thrown.
NegativityOfAssistance negativity_of_assistance_mc(const DensityMatrix& rho, const OptimizerConfig& config = {},
                                                   const Tolerances& tol = {});

// sum_k p_k S(Tr_B |psi_k><psi_k|). Members must have dimension local_dim^2.
double avg_entanglement_entropy(const Ensemble& e, std::size_t local_dim, const Tolerances& tol = {});

// Member-wise Schmidt-form image of an ensemble.
Ensemble to_schmidt_ensemble(const Ensemble& e);

}  // namespace coa
