#pragma once

#include "coa/qmat.hpp"

// Coherence measures relative to the computational basis. A different
// reference basis is handled by conjugating the state before calling in.
namespace coa {

enum class Measure { L1, RelativeEntropy };

std::string_view to_string(Measure m) noexcept;

struct CoherenceValue {
    Measure measure;
    double value;
};

// Keeps the diagonal, zeroes everything else.
DensityMatrix dephase(const DensityMatrix& rho);

// Sum of |rho_ij| over i != j.
double c_l1(const DensityMatrix& rho);

// S(dephase(rho)) - S(rho) in bits. Results in [-1e-10, 0) are reported as 0.
double c_rel_ent(const DensityMatrix& rho, const Tolerances& tol = {});

// (sum_i |a_i|)^2 - 1 evaluated without forming the projector.
double c_l1_pure(const PureState& psi);

// H(|a_i|^2): the relative entropy of coherence of a pure state.
double c_rel_ent_pure(const PureState& psi);

double coherence(const DensityMatrix& rho, Measure m, const Tolerances& tol = {});
double coherence(const PureState& psi, Measure m);

}  // namespace coa
