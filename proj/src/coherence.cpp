#include "coa/coherence.hpp"

#include <algorithm>
#include <cmath>

namespace coa {

std::string_view to_string(Measure m) noexcept {
    return m == Measure::L1 ? "l1" : "relent";
}

DensityMatrix dephase(const DensityMatrix& rho) {
    const auto diag = rho.diagonal();
    return DensityMatrix::from_diagonal(diag);
}

double c_l1(const DensityMatrix& rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j)
            if (i != j) s += std::abs(rho(i, j));
    return s;
}

double c_rel_ent(const DensityMatrix& rho, const Tolerances& tol) {
    const auto diag = rho.diagonal();
    const double c = shannon_entropy(diag, tol) - von_neumann_entropy(rho, tol);
    if (c < 0.0 && c >= -1e-10) return 0.0;
    return c;
}

double c_l1_pure(const PureState& psi) {
    double sum_abs = 0.0, sum_sq = 0.0;
    for (const auto& a : psi.amps()) {
        sum_abs += std::abs(a);
        sum_sq += std::norm(a);
    }
    return std::max(sum_abs * sum_abs - sum_sq, 0.0);
}

double c_rel_ent_pure(const PureState& psi) {
    double h = 0.0;
    for (const auto& a : psi.amps()) {
        const double p = std::norm(a);
        if (p > 0.0) h -= p * std::log2(p);
    }
    return std::max(h, 0.0);
}

double coherence(const DensityMatrix& rho, Measure m, const Tolerances& tol) {
    return m == Measure::L1 ? c_l1(rho) : c_rel_ent(rho, tol);
}

double coherence(const PureState& psi, Measure m) {
    return m == Measure::L1 ? c_l1_pure(psi) : c_rel_ent_pure(psi);
}

}  // namespace coa
