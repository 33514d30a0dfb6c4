#include "coa/entanglement.hpp"

#include <cmath>
#include <sstream>

namespace coa {

BipartiteState to_maximally_correlated(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    ComplexMatrix mc(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) mc(i * d + i, j * d + j) = rho(i, j);
    return {d, DensityMatrix(std::move(mc))};
}

PureState to_schmidt_form(const PureState& psi) {
    const std::size_t d = psi.dim();
    std::vector<Complex> amps(d * d);
    for (std::size_t i = 0; i < d; ++i) amps[i * d + i] = psi[i];
    return PureState::normalized(std::move(amps));
}

namespace {

double negative_part(const ComplexMatrix& pt, const Tolerances& tol) {
    double n = 0.0;
    for (double w : eigh(pt, tol.herm).values)
        if (w < 0.0) n -= w;
    return n;
}

}  // namespace

double negativity(const BipartiteState& s, const Tolerances& tol) {
    return negative_part(partial_transpose(s.mat.mat(), s.local_dim, s.local_dim, Subsystem::B), tol);
}

double negativity(const PureState& psi, std::size_t dim_a, std::size_t dim_b, const Tolerances& tol) {
    return negative_part(partial_transpose(psi.projector(), dim_a, dim_b, Subsystem::B), tol);
}

double entanglement_entropy(const PureState& psi, std::size_t dim_a, std::size_t dim_b, const Tolerances& tol) {
    const auto marginal = partial_trace(psi.projector(), dim_a, dim_b, Subsystem::B);
    return von_neumann_entropy(DensityMatrix(marginal, tol), tol);
}

Ensemble to_schmidt_ensemble(const Ensemble& e) {
    std::vector<EnsembleMember> members;
    members.reserve(e.size());
    for (const auto& m : e.members()) members.push_back({m.weight, to_schmidt_form(m.state)});
    return Ensemble(std::move(members));
}

NegativityOfAssistance negativity_of_assistance_mc(const DensityMatrix& rho, const OptimizerConfig& config,
                                                   const Tolerances& tol) {
    NegativityOfAssistance out;
    out.coherence_side = optimize_ca(rho, Measure::L1, config, tol);
    out.value = 0.5 * out.coherence_side.lower_bound;
    out.bipartite_witness = to_schmidt_ensemble(out.coherence_side.witness);
    const std::size_t d = rho.dim();
    for (const auto& m : out.bipartite_witness.members()) out.direct_value += m.weight * negativity(m.state, d, d, tol);
    if (std::abs(out.direct_value - out.value) > 1e-10) {
        std::ostringstream os;
        os.precision(17);
        os << "Schmidt-form re-evaluation gives " << out.direct_value << ", optimizer gives " << out.value;
        throw Error(ErrorKind::InvalidEnsemble, os.str());
    }
    return out;
}

double avg_entanglement_entropy(const Ensemble& e, std::size_t local_dim, const Tolerances& tol) {
    double s = 0.0;
    for (const auto& m : e.members()) {
        if (m.state.dim() != local_dim * local_dim) {
            throw Error(ErrorKind::BadDimension, "member of dimension " + std::to_string(m.state.dim()) +
                                                     " is not on a " + std::to_string(local_dim) + "x" +
                                                     std::to_string(local_dim) + " space");
        }
        s += m.weight * entanglement_entropy(m.state, local_dim, local_dim, tol);
    }
    return s;
}

}  // namespace coa
