#pragma once

// Derivative-free search over decompositions of a fixed positive matrix.
//
// A decomposition is held as rows w_k = sqrt(p_k)|psi_k>. Left-multiplying the
// row stack by a unitary leaves sum_k w_k w_k^dagger unchanged, so every move
// is a two-row rotation exp(i theta G) with G a single off-diagonal Hermitian
// generator. Only the two touched rows need re-evaluation.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "coa/decomp.hpp"

namespace coa::detail {

using Rows = std::vector<std::vector<Complex>>;

struct PlaneRotation {
    std::size_t k;
    std::size_t l;
    double c;   // cos theta
    Complex s;  // e^{i phi} sin theta
};

// w_k <- c w_k - conj(s) w_l,  w_l <- s w_k + c w_l
void rotate(std::vector<Complex>& wk, std::vector<Complex>& wl, const PlaneRotation& r);
void rotate_rows(ComplexMatrix& m, const PlaneRotation& r);

PlaneRotation random_rotation(std::size_t m, double step, Rng& rng);

double row_norm2(std::span<const Complex> w);
// (sum_i |w_i|)^2 - ||w||^2 : p C_l1(psi) for w = sqrt(p) psi
double row_l1(std::span<const Complex> w);
// p H(|psi_i|^2) for w = sqrt(p) psi, in bits
double row_rel_ent(std::span<const Complex> w);
double row_value(std::span<const Complex> w, Measure m);

struct SearchOptions {
    std::size_t max_iters = 20000;
    double stall_tol = 1e-8;
    std::size_t stall_iters = 500;
    double initial_step = 0.5;
    double min_step = 1e-9;
};

struct SearchOutcome {
    double value = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

// Hill climbing on sum_k f(w_k). `tag`, when given, receives the same row
// rotations as `rows`; it must have rows.size() rows.
SearchOutcome maximize_rows(Rows& rows, Measure measure, const SearchOptions& opts, Rng& rng,
                            ComplexMatrix* tag = nullptr);

// Pad to `m` rows with zero vectors.
Rows padded_rows(const Ensemble& e, std::size_t m);
// Rows of U * V for the stacked rows V (V padded with zeros to U's size).
Rows mixed_rows(const Rows& v, const ComplexMatrix& u);

}  // namespace coa::detail
