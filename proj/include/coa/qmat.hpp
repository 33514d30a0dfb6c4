#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "coa/errors.hpp"

namespace coa {

using Complex = std::complex<double>;

// Numerical tolerances shared by every validator. The library itself never
// reads the environment; `from_env` is for front ends.
struct Tolerances {
    double herm = 1e-9;
    double trace = 1e-9;
    double psd = 1e-9;
    double recon = 1e-8;
    double orth = 1e-8;
    double norm = 1e-10;

    // "default", "strict" (every tolerance /100) or "loose" (every tolerance x100).
    static Tolerances profile(const std::string& name);
    // Reads COA_TOLERANCE_PROFILE; unset or empty means "default".
    static Tolerances from_env();
};

inline constexpr const char* kToleranceEnvVar = "COA_TOLERANCE_PROFILE";

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<const Complex> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
    std::vector<Complex> column(std::size_t j) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// Largest entrywise modulus of m - m^dagger.
double hermiticity_defect(const ComplexMatrix& m);

class PureState {
public:
    PureState() = default;
    // Throws NotNormalized if the squared norm differs from 1 by more than tol.norm.
    explicit PureState(std::vector<Complex> amps, const Tolerances& tol = {});
    // Rescales to unit norm; throws NotNormalized for the zero vector.
    static PureState normalized(std::vector<Complex> amps);
    static PureState basis(std::size_t dim, std::size_t index);
    // Equal-weight, zero-phase superposition of all basis states.
    static PureState maximally_coherent(std::size_t dim);

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amps() const noexcept { return amps_; }
    const Complex& operator[](std::size_t i) const { return amps_[i]; }
    ComplexMatrix projector() const;

private:
    std::vector<Complex> amps_;
};

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);

class DensityMatrix {
public:
    DensityMatrix() = default;
    // Validates square shape, hermiticity, unit trace and positivity.
    explicit DensityMatrix(ComplexMatrix mat, const Tolerances& tol = {});

    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix from_diagonal(std::span<const double> probs, const Tolerances& tol = {});

    std::size_t dim() const noexcept { return mat_.rows(); }
    const ComplexMatrix& mat() const noexcept { return mat_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
    std::vector<double> diagonal() const;
    double purity() const;

private:
    struct Trusted {};
    DensityMatrix(ComplexMatrix mat, Trusted) : mat_(std::move(mat)) {}

    ComplexMatrix mat_;
};

// Eigen-decomposition of a Hermitian matrix. Eigenvalues are descending and
// eigenvectors are the columns of `vectors`.
struct EighResult {
    std::vector<double> values;
    ComplexMatrix vectors;
};

EighResult eigh(const ComplexMatrix& m, double herm_tol = Tolerances{}.herm);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<PureState> eigenvectors;
};

// Eigenvalues within tol.psd below zero are clamped to zero.
SpectralDecomposition spectral_decomposition(const DensityMatrix& rho, const Tolerances& tol = {});

// Entropies are in bits.
double shannon_entropy(std::span<const double> p, const Tolerances& tol = {});
double von_neumann_entropy(const DensityMatrix& rho, const Tolerances& tol = {});

enum class Subsystem { A, B };

// Bipartite index convention: row/col index (i, j) -> i * dim_b + j, so the
// A factor is the major one.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which);
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem traced);
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace coa
