#pragma once

// core dense complex linear algebra: validated matrix types, spectral
// calculus, tensor-factor bookkeeping, seeded random sampling

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "traceforge/rng.hpp"

namespace traceforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
constexpr double hermitize_rel = 1e-12;
constexpr double psd_rel = 1e-10;
constexpr double eig_floor_rel = 1e-12;
constexpr double spectral_recon = 1e-10;
constexpr double tie_rel = 1e-7;
constexpr double support_defect = 1e-8;
constexpr double pinv_identity = 1e-9;
} // namespace tol

//---------------------------------------------------------------- errors

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// input outside an operation's mathematical domain
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// malformed parameter (bad exponent, bad dims request, ...)
struct ParamError : Error {
    explicit ParamError(const std::string& msg) : Error(msg) {}
};

// incompatible shapes
struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

// eigensolver did not converge
struct SolverError : Error {
    explicit SolverError(const std::string& msg) : Error(msg) {}
};

//---------------------------------------------------------------- types

// verifies the hermiticity defect and stores (A + A*)/2 exactly
Matrix hermitize(const Matrix& a, double rel_tol = tol::hermitize_rel);

class HermitianMatrix {
public:
    explicit HermitianMatrix(const Matrix& a) : m_(hermitize(a)) {}
    int dim() const { return int(m_.rows()); }
    const Matrix& mat() const { return m_; }

private:
    Matrix m_;
};

struct SpectralDecomposition {
    RealVector eigenvalues; // ascending
    Matrix eigenvectors;    // unitary, columns match eigenvalues

    Matrix reconstruct() const {
        return eigenvectors * eigenvalues.asDiagonal() *
               eigenvectors.adjoint();
    }
};

SpectralDecomposition spectral_decompose(const Matrix& hermitian);

class PsdMatrix {
public:
    explicit PsdMatrix(const Matrix& a, double psd_tol = tol::psd_rel);

    int dim() const { return int(m_.rows()); }
    const Matrix& mat() const { return m_; }
    const RealVector& eigenvalues() const { return spec_.eigenvalues; }
    const Matrix& eigenvectors() const { return spec_.eigenvectors; }
    const SpectralDecomposition& spectral() const { return spec_; }
    int support_rank() const { return support_rank_; }
    double eig_floor() const { return eig_floor_; }
    double trace() const { return spec_.eigenvalues.sum(); }

private:
    Matrix m_;
    SpectralDecomposition spec_;
    int support_rank_ = 0;
    double eig_floor_ = 0.0; // smallest above-support-cutoff eigenvalue
};

class DensityMatrix {
public:
    explicit DensityMatrix(const Matrix& a);
    explicit DensityMatrix(const PsdMatrix& p);

    int dim() const { return psd_.dim(); }
    const Matrix& mat() const { return psd_.mat(); }
    const PsdMatrix& psd() const { return psd_; }

private:
    static PsdMatrix normalize(const PsdMatrix& p);
    PsdMatrix psd_;
};

struct FactorDims {
    std::vector<int> dims;

    int total() const {
        int n = 1;
        for (int d : dims) n *= d;
        return n;
    }
    int count() const { return int(dims.size()); }
};

//---------------------------------------------------------------- spectral calculus

enum class FunctionDomain {
    all_reals,
    positive_only,          // rejects eigenvalues at or below the floor
    nonneg_with_zero_rule,  // clamps |eig| <= floor to exactly 0
};

Matrix matrix_function(const Matrix& hermitian,
                       const std::function<double(double)>& f,
                       FunctionDomain domain);
Matrix matrix_function(const SpectralDecomposition& spec,
                       const std::function<double(double)>& f,
                       FunctionDomain domain);

// scalar power with the zero-eigenvalue rule 0^t = 0 (t > 0), 0^0 = 1
double pow_entry(double x, double t);

// fractional/negative powers of a PSD matrix; negative exponents require
// strictly positive spectrum
Matrix power_psd(const PsdMatrix& p, double t);
Matrix power_psd(const Matrix& psd, double t);

Matrix sqrt_psd(const PsdMatrix& p);
Matrix exp_herm(const Matrix& hermitian);
Matrix log_pd(const Matrix& positive_definite);
Matrix log_pd(const PsdMatrix& p);
Matrix inv_pd(const Matrix& positive_definite);

// x log x with the zero rule, summed over the spectrum: tr[f(P)]
double trace_xlogx(const PsdMatrix& p);

PsdMatrix pseudo_inverse(const PsdMatrix& p);

double schatten_norm(const Matrix& a, double p); // p >= 1 or infinity

double min_eig(const Matrix& hermitian);
double max_eig(const Matrix& hermitian);
double op_norm(const Matrix& a); // largest singular value

//---------------------------------------------------------------- tensor structure

// first factor is the slow index: kron(A, B) has blocks A_ij * B
Matrix kron(const Matrix& a, const Matrix& b);

// trace out the listed factors (0-based), keeping the rest in order
Matrix partial_trace(const Matrix& a, const FactorDims& dims,
                     const std::vector<int>& traced_out);

// embed X (indexed by the kept factors, ascending) with identities elsewhere
Matrix embed_identity(const Matrix& x, const FactorDims& dims,
                      const std::vector<int>& kept);

//---------------------------------------------------------------- sampling

enum class RandomKind {
    haar_unitary,
    psd,
    positive_definite,
    density,
    hermitian,
    traceless_hermitian,
    general,
};

Matrix sample_random(RandomKind kind, int n, std::optional<int> rank, Rng& rng);
Matrix sample_random(RandomKind kind, int n, std::optional<int> rank,
                     std::uint64_t seed);

Matrix random_ginibre(int rows, int cols, Rng& rng);
Matrix random_unitary(int n, Rng& rng);
Matrix random_hermitian(int n, Rng& rng);
Matrix random_traceless_hermitian(int n, Rng& rng);
Matrix random_psd(int n, int rank, Rng& rng);
Matrix random_pd(int n, Rng& rng);
Matrix random_density(int n, Rng& rng);
Matrix random_density_rank(int n, int rank, Rng& rng);
Vector random_unit_vector(int n, Rng& rng);

// haar basis with prescribed spectrum; eigs drawn uniform in [lo, hi],
// rank-deficient inputs get exact zeros
Matrix sample_spectral_psd(int n, int rank, double lo, double hi, Rng& rng);
Matrix sample_spectral_pd(int n, Rng& rng, double lo = 0.02, double hi = 1.0);
Matrix sample_spectral_density(int n, int rank, Rng& rng, double lo = 0.02);

} // namespace traceforge
