#pragma once

// left/right multiplication superoperators, ratio-kernel operator means,
// the logarithm derivative map and its hessian, and monotone metrics

#include <functional>

#include "traceforge/entropy.hpp"
#include "traceforge/linalg.hpp"

namespace traceforge {

struct SuperOperator {
    int n = 0;
    Matrix action; // n^2 x n^2 on column-stacked input

    Matrix apply(const Matrix& k) const;
};

SuperOperator lmul(const Matrix& x);
SuperOperator rmul(const Matrix& x);

// eigen-data of a positive definite pair, kept in a fixed orientation for
// the ratio kernels below
struct PencilSpectrum {
    SpectralDecomposition x; // right factor
    SpectralDecomposition y; // left factor
};

PencilSpectrum pencil(const PsdMatrix& x, const PsdMatrix& y);

// K -> f(R_x L_y^{-1}) L_y K through the mixed-basis kernel
// <v_j| out |u_i> = f(lam_i / mu_j) mu_j <v_j|K|u_i>
Matrix gf_apply(const std::function<double(double)>& f, const PsdMatrix& x,
                const PsdMatrix& y, const Matrix& k);
Matrix gf_inv_apply(const std::function<double(double)>& f, const PsdMatrix& x,
                    const PsdMatrix& y, const Matrix& k);

// real quadratic form tr[K^* (gf_apply)] / tr[K^* (gf_inv_apply)]
double gf_quadratic(const std::function<double(double)>& f, const PsdMatrix& x,
                    const PsdMatrix& y, const Matrix& k);
double gf_inv_quadratic(const std::function<double(double)>& f,
                        const PsdMatrix& x, const PsdMatrix& y,
                        const Matrix& k);

// dense n^2 x n^2 assembly, used to validate the kernel path
SuperOperator gf_superoperator(const std::function<double(double)>& f,
                               const PsdMatrix& x, const PsdMatrix& y);

// derivative of the matrix logarithm: t_map(X, K) = d/dt log(X + tK) at 0,
// equal to the integral of (s+X)^{-1} K (s+X)^{-1}
Matrix t_map(const PsdMatrix& x, const Matrix& k);

// inverse map: derivative of exp at log X, kernel (a-b)/(log a - log b)
Matrix t_inv_map(const PsdMatrix& x, const Matrix& k);

// negated second derivative of the logarithm: -d^2/dt^2 log(X + tK) at 0;
// K must be hermitian
Matrix hess_log(const PsdMatrix& x, const Matrix& k);

// tr[K t_map(X, K)] for hermitian K; nonnegative
double q_form(const PsdMatrix& x, const Matrix& k);

// tr[K rho^{t-1} K rho^{-t}] for traceless hermitian K, positive definite
// density rho, 0 < t < 1
double metric_wyd(const DensityMatrix& rho, const Matrix& k, double t);

// q_form with the same argument validation as metric_wyd
double metric_bkm(const DensityMatrix& rho, const Matrix& k);

// sum over eigenpairs of x(log x - log y) + y - x with geometric overlap
// weights; equals umegaki(x, y) + tr y - tr x on matching support
DivergenceResult donald_entropy(const PsdMatrix& x, const PsdMatrix& y);

} // namespace traceforge
