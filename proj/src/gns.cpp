#include "traceforge/gns.hpp"

#include <algorithm>
#include <cmath>

namespace traceforge {

Matrix SuperOperator::apply(const Matrix& k) const {
    if (k.rows() != n || k.cols() != n)
        throw ShapeError("SuperOperator::apply: dim mismatch");
    Vector v = Eigen::Map<const Vector>(k.data(), k.size());
    Vector w = action * v;
    return Eigen::Map<const Matrix>(w.data(), n, n);
}

SuperOperator lmul(const Matrix& x) {
    if (x.rows() != x.cols()) throw ShapeError("lmul: square input required");
    const int n = int(x.rows());
    return {n, kron(Matrix::Identity(n, n), x)};
}

SuperOperator rmul(const Matrix& x) {
    if (x.rows() != x.cols()) throw ShapeError("rmul: square input required");
    const int n = int(x.rows());
    return {n, kron(x.transpose(), Matrix::Identity(n, n))};
}

namespace {

void require_pd(const PsdMatrix& p, const char* who) {
    double top = p.eigenvalues()[p.dim() - 1];
    if (p.eigenvalues()[0] <= tol::eig_floor_rel * std::max(top, 1e-300))
        throw DomainError(std::string(who) + ": positive definite input "
                          "required, smallest eigenvalue " +
                          std::to_string(p.eigenvalues()[0]));
}

// first divided difference of log, harmonic midpoint at ties
double dd_log(double a, double b) {
    if (std::abs(a - b) < tol::tie_rel * (1.0 + std::abs(a)))
        return 2.0 / (a + b);
    return (std::log(a) - std::log(b)) / (a - b);
}

// first divided difference of exp expressed on the original spectrum:
// (a - b) / (log a - log b), arithmetic midpoint at ties
double dd_exp_at_log(double a, double b) {
    if (std::abs(a - b) < tol::tie_rel * (1.0 + std::abs(a)))
        return 0.5 * (a + b);
    return (a - b) / (std::log(a) - std::log(b));
}

bool near(double a, double b) {
    return std::abs(a - b) < tol::tie_rel * (1.0 + std::abs(a));
}

// derivative of dd_log(a, b) in its first slot, evaluated stably
double dd_log_da(double a, double b) {
    double h = a - b;
    return ((h / a) - (std::log(a) - std::log(b))) / (h * h);
}

// second divided difference of log over (a, b, c); symmetric in a <-> c
double dd2_log(double a, double b, double c) {
    if (near(a, c)) {
        double m = 0.5 * (a + c);
        if (near(m, b)) {
            double mm = (a + b + c) / 3.0;
            return -0.5 / (mm * mm);
        }
        return dd_log_da(m, b);
    }
    return (dd_log(a, b) - dd_log(b, c)) / (a - c);
}

} // namespace

PencilSpectrum pencil(const PsdMatrix& x, const PsdMatrix& y) {
    if (x.dim() != y.dim()) throw ShapeError("pencil: dimension mismatch");
    require_pd(x, "pencil(x)");
    require_pd(y, "pencil(y)");
    return {x.spectral(), y.spectral()};
}

namespace {

Matrix kernel_apply(const PencilSpectrum& ps,
                    const std::function<double(double, double)>& kernel,
                    const Matrix& k) {
    const int n = int(ps.x.eigenvalues.size());
    if (k.rows() != n || k.cols() != n)
        throw ShapeError("kernel_apply: dim mismatch");
    Matrix kt = ps.y.eigenvectors.adjoint() * k * ps.x.eigenvectors;
    Matrix out(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            out(j, i) = kernel(ps.x.eigenvalues[i], ps.y.eigenvalues[j]) *
                        kt(j, i);
    return ps.y.eigenvectors * out * ps.x.eigenvectors.adjoint();
}

} // namespace

Matrix gf_apply(const std::function<double(double)>& f, const PsdMatrix& x,
                const PsdMatrix& y, const Matrix& k) {
    PencilSpectrum ps = pencil(x, y);
    return kernel_apply(
        ps, [&f](double lam, double mu) { return f(lam / mu) * mu; }, k);
}

Matrix gf_inv_apply(const std::function<double(double)>& f, const PsdMatrix& x,
                    const PsdMatrix& y, const Matrix& k) {
    PencilSpectrum ps = pencil(x, y);
    return kernel_apply(ps,
                        [&f](double lam, double mu) {
                            double den = f(lam / mu) * mu;
                            if (std::abs(den) < 1e-300)
                                throw DomainError(
                                    "gf_inv_apply: singular kernel value");
                            return 1.0 / den;
                        },
                        k);
}

double gf_quadratic(const std::function<double(double)>& f, const PsdMatrix& x,
                    const PsdMatrix& y, const Matrix& k) {
    return std::real((k.adjoint() * gf_apply(f, x, y, k)).trace());
}

double gf_inv_quadratic(const std::function<double(double)>& f,
                        const PsdMatrix& x, const PsdMatrix& y,
                        const Matrix& k) {
    return std::real((k.adjoint() * gf_inv_apply(f, x, y, k)).trace());
}

SuperOperator gf_superoperator(const std::function<double(double)>& f,
                               const PsdMatrix& x, const PsdMatrix& y) {
    require_pd(x, "gf_superoperator(x)");
    require_pd(y, "gf_superoperator(y)");
    const int n = x.dim();
    Matrix ratio = kron(x.mat().transpose(), inv_pd(y.mat()));
    Matrix fr = matrix_function(ratio, f, FunctionDomain::positive_only);
    return {n, fr * kron(Matrix::Identity(n, n), y.mat())};
}

Matrix t_map(const PsdMatrix& x, const Matrix& k) {
    require_pd(x, "t_map");
    const int n = x.dim();
    if (k.rows() != n || k.cols() != n) throw ShapeError("t_map: dim mismatch");
    const auto& u = x.eigenvectors();
    Matrix kt = u.adjoint() * k * u;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            kt(i, j) *= dd_log(x.eigenvalues()[i], x.eigenvalues()[j]);
    return u * kt * u.adjoint();
}

Matrix t_inv_map(const PsdMatrix& x, const Matrix& k) {
    require_pd(x, "t_inv_map");
    const int n = x.dim();
    if (k.rows() != n || k.cols() != n)
        throw ShapeError("t_inv_map: dim mismatch");
    const auto& u = x.eigenvectors();
    Matrix kt = u.adjoint() * k * u;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            kt(i, j) *= dd_exp_at_log(x.eigenvalues()[i], x.eigenvalues()[j]);
    return u * kt * u.adjoint();
}

Matrix hess_log(const PsdMatrix& x, const Matrix& k) {
    require_pd(x, "hess_log");
    const int n = x.dim();
    Matrix kh = hermitize(k);
    const auto& u = x.eigenvectors();
    const auto& lam = x.eigenvalues();
    Matrix kt = u.adjoint() * kh * u;
    Matrix out = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int kk = 0; kk < n; ++kk) {
            Complex acc = 0.0;
            for (int j = 0; j < n; ++j)
                acc += dd2_log(lam[i], lam[j], lam[kk]) * kt(i, j) * kt(j, kk);
            out(i, kk) = -2.0 * acc;
        }
    Matrix res = u * out * u.adjoint();
    return 0.5 * (res + res.adjoint());
}

double q_form(const PsdMatrix& x, const Matrix& k) {
    Matrix kh = hermitize(k);
    return std::real((kh * t_map(x, kh)).trace());
}

namespace {

void validate_metric_args(const DensityMatrix& rho, const Matrix& k) {
    Matrix kh = hermitize(k);
    double knorm = kh.norm();
    if (std::abs(kh.trace()) > 1e-10 * std::max(knorm, 1e-300))
        throw ParamError("metric: direction must be traceless");
    require_pd(rho.psd(), "metric");
}

} // namespace

double metric_wyd(const DensityMatrix& rho, const Matrix& k, double t) {
    if (!(t > 0.0 && t < 1.0))
        throw ParamError("metric_wyd: t must lie in (0,1)");
    validate_metric_args(rho, k);
    Matrix kh = hermitize(k);
    Matrix a = power_psd(rho.psd(), t - 1.0);
    Matrix b = power_psd(rho.psd(), -t);
    return std::real((kh * a * kh * b).trace());
}

double metric_bkm(const DensityMatrix& rho, const Matrix& k) {
    validate_metric_args(rho, k);
    return q_form(rho.psd(), k);
}

DivergenceResult donald_entropy(const PsdMatrix& x, const PsdMatrix& y) {
    if (x.dim() != y.dim())
        throw ShapeError("donald_entropy: dimension mismatch");
    const int n = x.dim();
    double trx = x.trace(), trY = y.trace();
    double xcut = tol::psd_rel * std::max(x.eigenvalues()[n - 1], 1e-300);
    double ycut = tol::psd_rel * std::max(y.eigenvalues()[n - 1], 1e-300);

    Matrix overlap = y.eigenvectors().adjoint() * x.eigenvectors();
    double defect = 0.0, cross = 0.0, xlogx = 0.0;
    for (int i = 0; i < n; ++i) {
        double lam = x.eigenvalues()[i];
        if (lam <= xcut) continue;
        xlogx += lam * std::log(lam);
        for (int j = 0; j < n; ++j) {
            double o = std::norm(overlap(j, i));
            double mu = y.eigenvalues()[j];
            if (mu <= ycut) {
                defect += lam * o;
            } else {
                cross += lam * std::log(mu) * o;
            }
        }
    }
    if (trx > 0.0 && defect / trx > tol::support_defect)
        return {std::numeric_limits<double>::infinity(), false};
    return {xlogx - cross + trY - trx, true};
}

} // namespace traceforge
