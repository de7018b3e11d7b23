#include "traceforge/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace traceforge {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double von_neumann(const PsdMatrix& p) { return -trace_xlogx(p); }
double von_neumann(const DensityMatrix& rho) { return von_neumann(rho.psd()); }

DivergenceResult umegaki(const PsdMatrix& x, const PsdMatrix& y) {
    if (x.dim() != y.dim()) throw ShapeError("umegaki: dimension mismatch");
    const int n = x.dim();
    double trx = x.trace();
    if (!(trx > 0.0)) return {0.0, true};

    double ytop = y.eigenvalues()[n - 1];
    double ycut = tol::psd_rel * std::max(ytop, 1e-300);

    // projector onto the kernel of y, applied to x
    double defect = 0.0;
    for (int j = 0; j < n; ++j) {
        if (y.eigenvalues()[j] > ycut) continue;
        Vector u = y.eigenvectors().col(j);
        defect += std::real((u.adjoint() * x.mat() * u)(0, 0));
    }
    if (defect / trx > tol::support_defect) return {kInf, false};

    double cross = 0.0;
    for (int j = 0; j < n; ++j) {
        double mu = y.eigenvalues()[j];
        if (mu <= ycut) continue;
        Vector u = y.eigenvectors().col(j);
        cross += std::log(mu) * std::real((u.adjoint() * x.mat() * u)(0, 0));
    }
    return {trace_xlogx(x) - cross, true};
}

double umegaki_power_approximant(const PsdMatrix& x, const PsdMatrix& y,
                                 double t) {
    if (!(t < 1.0)) throw ParamError("umegaki_power_approximant: t must be < 1");
    Matrix yp = power_psd(y, 1.0 - t);
    Matrix xp = power_psd(x, t);
    double v = std::real((yp * xp).trace());
    return (1.0 - v) / (1.0 - t);
}

double bs_entropy(const PsdMatrix& y, const PsdMatrix& x) {
    if (x.dim() != y.dim()) throw ShapeError("bs_entropy: dimension mismatch");
    double xfloor = tol::eig_floor_rel * std::max(1e-300, x.eigenvalues()[x.dim() - 1]);
    double yfloor = tol::eig_floor_rel * std::max(1e-300, y.eigenvalues()[y.dim() - 1]);
    if (x.eigenvalues()[0] <= xfloor)
        throw DomainError("bs_entropy: second argument is singular");
    if (y.eigenvalues()[0] <= yfloor)
        throw DomainError("bs_entropy: first argument is singular");
    Matrix ysqrt = sqrt_psd(y);
    Matrix inner = ysqrt * inv_pd(x.mat()) * ysqrt;
    Matrix lg = matrix_function(inner, [](double v) { return std::log(v); },
                                FunctionDomain::positive_only);
    return std::real((y.mat() * lg).trace());
}

double sandwiched_renyi(const PsdMatrix& rho, const PsdMatrix& sigma,
                        double alpha) {
    if (rho.dim() != sigma.dim())
        throw ShapeError("sandwiched_renyi: dimension mismatch");
    if (!(alpha > 0.0))
        throw ParamError("sandwiched_renyi: alpha must be positive");
    if (std::abs(alpha - 1.0) < 1e-12)
        throw ParamError("sandwiched_renyi: alpha = 1 is the umegaki limit, "
                         "call umegaki instead");
    double e = (1.0 - alpha) / (2.0 * alpha);
    Matrix se = power_psd(sigma, e);
    PsdMatrix inner(se * rho.mat() * se);
    double tr = 0.0;
    for (int i = 0; i < inner.dim(); ++i)
        tr += pow_entry(inner.eigenvalues()[i], alpha);
    if (!(tr > 0.0)) return kInf;
    return std::log(tr) / (alpha - 1.0);
}

double classical_kl(const RealVector& p, const RealVector& q) {
    if (p.size() != q.size()) throw ShapeError("classical_kl: length mismatch");
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < 0 || q[i] < 0)
            throw DomainError("classical_kl: negative entry");
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return kInf;
        s += p[i] * std::log(p[i] / q[i]);
    }
    return s;
}

namespace {

double marginal_entropy(const Matrix& rho, const FactorDims& dims,
                        const std::vector<int>& traced_out) {
    if (traced_out.empty()) return von_neumann(PsdMatrix(rho));
    return von_neumann(PsdMatrix(partial_trace(rho, dims, traced_out)));
}

void validate_entropy(double s, int dim, const char* label) {
    if (s < -1e-9 || s > std::log(double(dim)) + 1e-9)
        throw Error(std::string("subsystem_entropies: ") + label +
                    " outside [0, log dim]");
}

} // namespace

EntropyVector subsystem_entropies(const DensityMatrix& rho,
                                  const FactorDims& dims) {
    if (dims.count() != 3)
        throw ParamError("subsystem_entropies: exactly three factors required");
    if (dims.total() != rho.dim())
        throw ShapeError("subsystem_entropies: dims do not match state");
    const Matrix& r = rho.mat();
    EntropyVector ev;
    ev.s1 = marginal_entropy(r, dims, {1, 2});
    ev.s2 = marginal_entropy(r, dims, {0, 2});
    ev.s3 = marginal_entropy(r, dims, {0, 1});
    ev.s12 = marginal_entropy(r, dims, {2});
    ev.s13 = marginal_entropy(r, dims, {1});
    ev.s23 = marginal_entropy(r, dims, {0});
    ev.s123 = marginal_entropy(r, dims, {});
    const auto& d = dims.dims;
    validate_entropy(ev.s1, d[0], "s1");
    validate_entropy(ev.s2, d[1], "s2");
    validate_entropy(ev.s3, d[2], "s3");
    validate_entropy(ev.s12, d[0] * d[1], "s12");
    validate_entropy(ev.s13, d[0] * d[2], "s13");
    validate_entropy(ev.s23, d[1] * d[2], "s23");
    validate_entropy(ev.s123, dims.total(), "s123");
    return ev;
}

double conditional_entropy(const DensityMatrix& rho, const FactorDims& dims,
                           int conditioned) {
    if (dims.count() != 2)
        throw ParamError("conditional_entropy: exactly two factors required");
    if (conditioned != 0 && conditioned != 1)
        throw ParamError("conditional_entropy: conditioned factor must be 0 or 1");
    if (dims.total() != rho.dim())
        throw ShapeError("conditional_entropy: dims do not match state");
    double s12 = von_neumann(rho);
    double sc = marginal_entropy(rho.mat(), dims, {1 - conditioned});
    return s12 - sc;
}

double cmi(const DensityMatrix& rho, const FactorDims& dims) {
    if (dims.count() != 3)
        throw ParamError("cmi: exactly three factors required");
    if (dims.total() != rho.dim())
        throw ShapeError("cmi: dims do not match state");
    const Matrix& r = rho.mat();
    double s13 = marginal_entropy(r, dims, {1});
    double s23 = marginal_entropy(r, dims, {0});
    double s3 = marginal_entropy(r, dims, {0, 1});
    double s123 = von_neumann(rho);
    return s13 + s23 - s123 - s3;
}

double skew_information(const PsdMatrix& rho, const Matrix& h) {
    if (h.rows() != rho.dim() || h.cols() != rho.dim())
        throw ShapeError("skew_information: dimension mismatch");
    Matrix hh = hermitize(h);
    Matrix root = sqrt_psd(rho);
    double quad = std::real((hh * hh * rho.mat()).trace());
    double cross = std::real((hh * root * hh * root).trace());
    return quad - cross;
}

Vector purify(const DensityMatrix& rho) {
    const int n = rho.dim();
    Vector psi = Vector::Zero(Eigen::Index(n) * n);
    const auto& vals = rho.psd().eigenvalues();
    const auto& vecs = rho.psd().eigenvectors();
    for (int i = 0; i < n; ++i) {
        if (vals[i] <= 0.0) continue;
        double c = std::sqrt(vals[i]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                psi[Eigen::Index(a) * n + b] += c * vecs(a, i) * vecs(b, i);
    }
    return psi;
}

double squashed_lb(const DensityMatrix& rho, const FactorDims& dims) {
    if (dims.count() != 2)
        throw ParamError("squashed_lb: exactly two factors required");
    if (dims.total() != rho.dim())
        throw ShapeError("squashed_lb: dims do not match state");
    double s12 = von_neumann(rho);
    double s1 = marginal_entropy(rho.mat(), dims, {1});
    double s2 = marginal_entropy(rho.mat(), dims, {0});
    return std::max({s1 - s12, s2 - s12, 0.0});
}

} // namespace traceforge
