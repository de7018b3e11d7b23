#include "traceforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace traceforge {

//---------------------------------------------------------------- hermitian layer

Matrix hermitize(const Matrix& a, double rel_tol) {
    if (a.rows() != a.cols())
        throw ShapeError("hermitize: matrix is " + std::to_string(a.rows()) +
                         "x" + std::to_string(a.cols()) + ", expected square");
    double scale = a.norm();
    double defect = (a - a.adjoint()).norm();
    if (defect > rel_tol * std::max(1.0, scale))
        throw DomainError("hermitize: hermiticity defect " +
                          std::to_string(defect) + " exceeds tolerance at scale " +
                          std::to_string(scale));
    return 0.5 * (a + a.adjoint());
}

SpectralDecomposition spectral_decompose(const Matrix& hermitian) {
    Matrix h = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw SolverError("spectral_decompose: eigensolver failed to converge on dim " +
                          std::to_string(h.rows()));
    return {solver.eigenvalues(), solver.eigenvectors()};
}

PsdMatrix::PsdMatrix(const Matrix& a, double psd_tol) {
    Matrix h = hermitize(a);
    spec_ = spectral_decompose(h);
    const int n = int(h.rows());
    double top = 0.0;
    for (int i = 0; i < n; ++i) top = std::max(top, std::abs(spec_.eigenvalues[i]));
    double cut = psd_tol * std::max(top, 1e-300);
    double lo = n > 0 ? spec_.eigenvalues[0] : 0.0;
    if (lo < -cut)
        throw DomainError("PsdMatrix: eigenvalue " + std::to_string(lo) +
                          " below the psd tolerance " + std::to_string(-cut));
    support_rank_ = 0;
    eig_floor_ = 0.0;
    RealVector clamped = spec_.eigenvalues;
    for (int i = 0; i < n; ++i) {
        if (clamped[i] < 0.0) clamped[i] = 0.0;
        if (clamped[i] > cut) {
            if (support_rank_ == 0) eig_floor_ = clamped[i];
            ++support_rank_;
        }
    }
    spec_.eigenvalues = clamped;
    m_ = spec_.reconstruct();
    m_ = 0.5 * (m_ + m_.adjoint());
}

PsdMatrix DensityMatrix::normalize(const PsdMatrix& p) {
    double tr = p.trace();
    if (!(tr > 0.0))
        throw DomainError("DensityMatrix: trace " + std::to_string(tr) +
                          " is not positive");
    if (std::abs(tr - 1.0) <= 1e-15) return p;
    return PsdMatrix(p.mat() / tr);
}

DensityMatrix::DensityMatrix(const Matrix& a) : psd_(normalize(PsdMatrix(a))) {}
DensityMatrix::DensityMatrix(const PsdMatrix& p) : psd_(normalize(p)) {}

//---------------------------------------------------------------- spectral calculus

Matrix matrix_function(const SpectralDecomposition& spec,
                       const std::function<double(double)>& f,
                       FunctionDomain domain) {
    const int n = int(spec.eigenvalues.size());
    double top = 0.0;
    for (int i = 0; i < n; ++i) top = std::max(top, std::abs(spec.eigenvalues[i]));
    double floor = tol::eig_floor_rel * top;
    RealVector vals(n);
    for (int i = 0; i < n; ++i) {
        double x = spec.eigenvalues[i];
        switch (domain) {
        case FunctionDomain::all_reals:
            vals[i] = f(x);
            break;
        case FunctionDomain::positive_only:
            if (x <= floor)
                throw DomainError("matrix_function: eigenvalue " +
                                  std::to_string(x) +
                                  " at or below the positive-domain floor " +
                                  std::to_string(floor));
            vals[i] = f(x);
            break;
        case FunctionDomain::nonneg_with_zero_rule:
            if (x < -floor)
                throw DomainError("matrix_function: eigenvalue " +
                                  std::to_string(x) +
                                  " is negative beyond the floor " +
                                  std::to_string(floor));
            vals[i] = f(std::abs(x) <= floor ? 0.0 : x);
            break;
        }
        if (!std::isfinite(vals[i]))
            throw DomainError("matrix_function: non-finite value at eigenvalue " +
                              std::to_string(spec.eigenvalues[i]));
    }
    Matrix out = spec.eigenvectors * vals.asDiagonal() *
                 spec.eigenvectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

Matrix matrix_function(const Matrix& hermitian,
                       const std::function<double(double)>& f,
                       FunctionDomain domain) {
    return matrix_function(spectral_decompose(hermitian), f, domain);
}

double pow_entry(double x, double t) {
    if (x == 0.0) return t == 0.0 ? 1.0 : 0.0;
    return std::pow(x, t);
}

Matrix power_psd(const PsdMatrix& p, double t) {
    auto f = [t](double x) { return pow_entry(x, t); };
    if (t < 0.0)
        return matrix_function(p.spectral(), f, FunctionDomain::positive_only);
    return matrix_function(p.spectral(), f, FunctionDomain::nonneg_with_zero_rule);
}

Matrix power_psd(const Matrix& psd, double t) { return power_psd(PsdMatrix(psd), t); }

Matrix sqrt_psd(const PsdMatrix& p) { return power_psd(p, 0.5); }

Matrix exp_herm(const Matrix& hermitian) {
    return matrix_function(hermitian, [](double x) { return std::exp(x); },
                           FunctionDomain::all_reals);
}

Matrix log_pd(const PsdMatrix& p) {
    return matrix_function(p.spectral(), [](double x) { return std::log(x); },
                           FunctionDomain::positive_only);
}

Matrix log_pd(const Matrix& positive_definite) {
    return log_pd(PsdMatrix(positive_definite));
}

Matrix inv_pd(const Matrix& positive_definite) {
    return matrix_function(PsdMatrix(positive_definite).spectral(),
                           [](double x) { return 1.0 / x; },
                           FunctionDomain::positive_only);
}

double trace_xlogx(const PsdMatrix& p) {
    double s = 0.0;
    for (int i = 0; i < p.dim(); ++i) {
        double x = p.eigenvalues()[i];
        if (x > 0.0) s += x * std::log(x);
    }
    return s;
}

PsdMatrix pseudo_inverse(const PsdMatrix& p) {
    const int n = p.dim();
    double top = n > 0 ? p.eigenvalues()[n - 1] : 0.0;
    double cut = tol::psd_rel * top;
    RealVector vals(n);
    for (int i = 0; i < n; ++i) {
        double x = p.eigenvalues()[i];
        vals[i] = x > cut ? 1.0 / x : 0.0;
    }
    Matrix out = p.eigenvectors() * vals.asDiagonal() * p.eigenvectors().adjoint();
    return PsdMatrix(out);
}

double schatten_norm(const Matrix& a, double p) {
    if (std::isnan(p) || (p < 1.0 && !std::isinf(p)))
        throw ParamError("schatten_norm: order " + std::to_string(p) +
                         " outside [1, infinity]");
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0.0;
    if (std::isinf(p)) return s[0];
    double acc = 0.0;
    for (int i = 0; i < s.size(); ++i) acc += std::pow(s[i], p);
    return std::pow(acc, 1.0 / p);
}

double min_eig(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(
        0.5 * (hermitian + hermitian.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw SolverError("min_eig: eigensolver failed");
    return solver.eigenvalues()[0];
}

double max_eig(const Matrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(
        0.5 * (hermitian + hermitian.adjoint()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw SolverError("max_eig: eigensolver failed");
    return solver.eigenvalues()[solver.eigenvalues().size() - 1];
}

double op_norm(const Matrix& a) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
}

//---------------------------------------------------------------- tensor structure

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
    return out;
}

namespace {

void check_dims(const Matrix& a, const FactorDims& dims) {
    if (dims.count() == 0) throw ParamError("factor list is empty");
    for (int d : dims.dims)
        if (d < 1) throw ParamError("factor dimension must be >= 1");
    if (a.rows() != dims.total() || a.cols() != dims.total())
        throw ShapeError("matrix dim " + std::to_string(a.rows()) +
                         " does not match factor product " +
                         std::to_string(dims.total()));
}

// decompose flat index into factor indices (first factor slow)
void split_index(int flat, const std::vector<int>& dims, std::vector<int>& out) {
    for (int k = int(dims.size()) - 1; k >= 0; --k) {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
}

int join_index(const std::vector<int>& idx, const std::vector<int>& dims) {
    int flat = 0;
    for (size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + idx[k];
    return flat;
}

} // namespace

Matrix partial_trace(const Matrix& a, const FactorDims& dims,
                     const std::vector<int>& traced_out) {
    check_dims(a, dims);
    const int nf = dims.count();
    std::vector<char> traced(nf, 0);
    for (int t : traced_out) {
        if (t < 0 || t >= nf)
            throw ParamError("partial_trace: factor index " + std::to_string(t) +
                             " out of range");
        if (traced[t]) throw ParamError("partial_trace: repeated factor index");
        traced[t] = 1;
    }
    std::vector<int> kept_dims, traced_dims;
    std::vector<int> kept_pos, traced_pos;
    for (int k = 0; k < nf; ++k) {
        if (traced[k]) { traced_dims.push_back(dims.dims[k]); traced_pos.push_back(k); }
        else { kept_dims.push_back(dims.dims[k]); kept_pos.push_back(k); }
    }
    int kd = 1, td = 1;
    for (int d : kept_dims) kd *= d;
    for (int d : traced_dims) td *= d;

    Matrix out = Matrix::Zero(kd, kd);
    std::vector<int> ri(nf), ci(nf);
    std::vector<int> kr(kept_dims.size()), kc(kept_dims.size()), ti(traced_dims.size());
    for (int r = 0; r < kd; ++r) {
        split_index(r, kept_dims, kr);
        for (int c = 0; c < kd; ++c) {
            split_index(c, kept_dims, kc);
            Complex acc = 0.0;
            for (int t = 0; t < td; ++t) {
                split_index(t, traced_dims, ti);
                for (size_t k = 0; k < kept_pos.size(); ++k) {
                    ri[kept_pos[k]] = kr[k];
                    ci[kept_pos[k]] = kc[k];
                }
                for (size_t k = 0; k < traced_pos.size(); ++k) {
                    ri[traced_pos[k]] = ti[k];
                    ci[traced_pos[k]] = ti[k];
                }
                acc += a(join_index(ri, dims.dims), join_index(ci, dims.dims));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

Matrix embed_identity(const Matrix& x, const FactorDims& dims,
                      const std::vector<int>& kept) {
    const int nf = dims.count();
    std::vector<char> is_kept(nf, 0);
    for (int k : kept) {
        if (k < 0 || k >= nf)
            throw ParamError("embed_identity: factor index out of range");
        is_kept[k] = 1;
    }
    std::vector<int> kept_dims, kept_pos;
    for (int k = 0; k < nf; ++k)
        if (is_kept[k]) { kept_dims.push_back(dims.dims[k]); kept_pos.push_back(k); }
    int kd = 1;
    for (int d : kept_dims) kd *= d;
    if (x.rows() != kd || x.cols() != kd)
        throw ShapeError("embed_identity: matrix dim does not match kept factors");

    const int big = dims.total();
    Matrix out = Matrix::Zero(big, big);
    std::vector<int> ri(nf), ci(nf), kr(kept_dims.size()), kc(kept_dims.size());
    for (int r = 0; r < big; ++r) {
        split_index(r, dims.dims, ri);
        for (int c = 0; c < big; ++c) {
            split_index(c, dims.dims, ci);
            bool diag = true;
            for (int k = 0; k < nf; ++k)
                if (!is_kept[k] && ri[k] != ci[k]) { diag = false; break; }
            if (!diag) continue;
            for (size_t k = 0; k < kept_pos.size(); ++k) {
                kr[k] = ri[kept_pos[k]];
                kc[k] = ci[kept_pos[k]];
            }
            out(r, c) = x(join_index(kr, kept_dims), join_index(kc, kept_dims));
        }
    }
    return out;
}

//---------------------------------------------------------------- sampling

Matrix random_ginibre(int rows, int cols, Rng& rng) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.cgauss();
    return g;
}

Matrix random_unitary(int n, Rng& rng) {
    Matrix g = random_ginibre(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    Vector phase(n);
    for (int i = 0; i < n; ++i) {
        Complex d = r(i, i);
        phase[i] = std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0);
    }
    return q * phase.asDiagonal();
}

Matrix random_hermitian(int n, Rng& rng) {
    Matrix g = random_ginibre(n, n, rng);
    return 0.5 * (g + g.adjoint());
}

Matrix random_traceless_hermitian(int n, Rng& rng) {
    Matrix h = random_hermitian(n, rng);
    Complex tr = h.trace();
    h -= (tr / double(n)) * Matrix::Identity(n, n);
    return 0.5 * (h + h.adjoint());
}

Matrix random_psd(int n, int rank, Rng& rng) {
    if (rank < 0 || rank > n)
        throw ParamError("random_psd: rank " + std::to_string(rank) +
                         " outside [0, " + std::to_string(n) + "]");
    if (rank == 0) return Matrix::Zero(n, n);
    Matrix g = random_ginibre(rank, n, rng);
    Matrix out = g.adjoint() * g;
    return 0.5 * (out + out.adjoint());
}

Matrix random_pd(int n, Rng& rng) {
    Matrix a = random_psd(n, n, rng);
    double floor = 0.02 * a.real().trace() / n + 1e-12;
    return a + floor * Matrix::Identity(n, n);
}

Matrix random_density(int n, Rng& rng) {
    Matrix a = random_psd(n, n, rng);
    return a / a.trace().real();
}

Matrix random_density_rank(int n, int rank, Rng& rng) {
    if (rank < 1 || rank > n) throw ParamError("random_density_rank: bad rank");
    Matrix a = random_psd(n, rank, rng);
    return a / a.trace().real();
}

Vector random_unit_vector(int n, Rng& rng) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.cgauss();
    double nrm = v.norm();
    if (nrm == 0.0) { v.setZero(); v[0] = 1.0; return v; }
    return v / nrm;
}

Matrix sample_spectral_psd(int n, int rank, double lo, double hi, Rng& rng) {
    if (rank < 0 || rank > n) throw ParamError("sample_spectral_psd: bad rank");
    Matrix u = random_unitary(n, rng);
    RealVector vals = RealVector::Zero(n);
    for (int i = 0; i < rank; ++i) vals[i] = rng.uniform(lo, hi);
    Matrix out = u * vals.asDiagonal() * u.adjoint();
    return 0.5 * (out + out.adjoint());
}

Matrix sample_spectral_pd(int n, Rng& rng, double lo, double hi) {
    return sample_spectral_psd(n, n, lo, hi, rng);
}

Matrix sample_spectral_density(int n, int rank, Rng& rng, double lo) {
    Matrix a = sample_spectral_psd(n, rank, lo, 1.0, rng);
    return a / a.trace().real();
}

Matrix sample_random(RandomKind kind, int n, std::optional<int> rank, Rng& rng) {
    if (n < 1) throw ParamError("sample_random: dimension must be >= 1");
    int r = rank.value_or(n);
    if (r > n)
        throw ParamError("sample_random: rank " + std::to_string(r) +
                         " exceeds dimension " + std::to_string(n));
    switch (kind) {
    case RandomKind::haar_unitary: return random_unitary(n, rng);
    case RandomKind::psd: return random_psd(n, r, rng);
    case RandomKind::positive_definite: return random_pd(n, rng);
    case RandomKind::density:
        return r == n ? random_density(n, rng) : random_density_rank(n, r, rng);
    case RandomKind::hermitian: return random_hermitian(n, rng);
    case RandomKind::traceless_hermitian: return random_traceless_hermitian(n, rng);
    case RandomKind::general: return random_ginibre(n, n, rng);
    }
    throw ParamError("sample_random: unknown kind");
}

Matrix sample_random(RandomKind kind, int n, std::optional<int> rank,
                     std::uint64_t seed) {
    Rng rng(seed);
    return sample_random(kind, n, rank, rng);
}

} // namespace traceforge
