#include "traceforge/channels.hpp"

#include <algorithm>
#include <cmath>

namespace traceforge {

//---------------------------------------------------------------- kraus form

KrausChannel::KrausChannel(int in_dim, int out_dim, std::vector<Matrix> kraus)
    : in_(in_dim), out_(out_dim), kraus_(std::move(kraus)) {
    if (in_ < 1 || out_ < 1)
        throw ParamError("KrausChannel: dimensions must be >= 1");
    if (kraus_.empty()) throw ParamError("KrausChannel: empty kraus list");
    for (const auto& v : kraus_)
        if (v.rows() != in_ || v.cols() != out_)
            throw ShapeError("KrausChannel: kraus operator is " +
                             std::to_string(v.rows()) + "x" +
                             std::to_string(v.cols()) + ", expected " +
                             std::to_string(in_) + "x" + std::to_string(out_));
}

Matrix KrausChannel::apply(const Matrix& x) const {
    if (x.rows() != in_ || x.cols() != in_)
        throw ShapeError("KrausChannel::apply: input dim mismatch");
    Matrix out = Matrix::Zero(out_, out_);
    for (const auto& v : kraus_) out += v.adjoint() * x * v;
    return out;
}

double KrausChannel::unital_defect() const {
    if (!unital_defect_) {
        Matrix s = Matrix::Zero(out_, out_);
        for (const auto& v : kraus_) s += v.adjoint() * v;
        unital_defect_ = (s - Matrix::Identity(out_, out_)).norm();
    }
    return *unital_defect_;
}

bool KrausChannel::unital() const {
    return unital_defect() <= tol_chan::unital * out_;
}

double KrausChannel::tp_defect() const {
    if (!tp_defect_) {
        Matrix s = Matrix::Zero(in_, in_);
        for (const auto& v : kraus_) s += v * v.adjoint();
        tp_defect_ = (s - Matrix::Identity(in_, in_)).norm();
    }
    return *tp_defect_;
}

bool KrausChannel::trace_preserving() const {
    return tp_defect() <= tol_chan::trace_preserving * in_;
}

KrausChannel KrausChannel::adjoint() const {
    std::vector<Matrix> adj;
    adj.reserve(kraus_.size());
    for (const auto& v : kraus_) adj.push_back(v.adjoint());
    return {out_, in_, std::move(adj)};
}

//---------------------------------------------------------------- vec layer

Vector vec(const Matrix& x) {
    return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, int rows, int cols) {
    if (v.size() != Eigen::Index(rows) * cols)
        throw ShapeError("unvec: length does not match target shape");
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

namespace {

bool choi_is_hermitian(const Matrix& choi) {
    double scale = std::max(1.0, choi.norm());
    return (choi - choi.adjoint()).norm() <= 1e-10 * scale;
}

} // namespace

LinearMatrixMap::LinearMatrixMap(int in_dim, int out_dim, Matrix action,
                                 MapTag tag)
    : in_(in_dim), out_(out_dim), action_(std::move(action)), tag_(tag) {
    if (action_.rows() != Eigen::Index(out_) * out_ ||
        action_.cols() != Eigen::Index(in_) * in_)
        throw ShapeError("LinearMatrixMap: action must be out^2 x in^2");
    herm_preserving_ = choi_is_hermitian(choi_matrix(*this));
}

LinearMatrixMap LinearMatrixMap::from_kraus(const KrausChannel& phi) {
    const int in = phi.in_dim(), out = phi.out_dim();
    Matrix action = Matrix::Zero(Eigen::Index(out) * out, Eigen::Index(in) * in);
    for (const auto& v : phi.kraus())
        action += kron(v.transpose(), v.adjoint());
    return {in, out, std::move(action), MapTag::kraus_backed};
}

Matrix LinearMatrixMap::apply(const Matrix& x) const {
    if (x.rows() != in_ || x.cols() != in_)
        throw ShapeError("LinearMatrixMap::apply: input dim mismatch");
    return unvec(action_ * vec(x), out_, out_);
}

LinearMatrixMap LinearMatrixMap::adjoint() const {
    return {out_, in_, action_.adjoint(), tag_};
}

//---------------------------------------------------------------- choi

Matrix choi_matrix(const KrausChannel& phi) {
    const int in = phi.in_dim(), out = phi.out_dim();
    Matrix choi = Matrix::Zero(Eigen::Index(in) * out, Eigen::Index(in) * out);
    for (int i = 0; i < in; ++i)
        for (int j = 0; j < in; ++j) {
            Matrix e = Matrix::Zero(in, in);
            e(i, j) = 1.0;
            Matrix img = phi.apply(e);
            choi.block(Eigen::Index(i) * out, Eigen::Index(j) * out, out, out) =
                img;
        }
    return choi;
}

Matrix choi_matrix(const LinearMatrixMap& map) {
    const int in = map.in_dim(), out = map.out_dim();
    Matrix choi = Matrix::Zero(Eigen::Index(in) * out, Eigen::Index(in) * out);
    for (int i = 0; i < in; ++i)
        for (int j = 0; j < in; ++j) {
            Matrix e = Matrix::Zero(in, in);
            e(i, j) = 1.0;
            Matrix img = map.apply(e);
            choi.block(Eigen::Index(i) * out, Eigen::Index(j) * out, out, out) =
                img;
        }
    return choi;
}

std::vector<Matrix> kraus_from_choi(const Matrix& choi, int in_dim, int out_dim,
                                    double cp_tol) {
    if (choi.rows() != Eigen::Index(in_dim) * out_dim || choi.rows() != choi.cols())
        throw ShapeError("kraus_from_choi: choi dim mismatch");
    SpectralDecomposition spec = spectral_decompose(choi);
    const int n = int(spec.eigenvalues.size());
    double top = std::max(std::abs(spec.eigenvalues[0]),
                          std::abs(spec.eigenvalues[n - 1]));
    if (spec.eigenvalues[0] < -cp_tol * std::max(1.0, top))
        throw NotCPError("kraus_from_choi: choi eigenvalue " +
                             std::to_string(spec.eigenvalues[0]) +
                             " certifies the map is not completely positive",
                         spec.eigenvalues[0]);
    std::vector<Matrix> out;
    for (int k = 0; k < n; ++k) {
        double lam = spec.eigenvalues[k];
        if (lam <= cp_tol * std::max(1.0, top)) continue;
        Vector w = spec.eigenvectors.col(k);
        Matrix v(in_dim, out_dim);
        for (int i = 0; i < in_dim; ++i)
            for (int a = 0; a < out_dim; ++a)
                v(i, a) = std::sqrt(lam) *
                          std::conj(w[Eigen::Index(i) * out_dim + a]);
        out.push_back(std::move(v));
    }
    if (out.empty()) out.push_back(Matrix::Zero(in_dim, out_dim));
    return out;
}

KPositivityResult is_k_positive(const LinearMatrixMap& map, int k, int samples,
                                Rng& rng) {
    if (k < 1) throw ParamError("is_k_positive: k must be >= 1");
    KPositivityResult res;
    const int in = map.in_dim(), out = map.out_dim();

    if (k >= std::min(in, out)) {
        // k-positivity beyond min(in,out) coincides with complete positivity
        Matrix choi = choi_matrix(map);
        if (!choi_is_hermitian(choi)) {
            res.exact = true;
            res.violated = true;
            res.worst = -1.0;
            res.note = "choi matrix is not hermitian";
            return res;
        }
        double lo = min_eig(choi);
        res.exact = true;
        res.worst = lo;
        res.violated = lo < -1e-9 * std::max(1.0, op_norm(choi));
        if (res.violated) res.note = "choi eigenvalue certificate";
        return res;
    }

    auto extended_min_eig = [&](const Matrix& x) {
        // apply id_k (x) map to a psd input given as k x k blocks of size in
        Matrix y(Eigen::Index(k) * out, Eigen::Index(k) * out);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                y.block(Eigen::Index(r) * out, Eigen::Index(c) * out, out, out) =
                    map.apply(x.block(Eigen::Index(r) * in,
                                      Eigen::Index(c) * in, in, in));
        return min_eig(y);
    };

    res.worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        int rank = 1 + int(rng.uniform_int(k * in));
        Matrix x = random_psd(k * in, rank, rng);
        double scale = std::max(1.0, x.real().trace());
        double lo = extended_min_eig(x);
        res.worst = std::min(res.worst, lo);
        if (lo < -1e-9 * scale) {
            // re-verify before reporting a violation
            double again = extended_min_eig(x);
            if (again < -1e-10 * scale) {
                res.violated = true;
                res.witness = x;
                res.note = "sampled witness re-verified";
                return res;
            }
        }
    }
    res.note = "no violation found within sample budget";
    return res;
}

//---------------------------------------------------------------- embeddings

Matrix block_embed(const Matrix& x, int m) {
    if (m < 1) throw ParamError("block_embed: m must be >= 1");
    return kron(Matrix::Identity(m, m), x);
}

Matrix block_embed_adjoint(const Matrix& y, int m) {
    if (m < 1 || y.rows() != y.cols() || y.rows() % m != 0)
        throw ShapeError("block_embed_adjoint: dim not divisible by m");
    const int n = int(y.rows()) / m;
    Matrix out = Matrix::Zero(n, n);
    for (int j = 0; j < m; ++j)
        out += y.block(Eigen::Index(j) * n, Eigen::Index(j) * n, n, n);
    return out;
}

Matrix corner(const Matrix& a, int q) {
    if (q < 1 || q > a.rows() || q > a.cols())
        throw ShapeError("corner: size out of range");
    return a.topLeftCorner(q, q);
}

Matrix corner_embed(const Matrix& x, int p) {
    if (x.rows() != x.cols() || p < x.rows())
        throw ShapeError("corner_embed: target smaller than block");
    Matrix out = Matrix::Zero(p, p);
    out.topLeftCorner(x.rows(), x.cols()) = x;
    return out;
}

//---------------------------------------------------------------- dilation

StinespringFactorization stinespring_factorize(const KrausChannel& phi,
                                               std::uint64_t seed) {
    if (!phi.unital())
        throw DomainError("stinespring_factorize: channel is not unital "
                          "(defect " +
                          std::to_string(phi.unital_defect()) + ")");
    const int n = phi.in_dim(), m = phi.out_dim();
    const int env = int(phi.kraus().size());
    const int big = env * n;
    if (big < m)
        throw ShapeError("stinespring_factorize: dilation space too small");

    // isometry column block: stacking the kraus operators
    Matrix w(big, m);
    for (int j = 0; j < env; ++j)
        w.block(Eigen::Index(j) * n, 0, n, m) = phi.kraus()[size_t(j)];

    // deterministic completion to a unitary by gram-schmidt over seeded
    // random directions
    Matrix u(big, big);
    u.leftCols(m) = w;
    Rng rng(Rng::mix(seed, fnv1a("stinespring-completion")));
    int have = m;
    while (have < big) {
        Vector cand(big);
        for (int i = 0; i < big; ++i) cand[i] = rng.cgauss();
        for (int pass = 0; pass < 2; ++pass)
            for (int c = 0; c < have; ++c)
                cand -= (u.col(c).adjoint() * cand)(0, 0) * u.col(c);
        double nrm = cand.norm();
        if (nrm < 1e-8) continue;
        u.col(have) = cand / nrm;
        ++have;
    }

    StinespringFactorization fac;
    fac.env_dim = env;
    fac.unitary = u;

    // verify both identities on deterministic probes
    Rng probe(Rng::mix(seed, fnv1a("stinespring-probe")));
    for (int t = 0; t < 8; ++t) {
        Matrix x = random_hermitian(n, probe);
        Matrix lhs = phi.apply(x);
        Matrix rhs = corner(u.adjoint() * block_embed(x, env) * u, m);
        fac.corner_defect = std::max(
            fac.corner_defect, (lhs - rhs).norm() / (1.0 + x.norm()));

        Matrix y = random_hermitian(m, probe);
        Matrix alhs = phi.adjoint().apply(y);
        Matrix arhs =
            block_embed_adjoint(u * corner_embed(y, big) * u.adjoint(), env);
        fac.adjoint_defect = std::max(
            fac.adjoint_defect, (alhs - arhs).norm() / (1.0 + y.norm()));
    }
    if (fac.corner_defect > tol_chan::dilation ||
        fac.adjoint_defect > tol_chan::dilation)
        throw SolverError("stinespring_factorize: verification defect " +
                          std::to_string(std::max(fac.corner_defect,
                                                  fac.adjoint_defect)));
    return fac;
}

std::vector<Matrix> uhlmann_unitaries(int m, int n) {
    if (m < 1 || n < 1) throw ParamError("uhlmann_unitaries: bad dims");
    const double tau = 6.283185307179586476925286766559;
    std::vector<Matrix> out;
    out.reserve(size_t(m) * m);

    Matrix cyc = Matrix::Zero(m, m);
    for (int j = 0; j < m; ++j) cyc((j + 1) % m, j) = 1.0;

    for (int l = 0; l < m; ++l) {
        Matrix shift = Matrix::Identity(m, m);
        for (int s = 0; s < l; ++s) shift = cyc * shift;
        Matrix cl = kron(shift, Matrix::Identity(n, n));
        for (int k = 0; k < m; ++k) {
            Matrix phase = Matrix::Zero(m, m);
            for (int j = 0; j < m; ++j)
                phase(j, j) = std::polar(1.0, tau * j * k / m);
            out.push_back(cl * kron(phase, Matrix::Identity(n, n)));
        }
    }
    return out;
}

//---------------------------------------------------------------- mixing

KrausChannel smooth(const KrausChannel& phi, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ParamError("smooth: eps must lie in (0,1)");
    if (!phi.trace_preserving())
        throw DomainError("smooth: channel must be trace preserving");
    const int in = phi.in_dim(), out = phi.out_dim();
    std::vector<Matrix> kraus;
    kraus.reserve(phi.kraus().size() + size_t(in) * out);
    for (const auto& v : phi.kraus()) kraus.push_back(std::sqrt(1.0 - eps) * v);
    for (int i = 0; i < in; ++i)
        for (int a = 0; a < out; ++a) {
            Matrix e = Matrix::Zero(in, out);
            e(i, a) = std::sqrt(eps / out);
            kraus.push_back(std::move(e));
        }
    return {in, out, std::move(kraus)};
}

//---------------------------------------------------------------- fixed maps

LinearMatrixMap named_map(const std::string& name, int n) {
    if (n < 1) throw ParamError("named_map: bad dimension");
    const Eigen::Index nn = Eigen::Index(n) * n;
    if (name == "identity")
        return {n, n, Matrix::Identity(nn, nn), MapTag::custom};
    if (name == "full_depolarizer") {
        Vector vi = vec(Matrix::Identity(n, n));
        Matrix action = vi * vi.adjoint() / double(n);
        return {n, n, std::move(action), MapTag::custom};
    }
    if (name == "transpose") {
        Matrix action = Matrix::Zero(nn, nn);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                action(Eigen::Index(j) * n + i, Eigen::Index(i) * n + j) = 1.0;
        return {n, n, std::move(action), MapTag::transpose_component};
    }
    if (name == "choi_schwarz") {
        if (n != 2)
            throw ParamError("named_map: choi_schwarz is defined for n = 2");
        Matrix t = named_map("transpose", 2).action();
        Vector vi = vec(Matrix::Identity(2, 2));
        Matrix action = 0.5 * t + 0.25 * (vi * vi.adjoint());
        return {2, 2, std::move(action), MapTag::custom};
    }
    throw ParamError("named_map: unknown map '" + name + "'");
}

KrausChannel depolarizer_kraus(int in_dim, int out_dim) {
    std::vector<Matrix> kraus;
    kraus.reserve(size_t(in_dim) * out_dim);
    double c = 1.0 / std::sqrt(double(in_dim));
    for (int i = 0; i < in_dim; ++i)
        for (int a = 0; a < out_dim; ++a) {
            Matrix e = Matrix::Zero(in_dim, out_dim);
            e(i, a) = c;
            kraus.push_back(std::move(e));
        }
    return {in_dim, out_dim, std::move(kraus)};
}

//---------------------------------------------------------------- sampling

namespace {

// columns form an orthonormal family spanning a haar-random subspace
Matrix haar_isometry(int rows, int cols, Rng& rng) {
    Matrix g = random_ginibre(rows, cols, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = Matrix(qr.householderQ()).leftCols(cols);
    Matrix r = qr.matrixQR().topLeftCorner(cols, cols);
    for (int i = 0; i < cols; ++i) {
        Complex d = r(i, i);
        Complex phase = std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0);
        q.col(i) *= phase;
    }
    return q;
}

} // namespace

KrausChannel sample_channel(ChannelKind kind, int in_dim, int out_dim,
                            int n_kraus, Rng& rng) {
    if (in_dim < 1 || out_dim < 1 || n_kraus < 1)
        throw ParamError("sample_channel: bad parameters");
    std::vector<Matrix> kraus;
    switch (kind) {
    case ChannelKind::cptp: {
        if (Eigen::Index(n_kraus) * out_dim < in_dim)
            throw ParamError("sample_channel: cptp needs n_kraus*out >= in");
        Matrix iso = haar_isometry(n_kraus * out_dim, in_dim, rng);
        for (int j = 0; j < n_kraus; ++j)
            kraus.push_back(
                iso.block(Eigen::Index(j) * out_dim, 0, out_dim, in_dim)
                    .adjoint());
        break;
    }
    case ChannelKind::cp_unital: {
        if (Eigen::Index(n_kraus) * in_dim < out_dim)
            throw ParamError("sample_channel: cp_unital needs n_kraus*in >= out");
        Matrix iso = haar_isometry(n_kraus * in_dim, out_dim, rng);
        for (int j = 0; j < n_kraus; ++j)
            kraus.push_back(
                iso.block(Eigen::Index(j) * in_dim, 0, in_dim, out_dim));
        break;
    }
    case ChannelKind::cp_unital_tp: {
        if (in_dim != out_dim)
            throw ParamError("sample_channel: cp_unital_tp needs in == out");
        std::vector<double> p(static_cast<size_t>(n_kraus), 0.0);
        double total = 0.0;
        for (auto& w : p) {
            w = -std::log(1.0 - rng.uniform());
            total += w;
        }
        for (int j = 0; j < n_kraus; ++j)
            kraus.push_back(std::sqrt(p[size_t(j)] / total) *
                            random_unitary(in_dim, rng));
        break;
    }
    }
    return {in_dim, out_dim, std::move(kraus)};
}

} // namespace traceforge
