// Multiplication superoperators, ratio-kernel quadratic forms, the
// logarithm derivative and its hessian, monotone metrics, and the
// geometric-overlap entropy formula.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "traceforge/gns.hpp"

using namespace traceforge;

namespace {

double re_tr(const Matrix& a) { return a.trace().real(); }

struct Pair {
    PsdMatrix x, y;
    Matrix k;
};

Pair draw_pair(int n, std::uint64_t seed) {
    Rng rng(seed);
    return {PsdMatrix(sample_spectral_pd(n, rng, 0.1, 2.0)),
            PsdMatrix(sample_spectral_pd(n, rng, 0.1, 2.0)),
            random_hermitian(n, rng)};
}

} // namespace

TEST_CASE("left and right multiplication superoperators") {
    Rng rng(3);
    Matrix x = random_hermitian(3, rng);
    Matrix k = random_ginibre(3, 3, rng);
    CHECK((lmul(x).apply(k) - x * k).norm() <= 1e-13);
    CHECK((rmul(x).apply(k) - k * x).norm() <= 1e-13);
}

TEST_CASE("ratio kernel reduces to plain multiplication at the ends") {
    auto [x, y, k] = draw_pair(3, 7);

    Matrix rx = gf_apply([](double s) { return s; }, x, y, k);
    CHECK((rx - k * x.mat()).norm() <= 1e-11 * (1.0 + rx.norm()));

    Matrix ly = gf_apply([](double) { return 1.0; }, x, y, k);
    CHECK((ly - y.mat() * k).norm() <= 1e-11 * (1.0 + ly.norm()));

    double qx = gf_quadratic([](double s) { return s; }, x, y, k);
    CHECK(qx == doctest::Approx(re_tr(k.adjoint() * k * x.mat()))
                    .epsilon(1e-11));
}

TEST_CASE("dense superoperator assembly matches the kernel path") {
    auto [x, y, k] = draw_pair(3, 11);
    auto f = [](double s) { return std::sqrt(s); };
    SuperOperator dense = gf_superoperator(f, x, y);
    CHECK((dense.apply(k) - gf_apply(f, x, y, k)).norm() <= 1e-10);
}

TEST_CASE("inverse kernel inverts the forward kernel") {
    auto [x, y, k] = draw_pair(3, 13);
    auto f = [](double s) { return (1.0 + s) / 2.0; };
    Matrix fwd = gf_apply(f, x, y, k);
    Matrix back = gf_inv_apply(f, x, y, fwd);
    CHECK((back - k).norm() <= 1e-10 * (1.0 + k.norm()));

    double qf = gf_quadratic(f, x, y, k);
    double qi = gf_inv_quadratic(f, x, y, k);
    CHECK(qf > 0.0);
    CHECK(qi > 0.0);
}

TEST_CASE("logarithm derivative map against finite differences") {
    Rng rng(17);
    Matrix xs = sample_spectral_pd(3, rng, 0.4, 2.0);
    PsdMatrix x(xs);
    Matrix k = random_hermitian(3, rng);

    SUBCASE("scalar case divides by the point") {
        PsdMatrix half(Matrix(2.0 * Matrix::Identity(3, 3)));
        CHECK((t_map(half, k) - 0.5 * k).norm() <= 1e-12);
        CHECK((t_inv_map(half, k) - 2.0 * k).norm() <= 1e-12);
    }

    SUBCASE("matches the centered difference of log") {
        const double h = 1e-5;
        Matrix up = log_pd(PsdMatrix(Matrix(xs + h * k)).mat());
        Matrix dn = log_pd(PsdMatrix(Matrix(xs - h * k)).mat());
        Matrix fd = (up - dn) / (2.0 * h);
        CHECK((t_map(x, k) - fd).norm() <= 1e-6 * (1.0 + fd.norm()));
    }

    SUBCASE("t_inv_map undoes t_map") {
        Matrix round = t_inv_map(x, t_map(x, k));
        CHECK((round - k).norm() <= 1e-10 * (1.0 + k.norm()));
    }
}

TEST_CASE("hessian of the logarithm against second differences") {
    Rng rng(19);
    Matrix xs = sample_spectral_pd(3, rng, 0.5, 2.0);
    PsdMatrix x(xs);
    Matrix k = 0.5 * random_hermitian(3, rng);

    const double h = 1e-4;
    Matrix up = log_pd(PsdMatrix(Matrix(xs + h * k)).mat());
    Matrix mid = log_pd(xs);
    Matrix dn = log_pd(PsdMatrix(Matrix(xs - h * k)).mat());
    Matrix second = (up - 2.0 * mid + dn) / (h * h);
    Matrix hess = hess_log(x, k);
    CHECK((hess + second).norm() <= 1e-5 * (1.0 + second.norm()));

    // the sign-flipped second derivative of an operator concave function
    // is itself positive semidefinite
    CHECK(min_eig(hermitize(hess)) >= -1e-10 * (1.0 + hess.norm()));
}

TEST_CASE("quadratic form is the paired derivative") {
    Rng rng(23);
    Matrix xs = sample_spectral_pd(4, rng, 0.2, 1.5);
    PsdMatrix x(xs);
    Matrix k = random_hermitian(4, rng);
    double q = q_form(x, k);
    CHECK(q >= 0.0);
    CHECK(q == doctest::Approx(re_tr(k * t_map(x, k))).epsilon(1e-11));
}

TEST_CASE("monotone metrics collapse at the maximally mixed state") {
    const int n = 3;
    Rng rng(29);
    Matrix k = random_traceless_hermitian(n, rng);
    DensityMatrix mixed{PsdMatrix(Matrix(Matrix::Identity(n, n)))};
    double norm2 = re_tr(k * k);
    CHECK(metric_wyd(mixed, k, 0.3) ==
          doctest::Approx(n * norm2).epsilon(1e-11));
    CHECK(metric_wyd(mixed, k, 0.5) ==
          doctest::Approx(n * norm2).epsilon(1e-11));
    CHECK(metric_bkm(mixed, k) == doctest::Approx(n * norm2).epsilon(1e-11));

    CHECK_THROWS_AS(metric_wyd(mixed, k, 0.0), ParamError);
    CHECK_THROWS_AS(metric_wyd(mixed, k, 1.0), ParamError);
    Matrix traceful = k + Matrix::Identity(n, n);
    CHECK_THROWS_AS(metric_wyd(mixed, traceful, 0.5), ParamError);
}

TEST_CASE("geometric-overlap entropy matches umegaki off by the traces") {
    Rng rng(31);
    for (int i = 0; i < 6; ++i) {
        PsdMatrix x(sample_spectral_pd(3, rng, 0.05, 1.5));
        PsdMatrix y(sample_spectral_pd(3, rng, 0.05, 1.5));
        DivergenceResult don = donald_entropy(x, y);
        DivergenceResult kl = umegaki(x, y);
        REQUIRE(don.support_condition_met);
        double want = kl.value + y.trace() - x.trace();
        CHECK(don.value == doctest::Approx(want).epsilon(1e-9));
    }

    Matrix xr = Matrix::Zero(3, 3);
    xr(0, 0) = 1.0;
    xr(1, 1) = 1.0;
    Matrix yr = Matrix::Zero(3, 3);
    yr(1, 1) = 1.0;
    yr(2, 2) = 1.0;
    DivergenceResult bad = donald_entropy(PsdMatrix(xr), PsdMatrix(yr));
    CHECK_FALSE(bad.support_condition_met);
    CHECK(std::isinf(bad.value));
}

// tr[Y hess_log(X, K)] dominates the Y-inverse form of the X-derivative;
// this ordering is what the midpoint checks in the suite lean on, so it is
// pinned here over a fixed block of seeds
TEST_CASE("hessian trace form dominates the inverse pairing") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        Rng rng(seed);
        int n = 2 + int(seed % 2);
        PsdMatrix x(sample_spectral_pd(n, rng, 0.1, 2.0));
        PsdMatrix y(sample_spectral_pd(n, rng, 0.1, 2.0));
        Matrix k = random_hermitian(n, rng);

        double lhs = re_tr(y.mat() * hess_log(x, k));
        Matrix tx = t_map(x, k);
        double rhs = re_tr(tx * t_inv_map(y, tx));
        double scale = 1.0 + std::max(std::abs(lhs), std::abs(rhs));
        CHECK(lhs - rhs >= -1e-9 * scale);
    }
}
