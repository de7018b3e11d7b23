// Entropies and divergences against frozen classical values, support
// handling, subsystem bookkeeping, purification exactness, and skew
// information.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "traceforge/entropy.hpp"

using namespace traceforge;

namespace {

constexpr double ln2 = 0.69314718055994531;

Matrix diag_vals(std::initializer_list<double> vals) {
    Matrix m = Matrix::Zero(long(vals.size()), long(vals.size()));
    long i = 0;
    for (double v : vals) m(i, i) = v, ++i;
    return m;
}

} // namespace

TEST_CASE("von neumann entropy on a frozen spectrum") {
    PsdMatrix p(diag_vals({0.5, 0.25, 0.25}));
    CHECK(von_neumann(p) ==
          doctest::Approx(1.0397207708399179).epsilon(1e-13));

    PsdMatrix mixed(Matrix::Identity(4, 4) / 4.0);
    CHECK(von_neumann(mixed) == doctest::Approx(std::log(4.0)).epsilon(1e-13));

    PsdMatrix pure(diag_vals({1.0, 0.0, 0.0}));
    CHECK(von_neumann(pure) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("relative entropy on a frozen diagonal pair") {
    PsdMatrix x(diag_vals({0.5, 0.5}));
    PsdMatrix y(diag_vals({0.25, 0.75}));
    DivergenceResult d = umegaki(x, y);
    CHECK(d.support_condition_met);
    CHECK(d.value == doctest::Approx(0.14384103622589042).epsilon(1e-12));

    RealVector p(2), q(2);
    p << 0.5, 0.5;
    q << 0.25, 0.75;
    CHECK(classical_kl(p, q) == doctest::Approx(d.value).epsilon(1e-13));

    CHECK(umegaki(x, x).value == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("relative entropy detects a support violation") {
    PsdMatrix x(diag_vals({0.5, 0.5, 0.0}));
    PsdMatrix y(diag_vals({0.5, 0.0, 0.5}));
    DivergenceResult d = umegaki(x, y);
    CHECK_FALSE(d.support_condition_met);
    CHECK(std::isinf(d.value));

    DivergenceResult ok = umegaki(y, PsdMatrix(Matrix::Identity(3, 3) / 3.0));
    CHECK(ok.support_condition_met);
    CHECK(std::isfinite(ok.value));
}

TEST_CASE("power approximant converges to the relative entropy") {
    Rng rng(7);
    Matrix xs = sample_spectral_density(3, 3, rng, 0.2);
    Matrix ys = sample_spectral_density(3, 3, rng, 0.2);
    PsdMatrix x(xs), y(ys);
    double d = umegaki(x, y).value;
    double far = umegaki_power_approximant(x, y, 0.5);
    double near = umegaki_power_approximant(x, y, 1.0 - 1e-5);
    CHECK(std::abs(near - d) <= 1e-3 * (1.0 + std::abs(d)));
    CHECK(std::abs(near - d) < std::abs(far - d) + 1e-12);
}

TEST_CASE("bs entropy agrees with umegaki when arguments commute") {
    PsdMatrix y(diag_vals({0.3, 0.7}));
    PsdMatrix x(diag_vals({0.6, 0.4}));
    CHECK(bs_entropy(y, x) ==
          doctest::Approx(umegaki(y, x).value).epsilon(1e-12));
    CHECK(bs_entropy(y, y) == doctest::Approx(0.0).epsilon(1e-13));

    Rng rng(11);
    for (int i = 0; i < 5; ++i) {
        PsdMatrix a(sample_spectral_density(3, 3, rng, 0.1));
        PsdMatrix b(sample_spectral_density(3, 3, rng, 0.1));
        CHECK(bs_entropy(a, b) >= umegaki(a, b).value - 1e-10);
    }
}

TEST_CASE("sandwiched renyi divergence at alpha = 2 and in between") {
    PsdMatrix x(diag_vals({0.5, 0.5}));
    PsdMatrix y(diag_vals({0.25, 0.75}));
    CHECK(sandwiched_renyi(x, y, 2.0) ==
          doctest::Approx(0.28768207245178085).epsilon(1e-12));
    CHECK_THROWS_AS(sandwiched_renyi(x, y, 1.0), ParamError);

    Rng rng(13);
    PsdMatrix a(sample_spectral_density(3, 3, rng, 0.15));
    PsdMatrix b(sample_spectral_density(3, 3, rng, 0.15));
    double lo = sandwiched_renyi(a, b, 0.6);
    double mid = sandwiched_renyi(a, b, 0.9);
    double kl = umegaki(a, b).value;
    double hi = sandwiched_renyi(a, b, 1.5);
    CHECK(lo <= mid + 1e-10);
    CHECK(mid <= kl + 1e-10);
    CHECK(kl <= hi + 1e-10);
}

TEST_CASE("subsystem entropies of simple three-factor states") {
    FactorDims dims{{2, 2, 2}};
    DensityMatrix mixed(Matrix::Identity(8, 8));
    EntropyVector ev = subsystem_entropies(mixed, dims);
    CHECK(ev.s1 == doctest::Approx(ln2).epsilon(1e-12));
    CHECK(ev.s2 == doctest::Approx(ln2).epsilon(1e-12));
    CHECK(ev.s3 == doctest::Approx(ln2).epsilon(1e-12));
    CHECK(ev.s12 == doctest::Approx(2 * ln2).epsilon(1e-12));
    CHECK(ev.s13 == doctest::Approx(2 * ln2).epsilon(1e-12));
    CHECK(ev.s23 == doctest::Approx(2 * ln2).epsilon(1e-12));
    CHECK(ev.s123 == doctest::Approx(3 * ln2).epsilon(1e-12));
    CHECK(cmi(mixed, dims) == doctest::Approx(0.0).epsilon(1e-12));

    Rng rng(17);
    Matrix a = random_density(2, rng), b = random_density(2, rng),
           c = random_density(2, rng);
    DensityMatrix prod(kron(kron(a, b), c));
    EntropyVector pv = subsystem_entropies(prod, dims);
    CHECK(pv.s12 == doctest::Approx(pv.s1 + pv.s2).epsilon(1e-10));
    CHECK(pv.s123 == doctest::Approx(pv.s1 + pv.s2 + pv.s3).epsilon(1e-10));
    CHECK(cmi(prod, dims) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("conditional entropy of a product splits off the condition") {
    Rng rng(19);
    Matrix a = random_density(2, rng), b = random_density(3, rng);
    DensityMatrix ab(kron(a, b));
    FactorDims dims{{2, 3}};
    double sa = von_neumann(PsdMatrix(a));
    double sb = von_neumann(PsdMatrix(b));
    CHECK(conditional_entropy(ab, dims, 1) ==
          doctest::Approx(sa).epsilon(1e-10));
    CHECK(conditional_entropy(ab, dims, 0) ==
          doctest::Approx(sb).epsilon(1e-10));
    CHECK_THROWS_AS(conditional_entropy(ab, dims, 2), ParamError);
}

TEST_CASE("purification reproduces both marginals exactly") {
    Rng rng(23);
    DensityMatrix rho(random_density(3, rng));
    Vector psi = purify(rho);
    CHECK(psi.size() == 9);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));

    Matrix proj = psi * psi.adjoint();
    FactorDims dims{{3, 3}};
    Matrix m1 = partial_trace(proj, dims, {1});
    Matrix m2 = partial_trace(proj, dims, {0});
    CHECK((m1 - rho.mat()).norm() <= 1e-12);
    CHECK((m2 - rho.mat()).norm() <= 1e-12);

    double s1 = von_neumann(PsdMatrix(m1));
    double s2 = von_neumann(PsdMatrix(m2));
    CHECK(s1 == doctest::Approx(s2).epsilon(1e-11));
}

TEST_CASE("squashed lower bound vanishes only without correlation") {
    Rng rng(29);
    Matrix a = random_density(2, rng), b = random_density(2, rng);
    DensityMatrix prod(kron(a, b));
    FactorDims dims{{2, 2}};
    CHECK(squashed_lb(prod, dims) == doctest::Approx(0.0).epsilon(1e-10));

    DensityMatrix rho(random_density(2, rng));
    Vector psi = purify(rho);
    DensityMatrix pure(Matrix(psi * psi.adjoint()));
    double s = von_neumann(rho.psd());
    CHECK(squashed_lb(pure, dims) == doctest::Approx(s).epsilon(1e-10));
}

TEST_CASE("skew information vanishes exactly on commuting pairs") {
    Rng rng(31);
    Matrix rho = sample_spectral_density(3, 3, rng, 0.1);
    PsdMatrix p(rho);
    Matrix h_comm = matrix_function(rho, [](double s) { return s * s - 1.0; },
                                    FunctionDomain::all_reals);
    CHECK(skew_information(p, h_comm) == doctest::Approx(0.0).epsilon(1e-11));

    for (int i = 0; i < 5; ++i) {
        Matrix h = random_hermitian(3, rng);
        double val = skew_information(p, h);
        CHECK(val >= -1e-12);
        Matrix root = sqrt_psd(p);
        double manual = ((h * h * rho).trace() - (h * root * h * root).trace())
                            .real();
        CHECK(val == doctest::Approx(manual).epsilon(1e-10));
    }
}
