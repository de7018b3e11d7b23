// Completely positive maps: kraus arithmetic, superoperator matrices, choi
// spectra, k-positivity probing, block embeddings, dilations, and the
// averaging unitaries.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "traceforge/channels.hpp"

using namespace traceforge;

namespace {

Matrix swap_matrix(int n) {
    Matrix s = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
    return s;
}

double action_gap(const KrausChannel& a, const KrausChannel& b, Rng& rng) {
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
        Matrix x = random_hermitian(a.in_dim(), rng);
        worst = std::max(worst, (a.apply(x) - b.apply(x)).norm() /
                                    (1.0 + a.apply(x).norm()));
    }
    return worst;
}

} // namespace

TEST_CASE("depolarizer erases everything but the trace") {
    KrausChannel dep = depolarizer_kraus(2, 2);
    Rng rng(3);
    Matrix x = random_hermitian(2, rng);
    Matrix want = x.trace() * Matrix::Identity(2, 2) / 2.0;
    CHECK((dep.apply(x) - want).norm() <= 1e-12 * (1.0 + want.norm()));
    CHECK(dep.unital());
    CHECK(dep.trace_preserving());

    KrausChannel rect = depolarizer_kraus(2, 3);
    CHECK(rect.unital());
    CHECK_FALSE(rect.trace_preserving());
    Matrix y = random_hermitian(2, rng);
    Matrix w3 = y.trace() * Matrix::Identity(3, 3) / 2.0;
    CHECK((rect.apply(y) - w3).norm() <= 1e-12 * (1.0 + w3.norm()));
}

TEST_CASE("sampled channels carry the advertised structure") {
    Rng rng(17);

    KrausChannel tp = sample_channel(ChannelKind::cptp, 3, 2, 4, rng);
    CHECK(tp.tp_defect() <= 1e-10);
    Matrix rho = random_density(3, rng);
    CHECK(min_eig(tp.apply(rho)) >= -1e-12);
    CHECK(std::abs(tp.apply(rho).trace() - rho.trace()) <= 1e-12);

    KrausChannel un = sample_channel(ChannelKind::cp_unital, 2, 3, 3, rng);
    CHECK(un.unital_defect() <= 1e-10);
    CHECK((un.apply(Matrix::Identity(2, 2)) - Matrix::Identity(3, 3)).norm() <=
          1e-10);

    KrausChannel both = sample_channel(ChannelKind::cp_unital_tp, 3, 3, 4, rng);
    CHECK(both.unital_defect() <= 1e-10);
    CHECK(both.tp_defect() <= 1e-10);
}

TEST_CASE("adjoint satisfies the trace pairing") {
    Rng rng(29);
    KrausChannel phi = sample_channel(ChannelKind::cptp, 3, 2, 3, rng);
    KrausChannel adj = phi.adjoint();
    CHECK(adj.in_dim() == 2);
    CHECK(adj.out_dim() == 3);
    for (int i = 0; i < 8; ++i) {
        Matrix x = random_hermitian(3, rng);
        Matrix y = random_hermitian(2, rng);
        Complex lhs = (phi.apply(x).adjoint() * y).trace();
        Complex rhs = (x.adjoint() * adj.apply(y)).trace();
        CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("superoperator form reproduces the kraus action") {
    Rng rng(31);
    KrausChannel phi = sample_channel(ChannelKind::cptp, 2, 3, 3, rng);
    LinearMatrixMap map = LinearMatrixMap::from_kraus(phi);
    CHECK(map.tag() == MapTag::kraus_backed);
    CHECK(map.hermiticity_preserving());
    for (int i = 0; i < 6; ++i) {
        Matrix x = random_hermitian(2, rng);
        CHECK((map.apply(x) - phi.apply(x)).norm() <= 1e-11);
    }
    LinearMatrixMap madj = map.adjoint();
    KrausChannel kadj = phi.adjoint();
    for (int i = 0; i < 6; ++i) {
        Matrix y = random_hermitian(3, rng);
        CHECK((madj.apply(y) - kadj.apply(y)).norm() <= 1e-11);
    }

    Matrix z = random_ginibre(3, 2, rng);
    CHECK((unvec(vec(z), 3, 2) - z).norm() == 0.0);
}

TEST_CASE("transpose choi is the swap with eigenvalue -1") {
    LinearMatrixMap t = named_map("transpose", 2);
    Matrix choi = choi_matrix(t);
    CHECK((choi - swap_matrix(2)).norm() <= 1e-12);
    CHECK(min_eig(choi) == doctest::Approx(-1.0).epsilon(1e-12));

    bool threw = false;
    try {
        kraus_from_choi(choi, 2, 2);
    } catch (const NotCPError& e) {
        threw = true;
        CHECK(e.eigenvalue == doctest::Approx(-1.0).epsilon(1e-10));
    }
    CHECK(threw);
}

TEST_CASE("choi roundtrip rebuilds the channel") {
    Rng rng(37);
    KrausChannel phi = sample_channel(ChannelKind::cptp, 3, 2, 4, rng);
    auto ops = kraus_from_choi(choi_matrix(phi), 3, 2);
    KrausChannel back(3, 2, ops);
    CHECK(action_gap(phi, back, rng) <= 1e-9);
}

TEST_CASE("the schwarz map is positive but not 2-positive") {
    LinearMatrixMap cs = named_map("choi_schwarz", 2);
    CHECK(min_eig(choi_matrix(cs)) == doctest::Approx(-0.25).epsilon(1e-12));

    Rng rng(41);
    KPositivityResult p1 = is_k_positive(cs, 1, 400, rng);
    CHECK_FALSE(p1.exact);
    CHECK_FALSE(p1.violated);

    KPositivityResult p2 = is_k_positive(cs, 2, 0, rng);
    CHECK(p2.exact);
    CHECK(p2.violated);
    CHECK(p2.worst == doctest::Approx(-0.25).epsilon(1e-10));
}

TEST_CASE("k-positivity of the transpose decays at k = 2") {
    LinearMatrixMap t = named_map("transpose", 3);
    Rng rng(43);
    KPositivityResult p1 = is_k_positive(t, 1, 400, rng);
    CHECK_FALSE(p1.violated);
    KPositivityResult p3 = is_k_positive(t, 3, 0, rng);
    CHECK(p3.exact);
    CHECK(p3.violated);
    CHECK(p3.worst == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(p3.note == "choi eigenvalue certificate");
}

TEST_CASE("block embeddings are mutually adjoint") {
    Rng rng(47);
    Matrix x = random_hermitian(3, rng);
    Matrix big = block_embed(x, 2);
    CHECK((big - kron(Matrix::Identity(2, 2), x)).norm() <= 1e-13);

    Matrix y = random_hermitian(6, rng);
    Complex lhs = (big.adjoint() * y).trace();
    Complex rhs = (x.adjoint() * block_embed_adjoint(y, 2)).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-11 * (1.0 + std::abs(lhs)));

    Matrix c = random_hermitian(2, rng);
    CHECK((corner(corner_embed(c, 5), 2) - c).norm() <= 1e-14);
}

TEST_CASE("stinespring factorization certifies both corners") {
    Rng rng(53);
    KrausChannel phi = sample_channel(ChannelKind::cp_unital, 2, 3, 4, rng);
    StinespringFactorization fac = stinespring_factorize(phi, 2024);
    CHECK(fac.env_dim >= 1);
    CHECK(fac.corner_defect <= 1e-9);
    CHECK(fac.adjoint_defect <= 1e-9);
    const Matrix& u = fac.unitary;
    CHECK((u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <=
          1e-10);
}

TEST_CASE("uhlmann unitaries average to the block pinch") {
    const int m = 2, n = 3;
    auto us = uhlmann_unitaries(m, n);
    CHECK(us.size() == size_t(m * m));

    Rng rng(59);
    Matrix y = random_hermitian(m * n, rng);
    Matrix avg = Matrix::Zero(m * n, m * n);
    for (const auto& u : us) avg += u * y * u.adjoint();
    avg /= double(us.size());
    Matrix pinch = block_embed(block_embed_adjoint(y, m), m) / double(m);
    CHECK((avg - pinch).norm() <= 1e-11 * (1.0 + pinch.norm()));

    Matrix a = random_hermitian(n, rng);
    Matrix ia = block_embed(a, m);
    for (const auto& u : us)
        CHECK((u * ia - ia * u).norm() <= 1e-11 * (1.0 + ia.norm()));
}

TEST_CASE("smoothing floors the output spectrum") {
    Rng rng(61);
    KrausChannel phi = sample_channel(ChannelKind::cptp, 3, 3, 2, rng);
    const double eps = 1e-3;
    KrausChannel soft = smooth(phi, eps);
    CHECK(soft.tp_defect() <= 1e-9);
    Matrix rho = random_density(3, rng);
    CHECK(min_eig(soft.apply(rho)) >= eps / 3.0 - 1e-12);
}

TEST_CASE("named maps act as documented") {
    Rng rng(67);
    Matrix x = random_hermitian(3, rng);

    LinearMatrixMap id = named_map("identity", 3);
    CHECK((id.apply(x) - x).norm() <= 1e-13);

    LinearMatrixMap dep = named_map("full_depolarizer", 3);
    Matrix want = x.trace() * Matrix::Identity(3, 3) / 3.0;
    CHECK((dep.apply(x) - want).norm() <= 1e-12);

    LinearMatrixMap t = named_map("transpose", 3);
    CHECK((t.apply(x) - x.transpose()).norm() <= 1e-13);

    CHECK_THROWS_AS(named_map("choi_schwarz", 3), ParamError);
    CHECK_THROWS_AS(named_map("no_such_map", 2), ParamError);
}
