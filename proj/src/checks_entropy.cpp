#include "check_common.hpp"

// multi-party entropy inequalities, equality families, dilation and
// averaging identities, and divergence monotonicity checks

namespace traceforge::checks {

namespace {

Matrix tripartite_density(const std::vector<int>& dims, Rng& rng) {
    int big = dims[0] * dims[1] * dims[2];
    return sample_spectral_density(big, big, rng);
}

// sum_j p_j rho1_j (x) E_jj (x) rho3_j; the middle factor is classical,
// which makes the strong subadditivity gap vanish
Matrix classical_middle_state(const std::vector<int>& dims, Rng& rng) {
    const int n1 = dims[0], n2 = dims[1], n3 = dims[2];
    RealVector p(n2);
    for (int j = 0; j < n2; ++j) p[j] = 0.1 + rng.uniform();
    p /= p.sum();
    Matrix rho = Matrix::Zero(n1 * n2 * n3, n1 * n2 * n3);
    for (int j = 0; j < n2; ++j) {
        Matrix ejj = Matrix::Zero(n2, n2);
        ejj(j, j) = 1.0;
        Matrix r1 = sample_spectral_density(n1, n1, rng);
        Matrix r3 = sample_spectral_density(n3, n3, rng);
        rho += p[j] * kron(r1, kron(ejj, r3));
    }
    return rho;
}

Matrix maximally_entangled_pair() {
    Vector v = Vector::Zero(4);
    v[0] = v[3] = 0.7071067811865475244;
    return v * v.adjoint();
}

Matrix ghz_state() {
    Vector v = Vector::Zero(8);
    v[0] = v[7] = 0.7071067811865475244;
    return v * v.adjoint();
}

CheckDef def_ssa() {
    return slack_check(
        "ssa", "S_12 + S_23 >= S_123 + S_2, with equality on states whose "
        "middle factor is classical",
        {{{2, 2, 2}, 250, CheckStatus::pass, ""},
         {{2, 3, 2}, 250, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 3, "ssa");
            return [dims](Rng& rng, long idx, bool want) {
                Matrix rho = (idx % 5 == 4) ? classical_middle_state(dims, rng)
                                            : tripartite_density(dims, rng);
                auto ev = subsystem_entropies(DensityMatrix(rho),
                                              FactorDims{dims});
                double gap = ev.s12 + ev.s23 - ev.s123 - ev.s2;
                TrialOut out;
                out.slack = scaled(gap, std::max({ev.s12, ev.s23, ev.s123,
                                                  ev.s2}));
                if (want) {
                    out.witness = {{"rho", rho}};
                    out.aux = {{"gap", gap}};
                }
                return out;
            };
        });
}

CheckDef def_subadditivity() {
    return slack_check(
        "subadditivity",
        "S_1 + S_2 >= S_12, with equality on product states",
        {{{3, 3}, 300, CheckStatus::pass, ""},
         {{2, 4}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "subadditivity");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                Matrix rho;
                if (idx % 6 == 5) {
                    rho = kron(sample_spectral_density(n, n, rng),
                               sample_spectral_density(m, m, rng));
                } else {
                    rho = sample_spectral_density(n * m, n * m, rng);
                }
                FactorDims fd{{n, m}};
                double s12 = von_neumann(PsdMatrix(rho));
                double s1 = von_neumann(PsdMatrix(partial_trace(rho, fd, {1})));
                double s2 = von_neumann(PsdMatrix(partial_trace(rho, fd, {0})));
                TrialOut out;
                out.slack = scaled(s1 + s2 - s12, std::max({s1, s2, s12}));
                if (want) out.witness = {{"rho", rho}};
                return out;
            };
        });
}

// negative conditional entropy as a convex positively homogeneous
// functional on unnormalized two-factor states
CheckDef def_cond_entropy_convexity() {
    return slack_check(
        "cond_entropy_convexity",
        "A -> S(tr_1 A) - S(A) is convex and homogeneous of degree one on "
        "positive two-factor matrices (equivalent to ssa by purification)",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{2, 2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "cond_entropy_convexity");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                const int big = n * m;
                FactorDims fd{{n, m}};
                auto draw = [&]() -> Matrix {
                    return (0.5 + 1.5 * rng.uniform()) *
                           sample_spectral_pd(big, rng);
                };
                Matrix a1 = draw();
                Matrix a2 = idx % 25 == 24 ? a1 : draw();
                auto f = [&](const Matrix& a) {
                    return von_neumann(PsdMatrix(partial_trace(a, fd, {0}))) -
                           von_neumann(PsdMatrix(a));
                };
                double f1 = f(a1), f2 = f(a2), fm = f(midpoint(a1, a2));
                double fh = f(2.0 * a1);
                double homog_slack =
                    1e-8 - std::abs(fh - 2.0 * f1) / (1.0 + std::abs(fh));
                TrialOut out;
                out.slack = std::min(convex_slack(f1, f2, fm), homog_slack);
                if (want) out.witness = {{"a1", a1}, {"a2", a2}};
                return out;
            };
        });
}

CheckDef def_weak_ssa() {
    return slack_check(
        "weak_ssa",
        "S_12 + S_23 >= S_123 - log tr[rho_2^2]",
        {{{2, 2, 2}, 250, CheckStatus::pass, ""},
         {{2, 3, 2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 3, "weak_ssa");
            return [dims](Rng& rng, long, bool want) {
                Matrix rho = tripartite_density(dims, rng);
                auto ev = subsystem_entropies(DensityMatrix(rho),
                                              FactorDims{dims});
                Matrix rho2 = partial_trace(rho, FactorDims{dims}, {0, 2});
                double purity = std::real((rho2 * rho2).trace());
                double gap = ev.s12 + ev.s23 - ev.s123 + std::log(purity);
                TrialOut out;
                out.slack = scaled(gap, std::max({ev.s12, ev.s23, ev.s123}));
                if (want) {
                    out.witness = {{"rho", rho}};
                    out.aux = {{"purity", purity}};
                }
                return out;
            };
        });
}

CheckDef def_araki_lieb_triangle() {
    return slack_check(
        "araki_lieb_triangle", "|S_1 - S_2| <= S_12",
        {{{3, 3}, 300, CheckStatus::pass, ""},
         {{2, 4}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "araki_lieb_triangle");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                const int big = n * m;
                Matrix rho;
                if (idx % 4 == 3) {
                    Vector v = random_unit_vector(big, rng);
                    rho = v * v.adjoint();
                } else {
                    rho = sample_spectral_density(big, big, rng);
                }
                FactorDims fd{{n, m}};
                double s12 = von_neumann(PsdMatrix(rho));
                double s1 = von_neumann(PsdMatrix(partial_trace(rho, fd, {1})));
                double s2 = von_neumann(PsdMatrix(partial_trace(rho, fd, {0})));
                TrialOut out;
                out.slack = scaled(s12 - std::abs(s1 - s2),
                                   std::max({s12, s1, s2}));
                if (want) out.witness = {{"rho", rho}};
                return out;
            };
        });
}

CheckDef def_pure_marginals() {
    return slack_check(
        "pure_marginals",
        "both marginal entropies of a pure two-factor state coincide",
        {{{3, 3}, 100, CheckStatus::pass, ""},
         {{2, 4}, 100, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "pure_marginals");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long, bool want) {
                Vector v = random_unit_vector(n * m, rng);
                Matrix rho = v * v.adjoint();
                FactorDims fd{{n, m}};
                double s1 = von_neumann(PsdMatrix(partial_trace(rho, fd, {1})));
                double s2 = von_neumann(PsdMatrix(partial_trace(rho, fd, {0})));
                TrialOut out;
                out.slack = 1e-9 - std::abs(s1 - s2);
                if (want) {
                    out.witness = {{"rho", rho}};
                    out.aux = {{"s1", s1}, {"s2", s2}};
                }
                return out;
            };
        });
}

CheckDef def_extended_ssa() {
    return slack_check(
        "extended_ssa",
        "I(1;2|3) >= 2 max{S_1 - S_12, S_2 - S_12, 0}, tight on a "
        "maximally entangled pair tensored with a maximally mixed factor",
        {{{2, 2, 2}, 250, CheckStatus::pass, ""},
         {{2, 2, 3}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 3, "extended_ssa");
            const bool qubits = dims == std::vector<int>{2, 2, 2};
            return [dims, qubits](Rng& rng, long idx, bool want) {
                Matrix rho;
                if (qubits && idx % 10 == 9) {
                    rho = 0.5 * kron(maximally_entangled_pair(),
                                     Matrix::Identity(2, 2));
                } else if (qubits && idx % 10 == 4) {
                    rho = ghz_state();
                } else {
                    rho = tripartite_density(dims, rng);
                }
                FactorDims fd{dims};
                auto ev = subsystem_entropies(DensityMatrix(rho), fd);
                double c = cmi(DensityMatrix(rho), fd);
                double lb = 2.0 * std::max({ev.s1 - ev.s12,
                                            ev.s2 - ev.s12, 0.0});
                TrialOut out;
                out.slack = scaled(c - lb, std::max(std::abs(c), lb));
                if (want) {
                    out.witness = {{"rho", rho}};
                    out.aux = {{"cmi", c}, {"lower_bound", lb}};
                }
                return out;
            };
        });
}

CheckDef def_purification() {
    return slack_check(
        "purification",
        "the symmetric rank-one extension of a density matrix has both of "
        "its marginals equal to the input",
        {{{2}, 200, CheckStatus::pass, ""}, {{3}, 100, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "purification");
            const int base = dims[0];
            return [base](Rng& rng, long idx, bool want) {
                const int n = base + int(idx % 3);
                Matrix rho = sample_spectral_density(n, n, rng);
                Vector v = purify(DensityMatrix(rho));
                Matrix pure = v * v.adjoint();
                FactorDims fd{{n, n}};
                double d1 = (partial_trace(pure, fd, {1}) - rho).norm();
                double d2 = (partial_trace(pure, fd, {0}) - rho).norm();
                TrialOut out;
                out.slack = 1e-10 - std::max(d1, d2);
                if (want) {
                    out.witness = {{"rho", rho}, {"pure", pure}};
                    out.aux = {{"marginal_defect", std::max(d1, d2)}};
                }
                return out;
            };
        });
}

CheckDef def_squashed_lb() {
    return slack_check(
        "squashed_lb",
        "half the conditional mutual information of any extension "
        "dominates max{S_1 - S_12, S_2 - S_12, 0} of the reduced state",
        {{{2, 2, 2}, 250, CheckStatus::pass, ""},
         {{2, 3, 2}, 250, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 3, "squashed_lb");
            return [dims](Rng& rng, long, bool want) {
                Matrix rho = tripartite_density(dims, rng);
                FactorDims fd3{dims};
                Matrix rho12 = partial_trace(rho, fd3, {2});
                double c = cmi(DensityMatrix(rho), fd3);
                double lb = squashed_lb(DensityMatrix(rho12),
                                        FactorDims{{dims[0], dims[1]}});
                TrialOut out;
                out.slack = scaled(0.5 * c - lb,
                                   std::max(std::abs(0.5 * c), lb));
                if (want) {
                    out.witness = {{"rho", rho}};
                    out.aux = {{"cmi", c}, {"lower_bound", lb}};
                }
                return out;
            };
        });
}

CheckDef def_wy_skew_convexity() {
    return slack_check(
        "wy_skew_convexity",
        "rho -> tr[H^2 rho] - tr[H rho^{1/2} H rho^{1/2}] is convex in rho",
        {{{3}, 300, CheckStatus::pass, ""}, {{4}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "wy_skew_convexity");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                Matrix h = random_hermitian(n, rng);
                Matrix r1 = sample_spectral_density(n, n, rng);
                Matrix r2 = idx % 25 == 24
                                ? r1
                                : sample_spectral_density(n, n, rng);
                auto f = [&](const Matrix& r) {
                    return skew_information(PsdMatrix(r), h);
                };
                double f1 = f(r1), f2 = f(r2), fm = f(midpoint(r1, r2));
                TrialOut out;
                out.slack = convex_slack(f1, f2, fm);
                if (want) out.witness = {{"h", h}, {"rho1", r1}, {"rho2", r2}};
                return out;
            };
        });
}

CheckDef def_wy_block_identity() {
    return slack_check(
        "wy_block_identity",
        "for the block state diag(Y, X) and the off-diagonal observable "
        "built from K, tr[H rho^{1/2} H rho^{1/2}] = 2 Re tr[K' Y^{1/2} K "
        "X^{1/2}]",
        {{{3}, 200, CheckStatus::pass, ""}, {{2}, 100, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "wy_block_identity");
            const int n = dims[0];
            return [n](Rng& rng, long, bool want) {
                Matrix x = sample_spectral_psd(n, n, 0.02, 1.0, rng);
                Matrix y = sample_spectral_psd(n, n, 0.02, 1.0, rng);
                Matrix k = random_ginibre(n, n, rng);
                Matrix rho = Matrix::Zero(2 * n, 2 * n);
                rho.topLeftCorner(n, n) = y;
                rho.bottomRightCorner(n, n) = x;
                Matrix h = Matrix::Zero(2 * n, 2 * n);
                h.topRightCorner(n, n) = k;
                h.bottomLeftCorner(n, n) = k.adjoint();
                Matrix s = sqrt_psd(PsdMatrix(rho));
                double lhs = std::real((h * s * h * s).trace());
                double rhs = 2.0 * std::real((k.adjoint() *
                                              sqrt_psd(PsdMatrix(y)) * k *
                                              sqrt_psd(PsdMatrix(x)))
                                                 .trace());
                TrialOut out;
                out.slack = 1e-10 * (1.0 + std::abs(rhs)) -
                            std::abs(lhs - rhs);
                if (want) {
                    out.witness = {{"x", x}, {"y", y}, {"k", k}};
                    out.aux = {{"lhs", lhs}, {"rhs", rhs}};
                }
                return out;
            };
        });
}

CheckDef def_uhlmann_average() {
    return slack_check(
        "uhlmann_average",
        "averaging conjugation over the m^2 shift-and-phase unitaries "
        "equals 1/m times the block embedding of the block sum",
        {{{2, 2}, 99, CheckStatus::pass, ""},
         {{2, 3}, 45, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "uhlmann_average");
            const int m0 = dims[0], n0 = dims[1];
            return [m0, n0](Rng& rng, long idx, bool want) {
                const int m = m0 + int(idx % 9) / 3;
                const int n = n0 + int(idx % 9) % 3;
                auto us = uhlmann_unitaries(m, n);
                Matrix y = random_ginibre(m * n, m * n, rng);
                Matrix avg = Matrix::Zero(m * n, m * n);
                for (const auto& u : us) avg += u.adjoint() * y * u;
                avg /= double(us.size());
                Matrix target =
                    block_embed(block_embed_adjoint(y, m), m) / double(m);
                double defect = (avg - target).norm();
                TrialOut out;
                out.slack = 1e-12 * (1.0 + y.norm()) - defect;
                if (want) {
                    out.witness = {{"y", y}};
                    out.aux = {{"defect", defect}, {"m", double(m)},
                               {"n", double(n)}};
                }
                return out;
            };
        });
}

CheckDef def_uhlmann_commute() {
    return slack_check(
        "uhlmann_commute",
        "each shift-and-phase unitary commutes with every block-embedded "
        "matrix",
        {{{2, 2}, 90, CheckStatus::pass, ""},
         {{3, 2}, 45, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "uhlmann_commute");
            const int m0 = dims[0], n0 = dims[1];
            return [m0, n0](Rng& rng, long idx, bool want) {
                const int m = m0 + int(idx % 9) / 3;
                const int n = n0 + int(idx % 9) % 3;
                auto us = uhlmann_unitaries(m, n);
                Matrix a = random_ginibre(n, n, rng);
                Matrix pa = block_embed(a, m);
                double worst = 0.0;
                for (const auto& u : us)
                    worst = std::max(worst, (u * pa - pa * u).norm());
                TrialOut out;
                out.slack = 1e-12 * (1.0 + pa.norm()) - worst;
                if (want) {
                    out.witness = {{"a", a}};
                    out.aux = {{"worst_commutator", worst},
                               {"m", double(m)}, {"n", double(n)}};
                }
                return out;
            };
        });
}

CheckDef def_stinespring_roundtrip() {
    return slack_check(
        "stinespring_roundtrip",
        "every completely positive unital map is the corner of a unitary "
        "conjugation on a block space, in both the forward and adjoint "
        "forms",
        {{{2, 2}, 50, CheckStatus::pass, ""},
         {{2, 3}, 30, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "stinespring_roundtrip");
            const int n0 = dims[0], m0 = dims[1];
            return [n0, m0](Rng& rng, long idx, bool want) {
                static const int cyc[][2] = {
                    {0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}};
                const int n = n0 + cyc[idx % 5][0];
                const int m = m0 + cyc[idx % 5][1];
                const int n_kraus =
                    std::max(2 + int(idx % 3), (m + n - 1) / n);
                KrausChannel phi = sample_channel(ChannelKind::cp_unital, n,
                                                  m, n_kraus, rng);
                auto fac = stinespring_factorize(phi, rng.next_u64());
                double worst = std::max(fac.corner_defect,
                                        fac.adjoint_defect);
                TrialOut out;
                out.slack = 1e-9 - worst;
                if (want) {
                    out.witness = {{"unitary", fac.unitary},
                                   {"choi", choi_matrix(phi)}};
                    out.aux = {{"corner_defect", fac.corner_defect},
                               {"adjoint_defect", fac.adjoint_defect},
                               {"env_dim", double(fac.env_dim)}};
                }
                return out;
            };
        });
}

CheckDef def_bs_dpi() {
    return slack_check(
        "bs_dpi",
        "the divergence tr[Y log(Y^{1/2} X^{-1} Y^{1/2})] never increases "
        "under the adjoint of a unital positive map",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{2, 2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "bs_dpi");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                KrausChannel phi =
                    sample_channel(ChannelKind::cp_unital, n, m, 2, rng);
                const bool transposed = (idx % 4 == 3);
                Matrix x = (0.5 + 1.5 * rng.uniform()) *
                           sample_spectral_pd(m, rng);
                Matrix y = (0.5 + 1.5 * rng.uniform()) *
                           sample_spectral_pd(m, rng);
                auto pull_back = [&](const KrausChannel& adj,
                                     const Matrix& z) {
                    return transposed ? adj.apply(z.transpose().eval())
                                      : adj.apply(z);
                };
                KrausChannel adj = phi.adjoint();
                Matrix ax = pull_back(adj, x), ay = pull_back(adj, y);
                TrialOut out;
                if (needs_smoothing(ax) || needs_smoothing(ay)) {
                    out.resampled = 1;
                    adj = smooth_unital(phi, 1e-6).adjoint();
                    ax = pull_back(adj, x);
                    ay = pull_back(adj, y);
                }
                double full = bs_entropy(PsdMatrix(y), PsdMatrix(x));
                double reduced = bs_entropy(PsdMatrix(ay), PsdMatrix(ax));
                out.slack = scaled(full - reduced,
                                   std::max(std::abs(full),
                                            std::abs(reduced)));
                if (want) {
                    out.witness = {{"x", x}, {"y", y},
                                   {"choi", choi_matrix(phi)}};
                    out.aux = {{"transposed", transposed ? 1.0 : 0.0}};
                }
                return out;
            };
        });
}

CheckDef def_sandwiched_dpi() {
    return slack_check(
        "sandwiched_dpi",
        "the sandwiched divergence of order alpha in (1,2] never "
        "increases under the adjoint of a completely positive unital map",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{2, 2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "sandwiched_dpi");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                static const double alphas[] = {1.25, 1.5, 2.0};
                const double alpha = alphas[idx % 3];
                KrausChannel phi =
                    sample_channel(ChannelKind::cp_unital, n, m, 2, rng);
                Matrix rho = sample_spectral_density(m, m, rng);
                Matrix sig = sample_spectral_density(m, m, rng);
                KrausChannel adj = phi.adjoint();
                Matrix ar = adj.apply(rho), as = adj.apply(sig);
                TrialOut out;
                if (needs_smoothing(ar) || needs_smoothing(as)) {
                    out.resampled = 1;
                    adj = smooth_unital(phi, 1e-6).adjoint();
                    ar = adj.apply(rho);
                    as = adj.apply(sig);
                }
                double full = sandwiched_renyi(PsdMatrix(rho), PsdMatrix(sig),
                                               alpha);
                double reduced = sandwiched_renyi(PsdMatrix(ar), PsdMatrix(as),
                                                  alpha);
                out.slack = scaled(full - reduced,
                                   std::max(std::abs(full),
                                            std::abs(reduced)));
                if (want) {
                    out.witness = {{"rho", rho}, {"sigma", sig},
                                   {"choi", choi_matrix(phi)}};
                    out.aux = {{"alpha", alpha}};
                }
                return out;
            };
        });
}

CheckDef def_donald_identity() {
    return slack_check(
        "donald_identity",
        "the eigenpair-overlap divergence equals relative entropy plus the "
        "trace gap",
        {{{4}, 200, CheckStatus::pass, ""}, {{3}, 100, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "donald_identity");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                Matrix x = (idx % 4 == 3)
                               ? sample_spectral_psd(n, n - 1, 0.02, 1.0, rng)
                               : (0.5 + 1.5 * rng.uniform()) *
                                     sample_spectral_pd(n, rng);
                Matrix y = (0.5 + 1.5 * rng.uniform()) *
                           sample_spectral_pd(n, rng);
                auto don = donald_entropy(PsdMatrix(x), PsdMatrix(y));
                auto ume = umegaki(PsdMatrix(x), PsdMatrix(y));
                if (!don.support_condition_met || !ume.support_condition_met)
                    throw SolverError("support condition unexpectedly "
                                      "violated");
                double expect = ume.value + std::real(y.trace()) -
                                std::real(x.trace());
                double defect = std::abs(don.value - expect) /
                                (1.0 + std::abs(don.value));
                TrialOut out;
                out.slack = 1e-9 - defect;
                if (want) {
                    out.witness = {{"x", x}, {"y", y}};
                    out.aux = {{"overlap_form", don.value},
                               {"entropy_form", expect}};
                }
                return out;
            };
        });
}

} // namespace

void register_entropy_checks(std::vector<CheckDef>& out) {
    out.push_back(def_ssa());
    out.push_back(def_subadditivity());
    out.push_back(def_cond_entropy_convexity());
    out.push_back(def_weak_ssa());
    out.push_back(def_araki_lieb_triangle());
    out.push_back(def_pure_marginals());
    out.push_back(def_extended_ssa());
    out.push_back(def_purification());
    out.push_back(def_squashed_lb());
    out.push_back(def_wy_skew_convexity());
    out.push_back(def_wy_block_identity());
    out.push_back(def_uhlmann_average());
    out.push_back(def_uhlmann_commute());
    out.push_back(def_stinespring_roundtrip());
    out.push_back(def_bs_dpi());
    out.push_back(def_sandwiched_dpi());
    out.push_back(def_donald_identity());
}

} // namespace traceforge::checks
