#include "check_common.hpp"

// trace-functional convexity, concavity, and channel monotonicity checks

namespace traceforge::checks {

namespace {

Matrix scaled_pd(int n, Rng& rng) {
    return (0.5 + 1.5 * rng.uniform()) * sample_spectral_pd(n, rng);
}

double trace_form(const Matrix& k, const Matrix& left, const Matrix& right) {
    return std::real((k.adjoint() * left * k * right).trace());
}

CheckDef def_lieb_concavity() {
    return slack_check(
        "lieb_concavity",
        "(X,Y) -> tr[K' Y^s K X^t] is jointly concave for s,t >= 0, "
        "s + t <= 1",
        {{{3}, 300, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "lieb_concavity");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                static const double ts[] = {0.3, 0.5, 0.7};
                const double t = ts[idx % 3], s = 1.0 - t;
                Matrix x1 = scaled_pd(n, rng), y1 = scaled_pd(n, rng);
                Matrix x2 = idx % 25 == 24 ? x1 : scaled_pd(n, rng);
                Matrix y2 = idx % 25 == 24 ? y1 : scaled_pd(n, rng);
                Matrix k = random_ginibre(n, n, rng);
                auto f = [&](const Matrix& x, const Matrix& y) {
                    return trace_form(k, power_psd(PsdMatrix(y), s),
                                      power_psd(PsdMatrix(x), t));
                };
                double f1 = f(x1, y1), f2 = f(x2, y2);
                double fm = f(midpoint(x1, x2), midpoint(y1, y2));
                TrialOut out;
                out.slack = concave_slack(f1, f2, fm);
                if (want) {
                    out.witness = {{"x1", x1}, {"x2", x2}, {"y1", y1},
                                   {"y2", y2}, {"k", k}};
                    out.aux = {{"t", t}};
                }
                return out;
            };
        });
}

CheckDef def_lieb_neg_powers_convexity() {
    return slack_check(
        "lieb_neg_powers_convexity",
        "(X,Y,K) -> tr[K' Y^-s K X^-t] is jointly convex for s,t >= 0, "
        "s + t <= 1",
        {{{3}, 300, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "lieb_neg_powers_convexity");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                static const double ps[][2] = {
                    {0.5, 0.5}, {0.25, 0.5}, {0.7, 0.3}};
                const double s = ps[idx % 3][0], t = ps[idx % 3][1];
                const bool same = idx % 25 == 24;
                Matrix x1 = scaled_pd(n, rng), y1 = scaled_pd(n, rng);
                Matrix k1 = random_ginibre(n, n, rng);
                Matrix x2 = same ? x1 : scaled_pd(n, rng);
                Matrix y2 = same ? y1 : scaled_pd(n, rng);
                Matrix k2 = same ? k1 : random_ginibre(n, n, rng);
                auto f = [&](const Matrix& x, const Matrix& y,
                             const Matrix& k) {
                    return trace_form(k, power_psd(PsdMatrix(y), -s),
                                      power_psd(PsdMatrix(x), -t));
                };
                double f1 = f(x1, y1, k1), f2 = f(x2, y2, k2);
                double fm = f(midpoint(x1, x2), midpoint(y1, y2),
                              midpoint(k1, k2));
                TrialOut out;
                out.slack = convex_slack(f1, f2, fm);
                if (want) {
                    out.witness = {{"x1", x1}, {"x2", x2}, {"y1", y1},
                                   {"y2", y2}, {"k1", k1}, {"k2", k2}};
                    out.aux = {{"s", s}, {"t", t}};
                }
                return out;
            };
        });
}

CheckDef def_map_convexity() {
    return slack_check(
        "map_convexity",
        "(X,Y,K) -> integral of tr[K' (s+Y)^-1 K (s+X)^-1] ds is jointly "
        "convex",
        {{{3}, 300, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "map_convexity");
            const int n = dims[0];
            auto lm = make_log_mean();
            return [n, lm](Rng& rng, long idx, bool want) {
                const bool same = idx % 25 == 24;
                Matrix x1 = scaled_pd(n, rng), y1 = scaled_pd(n, rng);
                Matrix k1 = random_ginibre(n, n, rng);
                Matrix x2 = same ? x1 : scaled_pd(n, rng);
                Matrix y2 = same ? y1 : scaled_pd(n, rng);
                Matrix k2 = same ? k1 : random_ginibre(n, n, rng);
                auto f = [&](const Matrix& x, const Matrix& y,
                             const Matrix& k) {
                    return gf_inv_quadratic(lm.eval, PsdMatrix(x),
                                            PsdMatrix(y), k);
                };
                double f1 = f(x1, y1, k1), f2 = f(x2, y2, k2);
                double fm = f(midpoint(x1, x2), midpoint(y1, y2),
                              midpoint(k1, k2));
                TrialOut out;
                out.slack = convex_slack(f1, f2, fm);
                if (want)
                    out.witness = {{"x1", x1}, {"x2", x2}, {"y1", y1},
                                   {"y2", y2}, {"k1", k1}, {"k2", k2}};
                return out;
            };
        });
}

CheckDef def_rel_entropy_joint_convexity() {
    return slack_check(
        "rel_entropy_joint_convexity",
        "(X,Y) -> tr[X(log X - log Y)] is jointly convex on pairs of "
        "positive matrices",
        {{{3}, 300, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "rel_entropy_joint_convexity");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                auto draw_x = [&] {
                    if (idx % 4 == 3 && n > 1)
                        return sample_spectral_psd(n, n - 1, 0.02, 1.0, rng);
                    return scaled_pd(n, rng);
                };
                const bool same = idx % 25 == 24;
                Matrix x1 = draw_x(), y1 = scaled_pd(n, rng);
                Matrix x2 = same ? x1 : draw_x();
                Matrix y2 = same ? y1 : scaled_pd(n, rng);
                auto f = [](const Matrix& x, const Matrix& y) {
                    auto d = umegaki(PsdMatrix(x), PsdMatrix(y));
                    if (!d.support_condition_met)
                        throw SolverError("support condition unexpectedly "
                                          "violated");
                    return d.value;
                };
                double f1 = f(x1, y1), f2 = f(x2, y2);
                double fm = f(midpoint(x1, x2), midpoint(y1, y2));
                TrialOut out;
                out.slack = convex_slack(f1, f2, fm);
                if (want)
                    out.witness = {{"x1", x1}, {"x2", x2}, {"y1", y1},
                                   {"y2", y2}};
                return out;
            };
        });
}

CheckDef def_ando_convexity() {
    return slack_check(
        "ando_convexity",
        "(X,Y) -> tr[K' X^q K Y^-r] is jointly convex for 1 <= q <= 2, "
        "0 <= r <= 1, q - r >= 1",
        {{{3}, 300, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "ando_convexity");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                static const double qr[][2] = {{1.5, 0.5}, {2.0, 1.0}};
                const double q = qr[idx % 2][0], r = qr[idx % 2][1];
                const bool same = idx % 25 == 24;
                Matrix x1 = scaled_pd(n, rng), y1 = scaled_pd(n, rng);
                Matrix x2 = same ? x1 : scaled_pd(n, rng);
                Matrix y2 = same ? y1 : scaled_pd(n, rng);
                Matrix k = random_ginibre(n, n, rng);
                auto f = [&](const Matrix& x, const Matrix& y) {
                    return trace_form(k, power_psd(PsdMatrix(x), q),
                                      power_psd(PsdMatrix(y), -r));
                };
                double f1 = f(x1, y1), f2 = f(x2, y2);
                double fm = f(midpoint(x1, x2), midpoint(y1, y2));
                TrialOut out;
                out.slack = convex_slack(f1, f2, fm);
                if (want) {
                    out.witness = {{"x1", x1}, {"x2", x2}, {"y1", y1},
                                   {"y2", y2}, {"k", k}};
                    out.aux = {{"q", q}, {"r", r}};
                }
                return out;
            };
        });
}

CheckDef def_mono_L1() {
    return slack_check(
        "mono_L1",
        "tr[P(K)' Y^{1-t} P(K) X^t] <= tr[K' P*(Y)^{1-t} K P*(X)^t] for "
        "completely positive unital P",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{3, 2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "mono_L1");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                static const double ts[] = {0.25, 0.5, 0.75};
                const double t = ts[idx % 3];
                KrausChannel phi = sample_channel(ChannelKind::cp_unital, n,
                                                  m, 2 + int(idx % 2), rng);
                Matrix x = scaled_pd(m, rng), y = scaled_pd(m, rng);
                Matrix k = random_ginibre(n, n, rng);
                Matrix pk = phi.apply(k);
                double lhs = trace_form(pk, power_psd(PsdMatrix(y), 1.0 - t),
                                        power_psd(PsdMatrix(x), t));
                KrausChannel adj = phi.adjoint();
                double rhs = trace_form(
                    k, power_psd(PsdMatrix(adj.apply(y)), 1.0 - t),
                    power_psd(PsdMatrix(adj.apply(x)), t));
                TrialOut out;
                out.slack = scaled(rhs - lhs, std::max(std::abs(lhs),
                                                       std::abs(rhs)));
                if (want) {
                    out.witness = {{"x", x}, {"y", y}, {"k", k},
                                   {"choi", choi_matrix(phi)}};
                    out.aux = {{"t", t}};
                }
                return out;
            };
        });
}

CheckDef def_mono_L2() {
    return slack_check(
        "mono_L2",
        "tr[P*(K)' P*(Y)^{t-1} P*(K) P*(X)^{-t}] <= tr[K' Y^{t-1} K X^{-t}] "
        "for completely positive unital P, after smoothing the adjoint",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{3, 2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "mono_L2");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                static const double ts[] = {0.25, 0.5, 0.75};
                const double t = ts[idx % 3];
                double eps = 1e-6;
                if (idx % 10 == 3) eps = 1e-4;
                if (idx % 10 == 7) eps = 1e-8;
                KrausChannel phi = smooth_unital(
                    sample_channel(ChannelKind::cp_unital, n, m, 2, rng),
                    eps);
                Matrix x = scaled_pd(m, rng), y = scaled_pd(m, rng);
                Matrix k = random_ginibre(m, m, rng);
                double rhs = trace_form(k, power_psd(PsdMatrix(y), t - 1.0),
                                        power_psd(PsdMatrix(x), -t));
                KrausChannel adj = phi.adjoint();
                Matrix ak = adj.apply(k);
                double lhs = trace_form(
                    ak, power_psd(PsdMatrix(adj.apply(y)), t - 1.0),
                    power_psd(PsdMatrix(adj.apply(x)), -t));
                TrialOut out;
                out.slack = scaled(rhs - lhs, std::max(std::abs(lhs),
                                                       std::abs(rhs)));
                if (want) {
                    out.witness = {{"x", x}, {"y", y}, {"k", k},
                                   {"choi", choi_matrix(phi)}};
                    out.aux = {{"t", t}, {"eps", eps}};
                }
                return out;
            };
        });
}

CheckDef def_mono_L3() {
    return slack_check(
        "mono_L3",
        "the resolvent-integral form contracts under the adjoint of a "
        "completely positive unital map",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{3, 2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "mono_L3");
            const int n = dims[0], m = dims[1];
            auto lm = make_log_mean();
            return [n, m, lm](Rng& rng, long, bool want) {
                KrausChannel phi =
                    sample_channel(ChannelKind::cp_unital, n, m, 2, rng);
                Matrix x = scaled_pd(m, rng), y = scaled_pd(m, rng);
                Matrix k = random_ginibre(m, m, rng);
                TrialOut out;
                KrausChannel adj = phi.adjoint();
                Matrix ax = adj.apply(x), ay = adj.apply(y);
                if (needs_smoothing(ax) || needs_smoothing(ay)) {
                    out.resampled = 1;
                    adj = smooth_unital(phi, 1e-6).adjoint();
                    ax = adj.apply(x);
                    ay = adj.apply(y);
                }
                double rhs =
                    gf_inv_quadratic(lm.eval, PsdMatrix(x), PsdMatrix(y), k);
                double lhs = gf_inv_quadratic(lm.eval, PsdMatrix(ax),
                                              PsdMatrix(ay), adj.apply(k));
                out.slack = scaled(rhs - lhs, std::max(std::abs(lhs),
                                                       std::abs(rhs)));
                if (want)
                    out.witness = {{"x", x}, {"y", y}, {"k", k},
                                   {"choi", choi_matrix(phi)}};
                return out;
            };
        });
}

CheckDef def_dpi() {
    return slack_check(
        "dpi",
        "relative entropy never increases under the adjoint of a "
        "completely positive unital map",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{3, 2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "dpi");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                KrausChannel phi =
                    sample_channel(ChannelKind::cp_unital, n, m, 2, rng);
                Matrix x = (idx % 4 == 3)
                               ? sample_spectral_psd(m, m - 1, 0.02, 1.0, rng)
                               : scaled_pd(m, rng);
                Matrix y = scaled_pd(m, rng);
                KrausChannel adj = phi.adjoint();
                auto dy = umegaki(PsdMatrix(x), PsdMatrix(y));
                auto dx = umegaki(PsdMatrix(adj.apply(x)),
                                  PsdMatrix(adj.apply(y)));
                if (!dy.support_condition_met || !dx.support_condition_met)
                    throw SolverError("support condition unexpectedly "
                                      "violated");
                TrialOut out;
                out.slack = scaled(dy.value - dx.value,
                                   std::max(std::abs(dy.value),
                                            std::abs(dx.value)));
                if (want)
                    out.witness = {{"x", x}, {"y", y},
                                   {"choi", choi_matrix(phi)}};
                return out;
            };
        });
}

// block embedding run expects the inequality to hold; the general
// cp-unital run is the documented counterexample direction
CheckDef def_ando_mono_restricted() {
    CheckDef d;
    d.id = "ando_mono_restricted";
    d.statement =
        "tr[E(K)' Y^{1+t} E(K) X^{-t}] >= tr[K' E*(Y)^{1+t} K E*(X)^{-t}] "
        "holds for the block embedding E but fails for general completely "
        "positive unital maps";
    d.runs = {{{3, 2}, 250, CheckStatus::pass, ""},
              {{2, 2}, 200, CheckStatus::fail, "cp-unital"}};
    d.execute = [](const RunSpec& spec, const CheckConfig& cfg) {
        expect_dims(spec.dims, 2, "ando_mono_restricted");
        TrialFn fn;
        if (spec.variant == "cp-unital") {
            const int n = spec.dims[0];
            if (spec.dims[0] != spec.dims[1])
                throw ParamError("ando_mono_restricted: the cp-unital run "
                                 "needs square dims");
            fn = [n](Rng& rng, long idx, bool want) {
                static const double ts[] = {0.25, 0.5, 0.75};
                double t = ts[idx % 3];
                KrausChannel phi =
                    (idx == 0)
                        ? depolarizer_kraus(n, n)
                        : sample_channel(ChannelKind::cp_unital, n, n, 2,
                                         rng);
                Matrix x, y, k;
                if (idx == 0 && n == 2) {
                    t = 0.5;
                    x = Matrix::Zero(2, 2);
                    x(0, 0) = 0.7;
                    x(1, 1) = 0.3;
                    y.resize(2, 2);
                    y << 0.5, 0.2, 0.2, 0.5;
                    k = Matrix::Zero(2, 2);
                    k(0, 0) = 1.0;
                    k(1, 1) = -1.0;
                } else {
                    x = scaled_pd(n, rng);
                    y = scaled_pd(n, rng);
                    k = random_traceless_hermitian(n, rng);
                }
                Matrix pk = phi.apply(k);
                double lhs =
                    trace_form(pk, power_psd(PsdMatrix(y), 1.0 + t),
                               power_psd(PsdMatrix(x), -t));
                KrausChannel adj = phi.adjoint();
                double rhs = trace_form(
                    k, power_psd(PsdMatrix(adj.apply(y)), 1.0 + t),
                    power_psd(PsdMatrix(adj.apply(x)), -t));
                TrialOut out;
                out.slack = scaled(lhs - rhs, std::max(std::abs(lhs),
                                                       std::abs(rhs)));
                if (want) {
                    out.witness = {{"x", x}, {"y", y}, {"k", k},
                                   {"choi", choi_matrix(phi)}};
                    out.aux = {{"t", t}, {"violation", rhs - lhs}};
                }
                return out;
            };
        } else {
            const int n = spec.dims[0], m = spec.dims[1];
            fn = [n, m](Rng& rng, long idx, bool want) {
                static const double ts[] = {0.25, 0.5, 0.75};
                const double t = ts[idx % 3];
                const int big = n * m;
                Matrix x = scaled_pd(big, rng);
                Matrix y = (idx % 5 == 4)
                               ? sample_spectral_psd(big, big - 1, 0.02, 1.0,
                                                     rng)
                               : scaled_pd(big, rng);
                Matrix k = random_ginibre(n, n, rng);
                Matrix ek = block_embed(k, m);
                double lhs =
                    trace_form(ek, power_psd(PsdMatrix(y), 1.0 + t),
                               power_psd(PsdMatrix(x), -t));
                double rhs = trace_form(
                    k,
                    power_psd(PsdMatrix(block_embed_adjoint(y, m)), 1.0 + t),
                    power_psd(PsdMatrix(block_embed_adjoint(x, m)), -t));
                TrialOut out;
                out.slack = scaled(lhs - rhs, std::max(std::abs(lhs),
                                                       std::abs(rhs)));
                if (want) {
                    out.witness = {{"x", x}, {"y", y}, {"k", k}};
                    out.aux = {{"t", t}};
                }
                return out;
            };
        }
        return run_slack_trials("ando_mono_restricted", spec, cfg, fn, {});
    };
    return d;
}

CheckDef def_ando_mono_false() {
    CheckDef d = slack_check(
        "ando_mono_false",
        "the unrestricted extension of the block-embedding inequality to "
        "all completely positive unital maps is false; the averaging map "
        "gives an explicit violation",
        {{{2, 2}, 50, CheckStatus::fail, ""},
         {{3, 3}, 50, CheckStatus::fail, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "ando_mono_false");
            if (dims[0] != dims[1])
                throw ParamError("ando_mono_false: dims must be square");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                static const double ts[] = {0.25, 0.5, 0.75};
                double t = (idx == 0) ? 0.5 : ts[idx % 3];
                KrausChannel phi = depolarizer_kraus(n, n);
                Matrix x, y, k;
                if (idx == 0 && n == 2) {
                    x = Matrix::Zero(2, 2);
                    x(0, 0) = 0.7;
                    x(1, 1) = 0.3;
                    y.resize(2, 2);
                    y << 0.5, 0.2, 0.2, 0.5;
                    k = Matrix::Zero(2, 2);
                    k(0, 0) = 1.0;
                    k(1, 1) = -1.0;
                } else {
                    x = DensityMatrix(sample_spectral_density(n, n, rng))
                            .mat();
                    y = DensityMatrix(sample_spectral_density(n, n, rng))
                            .mat();
                    k = random_traceless_hermitian(n, rng);
                }
                Matrix pk = phi.apply(k);
                double lhs =
                    trace_form(pk, power_psd(PsdMatrix(y), 1.0 + t),
                               power_psd(PsdMatrix(x), -t));
                KrausChannel adj = phi.adjoint();
                double rhs = trace_form(
                    k, power_psd(PsdMatrix(adj.apply(y)), 1.0 + t),
                    power_psd(PsdMatrix(adj.apply(x)), -t));
                double try_ = std::real(y.trace()), trx = std::real(x.trace());
                double closed = (1.0 / n) *
                                std::real((k.adjoint() * k).trace()) *
                                std::pow(try_, 1.0 + t) * std::pow(trx, -t);
                if (std::abs(rhs - closed) > 1e-12 * (1.0 + closed))
                    throw SolverError("closed form for the averaged map "
                                      "disagrees with the direct value");
                TrialOut out;
                out.slack = scaled(lhs - rhs, std::max(std::abs(lhs),
                                                       std::abs(rhs)));
                if (want) {
                    out.witness = {{"x", x}, {"y", y}, {"k", k}};
                    out.aux = {{"t", t},
                               {"violation", rhs - lhs},
                               {"closed_form_defect", std::abs(rhs - closed)}};
                }
                return out;
            };
        });
    d.searchable = true;
    return d;
}

CheckDef def_klein() {
    return slack_check(
        "klein",
        "relative entropy of density matrices is nonnegative and vanishes "
        "only at equal arguments",
        {{{3}, 300, CheckStatus::pass, ""},
         {{2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "klein");
            const int n = dims[0];
            return [n](Rng& rng, long, bool want) {
                Matrix x = sample_spectral_density(n, n, rng);
                Matrix y = sample_spectral_density(n, n, rng);
                double d = umegaki(PsdMatrix(x), PsdMatrix(y)).value;
                double dxx = umegaki(PsdMatrix(x), PsdMatrix(x)).value;
                double dist = (x - y).norm();
                double slack = d;
                if (dist >= 1e-4) slack = std::min(slack, d - 1e-10);
                slack = std::min(slack, 1e-10 - std::abs(dxx));
                TrialOut out;
                out.slack = slack;
                if (want) {
                    out.witness = {{"x", x}, {"y", y}};
                    out.aux = {{"divergence", d},
                               {"self_divergence", dxx},
                               {"distance", dist}};
                }
                return out;
            };
        });
}

// directional derivatives of homogeneous-of-degree-one trace functionals:
// for convex F, G(x,y) <= F(y); for concave F the inequality flips
CheckDef def_directional_derivative() {
    CheckDef d;
    d.id = "directional_derivative";
    d.statement =
        "for positively homogeneous F, the directional derivative "
        "G(x,y) = lim (F(x+ty)-F(x))/t satisfies G(x,y) <= F(y) when F is "
        "convex and G(x,y) >= F(y) when F is concave";
    d.runs = {{{2, 3}, 200, CheckStatus::pass, "entropy"},
              {{4}, 200, CheckStatus::pass, "explog"}};
    d.execute = [](const RunSpec& spec, const CheckConfig& cfg) {
        TrialFn fn;
        bool entropy_units = false;
        if (spec.variant == "explog") {
            expect_dims(spec.dims, 1, "directional_derivative");
            const int n = spec.dims[0];
            fn = [n](Rng& rng, long idx, bool want) {
                Matrix h = random_hermitian(n, rng);
                Matrix x = scaled_pd(n, rng), y = scaled_pd(n, rng);
                auto f = [&](const Matrix& z) {
                    return std::real(
                        exp_herm(h + log_pd(z)).trace());
                };
                PsdMatrix px(x);
                Matrix core = exp_herm(h + log_pd(x));
                auto g = [&](const Matrix& dir) {
                    return std::real((core * t_map(px, dir)).trace());
                };
                if (std::abs(g(x) - f(x)) > 1e-8 * (1.0 + std::abs(f(x))))
                    throw SolverError("derivative at the base point does "
                                      "not recover the functional");
                if (idx % 5 == 0) {
                    double dt = 1e-5;
                    double fd = (f(x + dt * y) - f(x - dt * y)) / (2.0 * dt);
                    if (std::abs(fd - g(y)) > 1e-5 * (1.0 + std::abs(g(y))))
                        throw SolverError("directional derivative differs "
                                          "from finite difference");
                }
                TrialOut out;
                double gy = g(y), fy = f(y);
                out.slack = scaled(gy - fy, std::max(std::abs(gy),
                                                     std::abs(fy)));
                if (want) {
                    out.witness = {{"h", h}, {"x", x}, {"y", y}};
                    out.aux = {{"g", gy}, {"f_at_y", fy}};
                }
                return out;
            };
        } else if (spec.variant == "entropy") {
            expect_dims(spec.dims, 2, "directional_derivative");
            const int n = spec.dims[0], m = spec.dims[1];
            fn = [n, m](Rng& rng, long idx, bool want) {
                const int big = n * m;
                FactorDims fd2({n, m});
                Matrix x = scaled_pd(big, rng), y = scaled_pd(big, rng);
                auto f = [&](const Matrix& z) {
                    Matrix z2 = partial_trace(z, fd2, {0});
                    return von_neumann(PsdMatrix(z2)) -
                           von_neumann(PsdMatrix(z));
                };
                auto g = [&](const Matrix& base, const Matrix& dir) {
                    Matrix b2 = partial_trace(base, fd2, {0});
                    Matrix d2 = partial_trace(dir, fd2, {0});
                    return std::real((dir * log_pd(base)).trace()) -
                           std::real((d2 * log_pd(b2)).trace());
                };
                if (std::abs(g(x, x) - f(x)) >
                    1e-8 * (1.0 + std::abs(f(x))))
                    throw SolverError("derivative at the base point does "
                                      "not recover the functional");
                if (idx % 5 == 0) {
                    double dt = 1e-5;
                    double fd = (f(x + dt * y) - f(x - dt * y)) / (2.0 * dt);
                    if (std::abs(fd - g(x, y)) >
                        1e-5 * (1.0 + std::abs(g(x, y))))
                        throw SolverError("directional derivative differs "
                                          "from finite difference");
                }
                TrialOut out;
                double gy = g(x, y), fy = f(y);
                out.slack = scaled(fy - gy, std::max(std::abs(gy),
                                                     std::abs(fy)));
                if (want) {
                    out.witness = {{"x", x}, {"y", y}};
                    out.aux = {{"g", gy}, {"f_at_y", fy}};
                }
                return out;
            };
            entropy_units = true;
        } else {
            throw ParamError("directional_derivative: unknown variant " +
                             spec.variant);
        }
        SlackCheckOpts opts;
        opts.entropy_units = entropy_units;
        return run_slack_trials("directional_derivative", spec, cfg, fn,
                                opts);
    };
    return d;
}

CheckDef def_golden_thompson() {
    return slack_check(
        "golden_thompson", "tr[exp(H+K)] <= tr[exp(H) exp(K)]",
        {{{3}, 300, CheckStatus::pass, ""}, {{4}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "golden_thompson");
            const int n = dims[0];
            return [n](Rng& rng, long, bool want) {
                Matrix h = random_hermitian(n, rng);
                Matrix k = random_hermitian(n, rng);
                double lhs = std::real(exp_herm(h + k).trace());
                double rhs = std::real((exp_herm(h) * exp_herm(k)).trace());
                TrialOut out;
                out.slack = scaled(rhs - lhs, std::max(lhs, rhs));
                if (want) out.witness = {{"h", h}, {"k", k}};
                return out;
            };
        });
}

CheckDef def_peierls_bogoliubov() {
    return slack_check(
        "peierls_bogoliubov",
        "tr[K exp(H)] <= log tr[exp(H+K)] when tr[exp(H)] = 1",
        {{{3}, 300, CheckStatus::pass, ""}, {{4}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "peierls_bogoliubov");
            const int n = dims[0];
            return [n](Rng& rng, long, bool want) {
                Matrix h = random_hermitian(n, rng);
                Matrix k = random_hermitian(n, rng);
                double z = std::real(exp_herm(h).trace());
                h -= std::log(z) * Matrix::Identity(n, n);
                double lhs = std::real((k * exp_herm(h)).trace());
                double rhs = std::log(std::real(exp_herm(h + k).trace()));
                TrialOut out;
                out.slack = scaled(rhs - lhs, std::max(std::abs(lhs),
                                                       std::abs(rhs)));
                if (want) out.witness = {{"h", h}, {"k", k}};
                return out;
            };
        });
}

CheckDef def_triple_matrix() {
    return slack_check(
        "triple_matrix",
        "tr[exp(H+K+L)] <= tr[exp(H) T(exp(L))] with T the derivative of "
        "log at exp(-K)",
        {{{3}, 250, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "triple_matrix");
            const int n = dims[0];
            return [n](Rng& rng, long, bool want) {
                Matrix h = 0.7 * random_hermitian(n, rng);
                Matrix k = 0.7 * random_hermitian(n, rng);
                Matrix l = 0.7 * random_hermitian(n, rng);
                double lhs = std::real(exp_herm(h + k + l).trace());
                PsdMatrix enk(exp_herm(-k));
                Matrix tmapped = t_map(enk, exp_herm(l));
                double rhs = std::real((exp_herm(h) * tmapped).trace());
                TrialOut out;
                out.slack = scaled(rhs - lhs, std::max(lhs, std::abs(rhs)));
                if (want) out.witness = {{"h", h}, {"k", k}, {"l", l}};
                return out;
            };
        });
}

CheckDef def_lieb_explog() {
    return slack_check(
        "lieb_explog", "X -> tr[exp(H + log X)] is concave",
        {{{3}, 300, CheckStatus::pass, ""}, {{4}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "lieb_explog");
            const int n = dims[0];
            return [n](Rng& rng, long, bool want) {
                Matrix h = random_hermitian(n, rng);
                Matrix x1 = scaled_pd(n, rng), x2 = scaled_pd(n, rng);
                auto f = [&](const Matrix& x) {
                    return std::real(exp_herm(h + log_pd(x)).trace());
                };
                double f1 = f(x1), f2 = f(x2), fm = f(midpoint(x1, x2));
                TrialOut out;
                out.slack = concave_slack(f1, f2, fm);
                if (want) out.witness = {{"h", h}, {"x1", x1}, {"x2", x2}};
                return out;
            };
        });
}

CheckDef def_rel_entropy_pt_monotone() {
    return slack_check(
        "rel_entropy_pt_monotone",
        "relative entropy of reduced states is bounded by relative entropy "
        "of the joint states",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{3, 2}, 150, CheckStatus::pass, ""}},
        {true, false, {}},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "rel_entropy_pt_monotone");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                const int big = n * m;
                FactorDims fd2({n, m});
                Matrix rho =
                    (idx % 4 == 3)
                        ? sample_spectral_psd(big, big - 1, 0.02, 1.0, rng)
                        : sample_spectral_psd(big, big, 0.02, 1.0, rng);
                rho /= rho.trace().real();
                Matrix sig = sample_spectral_density(big, big, rng);
                Matrix rho1 = partial_trace(rho, fd2, {1});
                Matrix sig1 = partial_trace(sig, fd2, {1});
                auto d12 = umegaki(PsdMatrix(rho), PsdMatrix(sig));
                auto d1 = umegaki(PsdMatrix(rho1), PsdMatrix(sig1));
                TrialOut out;
                out.slack = scaled(d12.value - d1.value,
                                   std::max(std::abs(d12.value),
                                            std::abs(d1.value)));
                if (want) out.witness = {{"rho", rho}, {"sigma", sig}};
                return out;
            };
        });
}

} // namespace

void register_trace_checks(std::vector<CheckDef>& out) {
    out.push_back(def_lieb_concavity());
    out.push_back(def_lieb_neg_powers_convexity());
    out.push_back(def_map_convexity());
    out.push_back(def_rel_entropy_joint_convexity());
    out.push_back(def_ando_convexity());
    out.push_back(def_mono_L1());
    out.push_back(def_mono_L2());
    out.push_back(def_mono_L3());
    out.push_back(def_dpi());
    out.push_back(def_ando_mono_restricted());
    out.push_back(def_ando_mono_false());
    out.push_back(def_klein());
    out.push_back(def_directional_derivative());
    out.push_back(def_golden_thompson());
    out.push_back(def_peierls_bogoliubov());
    out.push_back(def_triple_matrix());
    out.push_back(def_lieb_explog());
    out.push_back(def_rel_entropy_pt_monotone());
}

} // namespace traceforge::checks
