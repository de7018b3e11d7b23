// trace-norm style functionals: partial-trace norm inequalities, powered
// trace functionals and what happens to them past the convexity range

#include "check_common.hpp"

#include <array>

namespace traceforge::checks {

namespace {

Matrix scaled_pd(int n, Rng& rng) {
    return (0.5 + 1.5 * rng.uniform()) * sample_spectral_pd(n, rng);
}

double upsilon(const Matrix& b, const Matrix& x, double p, double q) {
    Matrix inner = hermitize(b.adjoint() * power_psd(x, p) * b);
    return std::real(power_psd(inner, q / p).trace());
}

//----------------------------------------------------------- two factors

CheckDef def_minkowski_two() {
    return slack_check(
        "minkowski_two",
        "(tr[(tr_1 A)^p])^{1/p} <= tr[(tr_2 A^p)^{1/p}] for p >= 1, with "
        "the reverse for 0 < p <= 1 and equality at p = 1",
        {{{2, 3}, 250, CheckStatus::pass, ""},
         {{2, 2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 2, "minkowski_two");
            const int n = dims[0], m = dims[1];
            return [n, m](Rng& rng, long idx, bool want) {
                static const double up[] = {1.3, 2.0, 3.7, 1.0};
                static const double dn[] = {0.3, 0.6, 0.9};
                const bool fwd = idx % 2 == 0;
                const double p = fwd ? up[(idx / 2) % 4] : dn[(idx / 2) % 3];
                const int nm = n * m;
                Matrix a = (idx % 5 == 4)
                               ? sample_spectral_psd(nm, nm - 2, 0.02, 1.0, rng)
                               : scaled_pd(nm, rng);
                double lhs = std::pow(
                    std::real(
                        power_psd(partial_trace(a, {{n, m}}, {0}), p).trace()),
                    1.0 / p);
                double rhs = std::real(
                    power_psd(partial_trace(power_psd(a, p), {{n, m}}, {1}),
                              1.0 / p)
                        .trace());
                TrialOut out;
                out.slack = scaled(fwd ? rhs - lhs : lhs - rhs,
                                   std::max(std::abs(lhs), std::abs(rhs)));
                if (want) {
                    out.witness = {{"a", a}};
                    out.aux = {{"p", p}, {"lhs", lhs}, {"rhs", rhs}};
                }
                return out;
            };
        });
}

//--------------------------------------------------------- three factors

double mink3_left(const Matrix& a, int d1, int d2, int d3, double p) {
    Matrix t1 = partial_trace(a, {{d1, d2, d3}}, {0});
    Matrix inner = partial_trace(power_psd(t1, p), {{d2, d3}}, {0});
    return std::real(power_psd(inner, 1.0 / p).trace());
}

double mink3_right(const Matrix& a, int d1, int d2, int d3, double p) {
    Matrix inner = partial_trace(power_psd(a, p), {{d1, d2, d3}}, {1});
    return std::real(power_psd(inner, 1.0 / p).trace());
}

CheckDef def_minkowski_three() {
    return slack_check(
        "minkowski_three",
        "tr_3[(tr_2[(tr_1 A)^p])^{1/p}] <= tr_13[(tr_2 A^p)^{1/p}] for "
        "1 <= p <= 2, with the reverse for 0 < p <= 1",
        {{{2, 2, 2}, 250, CheckStatus::pass, ""},
         {{2, 3, 2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 3, "minkowski_three");
            const int d1 = dims[0], d2 = dims[1], d3 = dims[2];
            return [d1, d2, d3](Rng& rng, long idx, bool want) {
                static const double up[] = {1.5, 2.0, 1.0};
                static const double dn[] = {0.5, 0.8};
                const bool fwd = idx % 2 == 0;
                const double p = fwd ? up[(idx / 2) % 3] : dn[(idx / 2) % 2];
                const int total = d1 * d2 * d3;
                Matrix a =
                    (idx % 5 == 4)
                        ? sample_spectral_psd(total, total - 2, 0.02, 1.0, rng)
                        : scaled_pd(total, rng);
                double fl = mink3_left(a, d1, d2, d3, p);
                double fr = mink3_right(a, d1, d2, d3, p);
                TrialOut out;
                out.slack = scaled(fwd ? fr - fl : fl - fr,
                                   std::max(std::abs(fl), std::abs(fr)));
                if (want) {
                    out.witness = {{"a", a}};
                    out.aux = {{"p", p}, {"left", fl}, {"right", fr}};
                }
                return out;
            };
        });
}

//------------------------------------------------------- two-sided search

struct SearchDirection {
    std::string name;
    double best = 0.0;
    long index = -1;
    std::vector<WitnessEntry> witness;
    bool found() const { return index >= 0; }
};

using Candidate = std::vector<WitnessEntry>;
using CandidateFn = std::function<Candidate(Rng&, long)>;
using ScoreFn = std::function<std::array<double, 2>(const Candidate&)>;

// walks seeded candidates until a violation is confirmed in each of the
// two directions; a direction counts as found only when the candidate
// re-scores as a violation on a fresh evaluation
CheckReport run_two_sided_search(
    const std::string& id, const RunSpec& spec, const CheckConfig& cfg,
    const CandidateFn& make, const ScoreFn& score, const char* name_a,
    const char* name_b, const std::string& done_note,
    std::vector<std::pair<std::string, double>> fixed_aux) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.id = id;
    rep.variant = spec.variant;
    rep.dims = spec.dims;
    rep.expected = spec.expected;
    rep.seed = cfg.seed;

    const std::string label = run_label(id, spec);
    const long budget = std::max<long>(
        1, cfg.trials_override.value_or(cfg.search_budget));
    const double floor = std::max(1e-6, cfg.tol / 10.0);

    std::array<SearchDirection, 2> dir{SearchDirection{name_a, 0.0, -1, {}},
                                       SearchDirection{name_b, 0.0, -1, {}}};
    long i = 0;
    for (; i < budget && !(dir[0].found() && dir[1].found()); ++i) {
        Rng rng(trial_seed(cfg, label, i));
        Candidate cand = make(rng, i);
        std::array<double, 2> v;
        try {
            v = score(cand);
        } catch (const Error&) {
            continue;
        }
        for (int k = 0; k < 2; ++k) {
            if (dir[k].found() || !(v[k] > floor)) continue;
            if (!(score(cand)[k] > cfg.tol / 10.0)) continue;
            dir[k].best = v[k];
            dir[k].index = i;
            for (const auto& we : cand)
                dir[k].witness.push_back(
                    {we.name + "_" + dir[k].name, we.value});
        }
    }
    rep.trials_run = i;
    rep.aux = std::move(fixed_aux);
    for (const auto& d : dir)
        rep.aux.push_back({"violation_" + d.name, d.best});
    if (dir[0].found() && dir[1].found()) {
        rep.status = CheckStatus::fail;
        const int weak = dir[0].best <= dir[1].best ? 0 : 1;
        rep.worst_slack = -dir[weak].best;
        rep.worst_index = dir[weak].index;
        rep.note = done_note;
        for (auto& d : dir)
            for (auto& we : d.witness) rep.witness.push_back(std::move(we));
    } else {
        rep.status = CheckStatus::inconclusive;
        std::string got;
        for (const auto& d : dir) {
            if (!d.found()) continue;
            if (!got.empty()) got += ", ";
            got += d.name;
        }
        rep.note = got.empty()
                       ? "search budget exhausted with no violation found"
                       : "search budget exhausted; only the " + got +
                             " direction was found";
    }
    rep.wall_time_ms = check_wall_ms(t0);
    return rep;
}

// zero-pads each tensor factor of a matrix indexed by base up to tgt
Matrix embed_factors(const Matrix& a, const std::vector<int>& base,
                     const std::vector<int>& tgt) {
    const size_t nf = base.size();
    long bn = 1, tn = 1;
    for (size_t f = 0; f < nf; ++f) {
        bn *= base[f];
        tn *= tgt[f];
    }
    auto to_tgt = [&](long ib) {
        std::vector<int> ix(nf);
        for (size_t f = nf; f-- > 0;) {
            ix[f] = int(ib % base[f]);
            ib /= base[f];
        }
        long it = 0;
        for (size_t f = 0; f < nf; ++f) it = it * tgt[f] + ix[f];
        return it;
    };
    Matrix out = Matrix::Zero(tn, tn);
    for (long r = 0; r < bn; ++r)
        for (long c = 0; c < bn; ++c) out(to_tgt(r), to_tgt(c)) = a(r, c);
    return out;
}

// deterministic violation candidates at p = 3 on dims (2, 2, 2), found by
// an offline search over rank-one blocks and rounded to two decimals
Matrix mink3_candidate_high() {
    Eigen::Vector4d v, w;
    v << -0.34, 0.86, -0.14, 0.34;
    w << -0.44, 0.75, 0.19, 0.45;
    v.normalize();
    w.normalize();
    const double s = 0.79;
    Matrix a = Matrix::Zero(8, 8);
    a.topLeftCorner(4, 4) = s * (v * v.transpose()).cast<Complex>();
    a.bottomRightCorner(4, 4) =
        (1.0 - s) * (w * w.transpose()).cast<Complex>();
    return a;
}

// a classical array with non-proportional slices violates the reverse
// direction for every p > 1
Matrix mink3_candidate_low() {
    Matrix a = Matrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) a(i, i) = (i + 1) / 36.0;
    return a;
}

CheckDef def_minkowski_three_p_gt_2() {
    CheckDef d;
    d.id = "minkowski_three_p_gt_2";
    d.statement =
        "for p > 2 the three-factor inequality fails in both directions; "
        "the search exhibits explicit violations at p = 3";
    d.searchable = true;
    d.runs = {{{2, 2, 2}, 100000, CheckStatus::fail, ""},
              {{2, 2, 3}, 100000, CheckStatus::fail, ""}};
    d.execute = [](const RunSpec& spec, const CheckConfig& cfg) {
        expect_dims(spec.dims, 3, "minkowski_three_p_gt_2");
        const int d1 = spec.dims[0], d2 = spec.dims[1], d3 = spec.dims[2];
        const int total = d1 * d2 * d3;
        const double p = 3.0;
        auto make = [=](Rng& rng, long i) -> Candidate {
            if (i == 0)
                return {{"a", embed_factors(mink3_candidate_high(), {2, 2, 2},
                                            spec.dims)}};
            if (i == 1)
                return {{"a", embed_factors(mink3_candidate_low(), {2, 2, 2},
                                            spec.dims)}};
            if (i % 2 == 0) {
                // block-diagonal across the first factor, one real
                // rank-one slice per block
                const int blk = d2 * d3;
                Matrix a = Matrix::Zero(total, total);
                for (int j = 0; j < d1; ++j) {
                    RealVector v = random_ginibre(blk, 1, rng).real();
                    v.normalize();
                    a.block(j * blk, j * blk, blk, blk) =
                        rng.uniform(0.2, 1.0) *
                        (v * v.transpose()).cast<Complex>();
                }
                return {{"a", a}};
            }
            return {{"a", sample_spectral_psd(total, total, 0.05, 1.0, rng)}};
        };
        auto score = [=](const Candidate& c) -> std::array<double, 2> {
            const Matrix& a = c[0].value;
            double fl = mink3_left(a, d1, d2, d3, p);
            double fr = mink3_right(a, d1, d2, d3, p);
            double sc = std::max(std::abs(fl), std::abs(fr));
            return {scaled(fl - fr, sc), scaled(fr - fl, sc)};
        };
        return run_two_sided_search(
            "minkowski_three_p_gt_2", spec, cfg, make, score, "le", "ge",
            "violations of both orientations confirmed at p = 3",
            {{"p", p}});
    };
    return d;
}

//--------------------------------------------------- powered trace forms

CheckDef def_epstein() {
    return slack_check(
        "epstein",
        "A -> tr[(B' A^p B)^{1/p}] is concave in positive A for 0 < p < 1",
        {{{3}, 300, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "epstein");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                static const double ps[] = {0.3, 0.7};
                const double p = ps[idx % 2];
                const int cols = (idx % 3 == 2) ? std::max(1, n - 1) : n;
                Matrix b = random_ginibre(n, cols, rng);
                Matrix a1 = scaled_pd(n, rng);
                Matrix a2 = (idx % 25 == 24) ? a1 : scaled_pd(n, rng);
                double f1 = upsilon(b, a1, p, 1.0);
                double f2 = upsilon(b, a2, p, 1.0);
                double fm = upsilon(b, midpoint(a1, a2), p, 1.0);
                TrialOut out;
                out.slack = concave_slack(f1, f2, fm);
                if (want) {
                    out.witness = {{"b", b}, {"a1", a1}, {"a2", a2}};
                    out.aux = {{"p", p}, {"f1", f1}, {"f2", f2}, {"fmid", fm}};
                }
                return out;
            };
        });
}

CheckDef def_carlen_lieb() {
    return slack_check(
        "carlen_lieb",
        "X -> tr[(B' X^p B)^{q/p}] is convex for 1 <= p <= 2, q >= 1 and "
        "concave for 0 <= p <= q <= 1",
        {{{3}, 300, CheckStatus::pass, ""}, {{2}, 150, CheckStatus::pass, ""}},
        {},
        [](const std::vector<int>& dims) -> TrialFn {
            expect_dims(dims, 1, "carlen_lieb");
            const int n = dims[0];
            return [n](Rng& rng, long idx, bool want) {
                static const double cv[][2] = {
                    {1.5, 1.0}, {2.0, 2.0}, {2.0, 1.25}};
                static const double cc[][2] = {{0.5, 0.8}, {0.3, 0.9}};
                const bool convex = idx % 2 == 0;
                const double* pq = convex ? cv[(idx / 2) % 3] : cc[(idx / 2) % 2];
                const double p = pq[0], q = pq[1];
                Matrix b = random_ginibre(n, n, rng);
                auto draw = [&] {
                    if (idx % 7 == 6)
                        return sample_spectral_psd(n, n - 1, 0.02, 1.0, rng);
                    return scaled_pd(n, rng);
                };
                Matrix x1 = draw();
                Matrix x2 = (idx % 25 == 24) ? x1 : draw();
                double f1 = upsilon(b, x1, p, q);
                double f2 = upsilon(b, x2, p, q);
                double fm = upsilon(b, midpoint(x1, x2), p, q);
                TrialOut out;
                out.slack = convex ? convex_slack(f1, f2, fm)
                                   : concave_slack(f1, f2, fm);
                if (want) {
                    out.witness = {{"b", b}, {"x1", x1}, {"x2", x2}};
                    out.aux = {{"p", p},
                               {"q", q},
                               {"f1", f1},
                               {"f2", f2},
                               {"fmid", fm}};
                }
                return out;
            };
        });
}

Matrix m3(std::initializer_list<Complex> entries) {
    Matrix m(3, 3);
    int k = 0;
    for (Complex z : entries) {
        m(k / 3, k % 3) = z;
        ++k;
    }
    return m;
}

// deterministic midpoint-violation candidates at (p, q) = (3, 1), found by
// offline random search plus hill climbing and rounded to two decimals
void carlen_candidate_convex(Matrix& b, Matrix& x1, Matrix& x2) {
    b = m3({{-0.02, -0.5}, {-0.72, -0.03}, {0.07, 0.11},
            {-1.46, 1.3},  {1.0, 0.78},    {0.47, -0.86},
            {-0.65, 0.25}, {1.64, 0.14},   {0.52, 0.13}});
    x1 = m3({{0.32, 0.0},  {0.24, -0.21}, {0.25, -0.08},
             {0.24, 0.21}, {0.4, 0.0},    {0.26, 0.13},
             {0.25, 0.08}, {0.26, -0.13}, {0.29, 0.0}});
    x2 = m3({{1.15, 0.0},   {0.2, -0.24},   {0.16, 0.06},
             {0.2, 0.24},   {0.4, 0.0},     {-0.34, 0.06},
             {0.16, -0.06}, {-0.34, -0.06}, {0.55, 0.0}});
}

void carlen_candidate_concave(Matrix& b, Matrix& x1, Matrix& x2) {
    b = m3({{-0.21, 0.18},  {-0.32, 0.71},  {-0.99, 0.43},
            {-0.68, -0.49}, {-0.56, -0.17}, {0.41, -0.84},
            {0.45, -0.58},  {-0.74, -0.16}, {-0.76, 0.0}});
    x1 = m3({{0.84, 0.0},    {0.23, 0.05},   {-0.02, 0.09},
             {0.23, -0.05},  {0.37, 0.0},    {-0.06, 0.02},
             {-0.02, -0.09}, {-0.06, -0.02}, {0.32, 0.0}});
    x2 = m3({{0.21, 0.0},    {-0.16, 0.2},  {-0.16, 0.11},
             {-0.16, -0.2},  {0.67, 0.0},   {0.06, -0.06},
             {-0.16, -0.11}, {0.06, 0.06},  {0.5, 0.0}});
}

CheckDef def_carlen_lieb_p_gt_2() {
    CheckDef d;
    d.id = "carlen_lieb_p_gt_2";
    d.statement =
        "X -> tr[(B' X^p B)^{q/p}] is neither convex nor concave for p > 2; "
        "the search exhibits midpoint violations both ways at (p, q) = (3, 1)";
    d.searchable = true;
    d.runs = {{{3}, 100000, CheckStatus::fail, ""},
              {{4}, 100000, CheckStatus::fail, ""}};
    d.execute = [](const RunSpec& spec, const CheckConfig& cfg) {
        expect_dims(spec.dims, 1, "carlen_lieb_p_gt_2");
        const int n = spec.dims[0];
        const double p = 3.0, q = 1.0;
        auto make = [n](Rng& rng, long i) -> Candidate {
            if (i < 2 && n >= 3) {
                Matrix b, x1, x2;
                if (i == 0)
                    carlen_candidate_convex(b, x1, x2);
                else
                    carlen_candidate_concave(b, x1, x2);
                return {{"b", corner_embed(b, n)},
                        {"x1", corner_embed(x1, n)},
                        {"x2", corner_embed(x2, n)}};
            }
            return {{"b", random_ginibre(n, n, rng)},
                    {"x1", sample_spectral_pd(n, rng)},
                    {"x2", sample_spectral_pd(n, rng)}};
        };
        auto score = [p, q](const Candidate& c) -> std::array<double, 2> {
            const Matrix& b = c[0].value;
            const Matrix& x1 = c[1].value;
            const Matrix& x2 = c[2].value;
            double f1 = upsilon(b, x1, p, q);
            double f2 = upsilon(b, x2, p, q);
            double fm = upsilon(b, midpoint(x1, x2), p, q);
            return {-convex_slack(f1, f2, fm), -concave_slack(f1, f2, fm)};
        };
        return run_two_sided_search(
            "carlen_lieb_p_gt_2", spec, cfg, make, score, "convex", "concave",
            "midpoint violations confirmed both ways at (p, q) = (3, 1)",
            {{"p", p}, {"q", q}});
    };
    return d;
}

CheckDef def_cp_composed() {
    CheckDef d;
    d.id = "cp_composed";
    d.statement =
        "the convexity and concavity ranges survive composition with a "
        "completely positive map, X -> tr[(P(X^p))^{q/p}], as does the sum "
        "form (X_1, .., X_J) -> tr[(sum_j X_j^p)^{1/p}]";
    d.runs = {{{3, 2}, 250, CheckStatus::pass, ""},
              {{3}, 200, CheckStatus::pass, "sum"}};
    d.execute = [](const RunSpec& spec, const CheckConfig& cfg) {
        TrialFn fn;
        if (spec.variant == "sum") {
            expect_dims(spec.dims, 1, "cp_composed");
            const int n = spec.dims[0];
            fn = [n](Rng& rng, long idx, bool want) {
                static const double up[] = {1.5, 2.0};
                static const double dn[] = {0.5, 0.8};
                const bool convex = idx % 2 == 0;
                const double p =
                    convex ? up[(idx / 2) % 2] : dn[(idx / 2) % 2];
                const int nsum = 3;
                std::vector<Matrix> a(nsum), b(nsum), mid(nsum);
                for (int j = 0; j < nsum; ++j) {
                    a[j] = scaled_pd(n, rng);
                    b[j] = (idx % 25 == 24) ? a[j] : scaled_pd(n, rng);
                    mid[j] = midpoint(a[j], b[j]);
                }
                auto f = [&](const std::vector<Matrix>& xs) {
                    Matrix s = Matrix::Zero(n, n);
                    for (const Matrix& x : xs) s += power_psd(x, p);
                    return std::real(
                        power_psd(hermitize(s), 1.0 / p).trace());
                };
                double f1 = f(a), f2 = f(b), fm = f(mid);
                TrialOut out;
                out.slack = convex ? convex_slack(f1, f2, fm)
                                   : concave_slack(f1, f2, fm);
                if (want) {
                    for (int j = 0; j < nsum; ++j) {
                        out.witness.push_back(
                            {"x" + std::to_string(j + 1), a[j]});
                        out.witness.push_back(
                            {"y" + std::to_string(j + 1), b[j]});
                    }
                    out.aux = {{"p", p}, {"f1", f1}, {"f2", f2}, {"fmid", fm}};
                }
                return out;
            };
        } else {
            expect_dims(spec.dims, 2, "cp_composed");
            const int n = spec.dims[0], m = spec.dims[1];
            fn = [n, m](Rng& rng, long idx, bool want) {
                static const double cv[][2] = {{1.5, 1.0}, {2.0, 1.25}};
                static const double cc[][2] = {{0.5, 0.8}, {0.3, 0.9}};
                const bool convex = idx % 2 == 0;
                const double* pq =
                    convex ? cv[(idx / 2) % 2] : cc[(idx / 2) % 2];
                const double p = pq[0], q = pq[1];
                KrausChannel phi = sample_channel(ChannelKind::cptp, n, m,
                                                  2 + int(idx % 2), rng);
                Matrix x1 = scaled_pd(n, rng);
                Matrix x2 = (idx % 25 == 24) ? x1 : scaled_pd(n, rng);
                auto f = [&](const Matrix& x) {
                    Matrix inner = hermitize(phi.apply(power_psd(x, p)));
                    return std::real(power_psd(inner, q / p).trace());
                };
                double f1 = f(x1), f2 = f(x2), fm = f(midpoint(x1, x2));
                TrialOut out;
                out.slack = convex ? convex_slack(f1, f2, fm)
                                   : concave_slack(f1, f2, fm);
                if (want) {
                    out.witness = {{"x1", x1}, {"x2", x2}};
                    for (size_t j = 0; j < phi.kraus().size(); ++j)
                        out.witness.push_back(
                            {"kraus" + std::to_string(j + 1), phi.kraus()[j]});
                    out.aux = {{"p", p},
                               {"q", q},
                               {"f1", f1},
                               {"f2", f2},
                               {"fmid", fm}};
                }
                return out;
            };
        }
        return run_slack_trials("cp_composed", spec, cfg, fn, {});
    };
    return d;
}

} // namespace

void register_norm_checks(std::vector<CheckDef>& out) {
    out.push_back(def_minkowski_two());
    out.push_back(def_minkowski_three());
    out.push_back(def_minkowski_three_p_gt_2());
    out.push_back(def_epstein());
    out.push_back(def_carlen_lieb());
    out.push_back(def_carlen_lieb_p_gt_2());
    out.push_back(def_cp_composed());
}

} // namespace traceforge::checks
