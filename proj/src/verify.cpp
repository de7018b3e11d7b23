#include "traceforge/verify.hpp"

#include <algorithm>
#include <map>

#include "check_common.hpp"

namespace traceforge {

const char* to_string(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace checks {

CheckReport run_slack_trials(const std::string& id, const RunSpec& spec,
                             const CheckConfig& cfg, const TrialFn& fn,
                             const SlackCheckOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.id = id;
    rep.variant = spec.variant;
    rep.dims = spec.dims;
    rep.expected = spec.expected;
    rep.seed = cfg.seed;
    rep.entropy_units = opts.entropy_units;

    const long trials = cfg.trials_override.value_or(spec.trials);
    rep.trials_run = trials;
    const double threshold =
        opts.threshold.value_or(opts.eig_scale ? cfg.eig_tol : cfg.tol);
    const std::string label = run_label(id, spec);

    std::vector<double> slack(size_t(trials), 0.0);
    std::vector<long> resampled(size_t(trials), 0);
    std::vector<std::string> errors(static_cast<size_t>(trials));

    parallel_for(cfg.jobs, trials, [&](long i) {
        try {
            Rng rng(trial_seed(cfg, label, i));
            TrialOut out = fn(rng, i, false);
            if (!std::isfinite(out.slack))
                throw SolverError("non-finite slack");
            slack[size_t(i)] = out.slack;
            resampled[size_t(i)] = out.resampled;
        } catch (const std::exception& e) {
            errors[size_t(i)] = e.what();
        }
    });

    long first_err = -1;
    double worst = std::numeric_limits<double>::infinity();
    long worst_idx = -1;
    for (long i = 0; i < trials; ++i) {
        if (!errors[size_t(i)].empty()) {
            if (first_err < 0) first_err = i;
            continue;
        }
        rep.resampled += resampled[size_t(i)];
        if (slack[size_t(i)] < worst) {
            worst = slack[size_t(i)];
            worst_idx = i;
        }
    }

    if (first_err >= 0) {
        rep.status = CheckStatus::inconclusive;
        rep.note = "trial " + std::to_string(first_err) + ": " +
                   errors[size_t(first_err)];
        rep.wall_time_ms = check_wall_ms(t0);
        return rep;
    }

    rep.worst_slack = worst;
    rep.worst_index = worst_idx;
    if (worst >= -threshold) {
        rep.status = CheckStatus::pass;
    } else {
        try {
            Rng rng(trial_seed(cfg, label, worst_idx));
            TrialOut out = fn(rng, worst_idx, true);
            if (std::abs(out.slack - worst) <=
                1e-9 * (1.0 + std::abs(worst))) {
                rep.status = CheckStatus::fail;
                rep.witness = std::move(out.witness);
                rep.aux = std::move(out.aux);
            } else {
                rep.status = CheckStatus::inconclusive;
                rep.note = "violation at trial " + std::to_string(worst_idx) +
                           " did not reproduce on revisit";
            }
        } catch (const std::exception& e) {
            rep.status = CheckStatus::inconclusive;
            rep.note = std::string("revisit failed: ") + e.what();
        }
    }
    rep.wall_time_ms = check_wall_ms(t0);
    return rep;
}

} // namespace checks

namespace {

const char* const canonical_order[] = {
    "lieb_concavity",
    "lieb_neg_powers_convexity",
    "map_convexity",
    "rel_entropy_joint_convexity",
    "ando_convexity",
    "mono_L1",
    "mono_L2",
    "mono_L3",
    "dpi",
    "ando_mono_restricted",
    "ando_mono_false",
    "klein",
    "ssa",
    "subadditivity",
    "cond_entropy_convexity",
    "rel_entropy_pt_monotone",
    "directional_derivative",
    "golden_thompson",
    "peierls_bogoliubov",
    "weak_ssa",
    "triple_matrix",
    "araki_lieb_triangle",
    "pure_marginals",
    "extended_ssa",
    "minkowski_two",
    "minkowski_three",
    "minkowski_three_p_gt_2",
    "epstein",
    "carlen_lieb",
    "carlen_lieb_p_gt_2",
    "cp_composed",
    "lieb_explog",
    "lieb_ruskai",
    "schur_complement",
    "kiefer",
    "kadison_schwarz",
    "choi_separation",
    "ando_choi",
    "hiai_petz_2",
    "hiai_petz_3",
    "hiai_petz_4",
    "flip_lemma",
    "hansen_ando_hiai",
    "gf_convexity",
    "donald_identity",
    "perspective_monotone",
    "bs_dpi",
    "sandwiched_dpi",
    "wy_skew_convexity",
    "wy_block_identity",
    "uhlmann_average",
    "uhlmann_commute",
    "stinespring_roundtrip",
    "purification",
    "squashed_lb",
    "metric_monotone",
};

} // namespace

const std::vector<CheckDef>& registry() {
    static const std::vector<CheckDef> defs = [] {
        std::vector<CheckDef> all;
        checks::register_trace_checks(all);
        checks::register_entropy_checks(all);
        checks::register_norm_checks(all);
        checks::register_operator_checks(all);

        std::map<std::string, CheckDef> by_id;
        for (auto& d : all) {
            std::string id = d.id;
            if (!by_id.emplace(id, std::move(d)).second)
                throw Error("registry: duplicate check id " + id);
        }
        std::vector<CheckDef> ordered;
        ordered.reserve(std::size(canonical_order));
        for (const char* id : canonical_order) {
            auto it = by_id.find(id);
            if (it == by_id.end())
                throw Error(std::string("registry: missing check ") + id);
            ordered.push_back(std::move(it->second));
            by_id.erase(it);
        }
        if (!by_id.empty())
            throw Error("registry: unlisted check " + by_id.begin()->first);
        return ordered;
    }();
    return defs;
}

const CheckDef* find_check(const std::string& id) {
    for (const auto& d : registry())
        if (d.id == id) return &d;
    return nullptr;
}

std::vector<CheckReport> run_checks(const std::vector<std::string>& ids,
                                    const CheckConfig& cfg) {
    std::vector<CheckReport> reports;
    for (const auto& id : ids) {
        const CheckDef* def = find_check(id);
        if (!def) throw ParamError("unknown check id: " + id);
        std::vector<RunSpec> runs = def->runs;
        if (cfg.dims_override) {
            RunSpec one = runs.front();
            one.dims = *cfg.dims_override;
            runs = {one};
        }
        for (const auto& spec : runs) reports.push_back(def->execute(spec, cfg));
    }
    return reports;
}

bool all_expected(const std::vector<CheckReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) {
        return r.status == r.expected;
    });
}

} // namespace traceforge
