#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "traceforge/channels.hpp"
#include "traceforge/entropy.hpp"
#include "traceforge/gns.hpp"
#include "traceforge/opfunc.hpp"
#include "traceforge/rng.hpp"
#include "traceforge/verify.hpp"

namespace traceforge::checks {

void register_trace_checks(std::vector<CheckDef>& out);
void register_entropy_checks(std::vector<CheckDef>& out);
void register_norm_checks(std::vector<CheckDef>& out);
void register_operator_checks(std::vector<CheckDef>& out);

//---------------------------------------------------------------- plumbing

inline std::string dims_label(const std::vector<int>& dims) {
    std::string s;
    for (size_t i = 0; i < dims.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(dims[i]);
    }
    return s;
}

inline std::string run_label(const std::string& id, const RunSpec& spec) {
    std::string s = id + "/" + dims_label(spec.dims);
    if (!spec.variant.empty()) s += "/" + spec.variant;
    return s;
}

inline uint64_t trial_seed(const CheckConfig& cfg, const std::string& label,
                           long index) {
    return Rng::mix(cfg.seed, fnv1a(label.c_str()), uint64_t(index));
}

// runs body(i) for i in [0, n); work is distributed by a shared counter so
// results must be written into preallocated per-index slots
template <typename Body>
void parallel_for(int jobs, long n, const Body& body) {
    if (jobs <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            long i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    int workers = std::min<long>(jobs, n);
    pool.reserve(size_t(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

//------------------------------------------------------------ trial driver

struct TrialOut {
    double slack = std::numeric_limits<double>::quiet_NaN();
    long resampled = 0;
    std::vector<WitnessEntry> witness;
    std::vector<std::pair<std::string, double>> aux;
};

// want_witness is false during the bulk pass and true when the worst trial
// is revisited; implementations may skip building matrices until then
using TrialFn = std::function<TrialOut(Rng& rng, long index, bool want_witness)>;

struct SlackCheckOpts {
    bool entropy_units = false;
    // slacks measured on the eigenvalue scale pass against cfg.eig_tol
    // instead of cfg.tol
    bool eig_scale = false;
    std::optional<double> threshold;
};

// two-pass driver: a parallel slack pass over all trials, then a
// sequential reduce, then a deterministic revisit of the worst trial for
// the witness. reports fail only when the revisit reproduces the
// violating slack.
CheckReport run_slack_trials(const std::string& id, const RunSpec& spec,
                             const CheckConfig& cfg, const TrialFn& fn,
                             const SlackCheckOpts& opts = {});

//----------------------------------------------------------------- helpers

inline double scaled(double raw, double scale) {
    return raw / (1.0 + std::abs(scale));
}

inline double tri_scale(double a, double b, double c) {
    return std::max({std::abs(a), std::abs(b), std::abs(c)});
}

// convexity midpoint slack: nonnegative when f is convex
inline double convex_slack(double f1, double f2, double fmid) {
    return scaled(0.5 * (f1 + f2) - fmid, tri_scale(f1, f2, fmid));
}

inline double concave_slack(double f1, double f2, double fmid) {
    return scaled(fmid - 0.5 * (f1 + f2), tri_scale(f1, f2, fmid));
}

inline Matrix midpoint(const Matrix& a, const Matrix& b) {
    return 0.5 * (a + b);
}

// smooths the adjoint direction of a cp unital map so that its adjoint
// sends positive definite inputs to positive definite outputs
inline KrausChannel smooth_unital(const KrausChannel& phi, double eps) {
    return smooth(phi.adjoint(), eps).adjoint();
}

inline bool needs_smoothing(const Matrix& m) {
    Matrix h = hermitize(m);
    double lo = min_eig(h), hi = max_eig(h);
    return lo < 1e-8 * std::max(hi, 1e-300);
}

inline double check_wall_ms(const std::chrono::steady_clock::time_point& t0) {
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

inline void expect_dims(const std::vector<int>& dims, size_t count,
                        const char* who) {
    if (dims.size() != count)
        throw ParamError(std::string(who) + ": expected " +
                         std::to_string(count) + " dimension entries, got " +
                         std::to_string(dims.size()));
    for (int d : dims) {
        if (d < 2)
            throw ParamError(std::string(who) + ": dims entries must be >= 2");
        if (d > 6)
            throw ParamError(std::string(who) +
                             ": dims entries are capped at 6");
    }
}

// builds a check whose runs all share one trial shape; the factory maps a
// dims vector to the trial function and validates it
using TrialFactory = std::function<TrialFn(const std::vector<int>&)>;

inline CheckDef slack_check(std::string id, std::string statement,
                            std::vector<RunSpec> runs, SlackCheckOpts opts,
                            TrialFactory factory) {
    CheckDef d;
    d.id = std::move(id);
    d.statement = std::move(statement);
    d.entropy_units = opts.entropy_units;
    d.runs = std::move(runs);
    d.execute = [id = d.id, opts, factory = std::move(factory)](
                    const RunSpec& spec, const CheckConfig& cfg) {
        return run_slack_trials(id, spec, cfg, factory(spec.dims), opts);
    };
    return d;
}

} // namespace traceforge::checks
