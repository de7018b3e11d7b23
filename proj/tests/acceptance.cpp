// Acceptance gate for the verification suite. Eight criteria, one
// pass/fail line each:
//
//   1. the full default suite exits cleanly in under three minutes
//   2. slack floors of the nonnegativity checks stay above -1e-8
//   3. midpoint convexity checks clear -1e-8 with at least 200 trials
//   4. exact-identity checks hold within their pinned defect budgets
//   5. the known counterexamples reproduce with quantified violations
//   6. derivative and limit approximations converge at pinned rates
//   7. commuting instances match their classical closed forms
//   8. reports are byte-identical across worker counts
//
// Criteria 1-5 and 8 drive the command line binary and read its json
// reports; 5 additionally recomputes the averaging-map violation from
// its frozen witness; 6 and 7 evaluate the library in process.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "traceforge/channels.hpp"
#include "traceforge/entropy.hpp"
#include "traceforge/gns.hpp"
#include "traceforge/opfunc.hpp"

using namespace traceforge;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

int run_cli(const std::string& args) {
    std::string cmd =
        std::string("\"") + TRACEFORGE_CLI_PATH + "\" " + args +
        " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

struct RunRow {
    std::vector<int> dims;
    std::string status;
    std::string expected;
    double worst_slack = 0.0;
    long trials = 0;
    json aux;
};

std::map<std::string, std::vector<RunRow>> by_id(const json& doc) {
    std::map<std::string, std::vector<RunRow>> out;
    for (const auto& rep : doc.at("reports")) {
        RunRow row;
        row.dims = rep.at("dims").get<std::vector<int>>();
        row.status = rep.at("status").get<std::string>();
        row.expected = rep.at("expected").get<std::string>();
        row.worst_slack = rep.at("worst_slack").get<double>();
        row.trials = rep.at("trials").get<long>();
        if (rep.contains("aux")) row.aux = rep.at("aux");
        out[rep.at("id").get<std::string>()].push_back(std::move(row));
    }
    return out;
}

long total_trials(const std::vector<RunRow>& rows) {
    long t = 0;
    for (const auto& r : rows) t += r.trials;
    return t;
}

double min_slack(const std::vector<RunRow>& rows) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& r : rows) worst = std::min(worst, r.worst_slack);
    return worst;
}

Matrix diag_of(const RealVector& v) {
    Matrix m = Matrix::Zero(v.size(), v.size());
    for (long i = 0; i < v.size(); ++i) m(i, i) = v[i];
    return m;
}

//--------------------------------------------------------------- criteria

const char* const kJobs1Path = "acceptance_jobs1.json";
const char* const kJobs4Path = "acceptance_jobs4.json";

bool criterion_1(json& doc_out) {
    auto t0 = std::chrono::steady_clock::now();
    int rc = run_cli("run --all --seed 42 --format json --out " +
                     std::string(kJobs1Path));
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    bool ok = rc == 0 && secs < 180.0;
    report(1, ok,
           "run --all --seed 42 exits " + std::to_string(rc) + " in " +
               fmt("%.2f", secs) + " s (limit 180 s)");
    if (rc != 0) return false;
    doc_out = json::parse(slurp(kJobs1Path));
    return ok;
}

void criterion_2(const std::map<std::string, std::vector<RunRow>>& rows) {
    static const std::vector<std::string> ids = {
        "ssa",          "dpi",
        "klein",        "golden_thompson",
        "peierls_bogoliubov", "triple_matrix",
        "lieb_ruskai",  "kadison_schwarz",
        "kiefer",       "araki_lieb_triangle",
        "extended_ssa", "weak_ssa",
        "minkowski_two", "hiai_petz_2",
        "hiai_petz_3",  "perspective_monotone",
        "bs_dpi",       "sandwiched_dpi",
        "metric_monotone"};
    double floor = 0.0;
    std::string offender;
    for (const auto& id : ids) {
        auto it = rows.find(id);
        if (it == rows.end()) {
            report(2, false, "check " + id + " missing from the report");
            return;
        }
        double w = min_slack(it->second);
        if (w < floor) {
            floor = w;
            offender = id;
        }
    }
    bool ok = floor >= -1e-8;
    report(2, ok,
           "slack floor across " + std::to_string(ids.size()) +
               " nonnegativity checks is " + fmt("%.3e", floor) +
               (offender.empty() ? "" : " (" + offender + ")") +
               ", required >= -1e-8");
}

void criterion_3(const std::map<std::string, std::vector<RunRow>>& rows) {
    static const std::vector<std::string> ids = {
        "lieb_concavity", "lieb_neg_powers_convexity",
        "map_convexity",  "rel_entropy_joint_convexity",
        "ando_convexity", "epstein",
        "carlen_lieb",    "lieb_explog",
        "wy_skew_convexity", "gf_convexity",
        "hiai_petz_4",    "hansen_ando_hiai",
        "cond_entropy_convexity", "cp_composed"};
    double floor = 0.0;
    long least = std::numeric_limits<long>::max();
    bool ok = true;
    std::string why;
    for (const auto& id : ids) {
        auto it = rows.find(id);
        if (it == rows.end()) {
            ok = false;
            why = id + " missing";
            break;
        }
        floor = std::min(floor, min_slack(it->second));
        least = std::min(least, total_trials(it->second));
    }
    if (ok && floor < -1e-8) {
        ok = false;
        why = "slack floor " + fmt("%.3e", floor);
    }
    if (ok && least < 200) {
        ok = false;
        why = "only " + std::to_string(least) + " trials on some check";
    }
    if (ok) {
        const auto& hansen = rows.at("hansen_ando_hiai");
        for (const auto& run : hansen) {
            double viol = run.aux.value("increasing_violation", 0.0);
            if (run.status != "pass" || viol <= 0.0) {
                ok = false;
                why = "square-root violation hunt did not certify";
            }
        }
    }
    report(3, ok,
           ok ? "midpoint checks: slack floor " + fmt("%.3e", floor) +
                    ", min trials " + std::to_string(least) +
                    ", square-root counterexample certified"
              : "midpoint checks: " + why);
}

void criterion_4(const std::map<std::string, std::vector<RunRow>>& rows) {
    struct Need {
        const char* id;
        long trials;
        const char* budget;
    };
    static const Need needs[] = {
        {"uhlmann_average", 0, "1e-12 relative"},
        {"stinespring_roundtrip", 50, "1e-9"},
        {"purification", 100, "1e-10"},
        {"donald_identity", 200, "1e-9"},
        {"wy_block_identity", 0, "1e-10 relative"},
        {"pure_marginals", 100, "1e-9"},
    };
    bool ok = true;
    std::string why;
    for (const auto& need : needs) {
        auto it = rows.find(need.id);
        if (it == rows.end()) {
            ok = false;
            why = std::string(need.id) + " missing";
            break;
        }
        if (min_slack(it->second) < 0.0) {
            ok = false;
            why = std::string(need.id) + " defect exceeds " + need.budget;
            break;
        }
        if (total_trials(it->second) < need.trials) {
            ok = false;
            why = std::string(need.id) + " ran fewer than " +
                  std::to_string(need.trials) + " trials";
            break;
        }
        for (const auto& run : it->second)
            if (run.status != "pass") {
                ok = false;
                why = std::string(need.id) + " did not pass";
            }
    }
    if (ok) {
        bool donald4 = false;
        for (const auto& run : rows.at("donald_identity"))
            if (run.dims == std::vector<int>{4}) donald4 = true;
        if (!donald4) {
            ok = false;
            why = "donald_identity lacks a dimension-4 run";
        }
    }
    report(4, ok,
           ok ? "identity families hold within their pinned defect budgets"
              : "identity families: " + why);
}

void criterion_5(const std::map<std::string, std::vector<RunRow>>& rows) {
    // recompute the averaging-map violation from the frozen witness
    Matrix x = Matrix::Zero(2, 2), k = Matrix::Zero(2, 2), y(2, 2);
    x(0, 0) = 0.7;
    x(1, 1) = 0.3;
    y << 0.5, 0.2, 0.2, 0.5;
    k(0, 0) = 1.0;
    k(1, 1) = -1.0;
    const double t = 0.5;
    KrausChannel phi = depolarizer_kraus(2, 2);
    KrausChannel adj = phi.adjoint();
    Matrix pk = phi.apply(k);
    double lhs = std::real((pk.adjoint() *
                            power_psd(PsdMatrix(y), 1.0 + t) * pk *
                            power_psd(PsdMatrix(x), -t))
                               .trace());
    double rhs = std::real(
        (k.adjoint() * power_psd(PsdMatrix(adj.apply(y)), 1.0 + t) * k *
         power_psd(PsdMatrix(adj.apply(x)), -t))
            .trace());
    double violation = rhs - lhs;

    bool ok = violation >= 0.05;
    std::string why = "averaging-map violation " + fmt("%.4f", violation);

    auto check_fail = [&](const char* id) {
        auto it = rows.find(id);
        if (it == rows.end()) {
            ok = false;
            why = std::string(id) + " missing";
            return;
        }
        for (const auto& run : it->second)
            if (run.status != "fail") {
                ok = false;
                why = std::string(id) + " did not confirm a violation";
            }
    };
    check_fail("ando_mono_false");
    check_fail("minkowski_three_p_gt_2");
    check_fail("carlen_lieb_p_gt_2");

    if (ok) {
        const auto& sep = rows.at("choi_separation");
        bool saw_deep = false;
        for (const auto& run : sep) {
            double choi = run.aux.value("choi_min_eig", 0.0);
            double schwarz = run.aux.value("schwarz_worst", -1.0);
            if (run.status != "pass" || choi > -1e-3 || schwarz < -1e-10) {
                ok = false;
                why = "positivity separation did not certify";
            }
            if (run.dims == std::vector<int>{2} && run.trials >= 1000)
                saw_deep = true;
        }
        if (ok && !saw_deep) {
            ok = false;
            why = "schwarz sampling ran fewer than 1000 trials";
        }
    }
    report(5, ok,
           ok ? "counterexamples reproduce; " + why +
                    " (needs >= 0.05), separation certified"
              : "counterexamples: " + why);
}

void criterion_6() {
    double worst_approx = 0, worst_tmap = 0, worst_hess_fd = 0,
           worst_hess_quad = 0, worst_sand = 0;
    for (int i = 0; i < 50; ++i) {
        Rng rng(Rng::mix(2025, std::uint64_t(i)));
        const int n = 2 + int(i % 3);

        PsdMatrix x(sample_spectral_density(n, n, rng, 0.35));
        PsdMatrix ysep(sample_spectral_density(n, n, rng, 0.35));
        double d = umegaki(x, ysep).value;
        double approx = umegaki_power_approximant(x, ysep, 1.0 - 1e-4);
        worst_approx = std::max(worst_approx, std::abs(approx - d));

        Matrix xs = sample_spectral_pd(n, rng, 0.3, 1.5);
        Matrix k = 0.5 * random_hermitian(n, rng);
        const double h = 1e-5;
        Matrix fd = (log_pd(PsdMatrix(Matrix(xs + h * k)).mat()) -
                     log_pd(PsdMatrix(Matrix(xs - h * k)).mat())) /
                    (2.0 * h);
        worst_tmap = std::max(worst_tmap,
                              (t_map(PsdMatrix(xs), k) - fd).norm() /
                                  (1.0 + fd.norm()));

        const double dt = 1e-4;
        Matrix up = log_pd(PsdMatrix(Matrix(xs + dt * k)).mat());
        Matrix mid = log_pd(xs);
        Matrix dn = log_pd(PsdMatrix(Matrix(xs - dt * k)).mat());
        Matrix second = (up - 2.0 * mid + dn) / (dt * dt);
        Matrix hess = hess_log(PsdMatrix(xs), k);
        worst_hess_fd = std::max(worst_hess_fd, (hess + second).norm() /
                                                    (1.0 + second.norm()));

        Matrix quad = Matrix::Zero(n, n);
        for (auto [node, w] : gauss_legendre(200)) {
            double u = 0.5 * (node + 1.0);
            double s = u / (1.0 - u);
            double jac = 1.0 / ((1.0 - u) * (1.0 - u));
            Matrix res = inv_pd(Matrix(s * Matrix::Identity(n, n) + xs));
            quad += (w * jac) * (res * k * res * k * res);
        }
        worst_hess_quad = std::max(worst_hess_quad,
                                   (hess - quad).norm() / (1.0 + quad.norm()));

        Matrix ym = x.mat() + 0.1 * random_hermitian(n, rng);
        double lo = min_eig(ym);
        if (lo < 0.05) ym += (0.05 - lo) * Matrix::Identity(n, n);
        DensityMatrix ynear{PsdMatrix(ym)};
        double kl = umegaki(x, ynear.psd()).value;
        double below = sandwiched_renyi(x, ynear.psd(), 1.0 - 1e-4);
        double above = sandwiched_renyi(x, ynear.psd(), 1.0 + 1e-4);
        worst_sand = std::max(
            {worst_sand, std::abs(below - kl), std::abs(above - kl)});
    }
    bool ok = worst_approx <= 1e-4 && worst_tmap <= 1e-6 &&
              worst_hess_fd <= 1e-5 && worst_hess_quad <= 1e-7 &&
              worst_sand <= 1e-3;
    report(6, ok,
           "approximant " + fmt("%.2e", worst_approx) +
               " (<= 1e-4), log derivative " + fmt("%.2e", worst_tmap) +
               " (<= 1e-6), hessian " + fmt("%.2e", worst_hess_fd) +
               " / " + fmt("%.2e", worst_hess_quad) +
               " (<= 1e-5 / 1e-7), near-1 order " + fmt("%.2e", worst_sand) +
               " (<= 1e-3)");
}

void criterion_7() {
    double worst = 0.0;
    auto track = [&](double got, double want) {
        worst = std::max(worst,
                         std::abs(got - want) / (1.0 + std::abs(want)));
    };
    const auto catalog = function_catalog();
    for (int i = 0; i < 100; ++i) {
        Rng rng(Rng::mix(777, std::uint64_t(i)));
        const int n = 2 + int(i % 3);

        RealVector p(n), q(n), kv(n);
        double ps = 0, qs = 0, ks = 0;
        for (int j = 0; j < n; ++j) {
            p[j] = rng.uniform(0.05, 1.0);
            q[j] = rng.uniform(0.05, 1.0);
            kv[j] = rng.uniform(-1.0, 1.0);
            ps += p[j];
            qs += q[j];
            ks += kv[j];
        }
        p /= ps;
        q /= qs;
        for (int j = 0; j < n; ++j) kv[j] -= ks / n;
        ks = 0;
        for (int j = 0; j < n; ++j) ks += kv[j];
        kv[0] -= ks;

        PsdMatrix px(diag_of(p)), qx(diag_of(q));

        double kl = 0;
        for (int j = 0; j < n; ++j)
            kl += p[j] * (std::log(p[j]) - std::log(q[j]));
        track(umegaki(px, qx).value, kl);
        track(bs_entropy(px, qx), kl);

        const double alpha = (i % 2) ? 0.6 + 0.3 * (i % 3) : 2.0;
        double zs = 0;
        for (int j = 0; j < n; ++j)
            zs += std::pow(p[j], alpha) * std::pow(q[j], 1.0 - alpha);
        track(sandwiched_renyi(px, qx, alpha),
              std::log(zs) / (alpha - 1.0));

        double fisher = 0;
        for (int j = 0; j < n; ++j) fisher += kv[j] * kv[j] / p[j];
        Matrix kd = diag_of(kv);
        DensityMatrix rho{px};
        const double tpar = 0.25 * (1 + i % 3);
        track(metric_wyd(rho, kd, tpar), fisher);
        track(metric_bkm(rho, kd), fisher);

        const auto& f = catalog[size_t(i) % catalog.size()];
        Matrix g = perspective(f, px, qx);
        Matrix want = Matrix::Zero(n, n);
        for (int j = 0; j < n; ++j)
            want(j, j) = q[j] * f.eval(p[j] / q[j]);
        worst = std::max(worst, (g - want).norm() / (1.0 + want.norm()));
    }
    bool ok = worst <= 1e-10;
    report(7, ok,
           "diagonal closed forms agree to " + fmt("%.2e", worst) +
               " across 100 instances each (required <= 1e-10)");
}

void criterion_8() {
    int rc = run_cli("run --all --seed 42 --format json --jobs 4 --out " +
                     std::string(kJobs4Path));
    if (rc != 0) {
        report(8, false, "4-worker run exited " + std::to_string(rc));
        return;
    }
    std::string a = slurp(kJobs1Path);
    std::string b = slurp(kJobs4Path);
    const std::regex wall("\"wall_time_ms\":\\s*[-+0-9.eE]+");
    std::string am = std::regex_replace(a, wall, "\"wall_time_ms\": 0");
    std::string bm = std::regex_replace(b, wall, "\"wall_time_ms\": 0");
    bool ok = !am.empty() && am == bm;
    report(8, ok,
           ok ? "reports for --jobs 1 and --jobs 4 are byte-identical "
                "outside wall times"
              : "reports diverge across worker counts");
}

} // namespace

int main() {
    json doc;
    if (!criterion_1(doc)) {
        for (int c = 2; c <= 5; ++c)
            report(c, false, "skipped: default suite run failed");
        criterion_6();
        criterion_7();
        criterion_8();
        std::printf("%d/8 criteria satisfied\n", 8 - g_failures);
        return g_failures == 0 ? 0 : 1;
    }
    auto rows = by_id(doc);
    criterion_2(rows);
    criterion_3(rows);
    criterion_4(rows);
    criterion_5(rows);
    criterion_6();
    criterion_7();
    criterion_8();
    std::printf("%d/8 criteria satisfied\n", 8 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
