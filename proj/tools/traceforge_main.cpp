// command line front end: list the registry, run checks, or drive the
// counterexample searches

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "traceforge/report.hpp"
#include "traceforge/verify.hpp"

using namespace traceforge;

namespace {

uint64_t seed_from_env() {
    if (const char* s = std::getenv("TRACEFORGE_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0') return v;
    }
    return 42;
}

std::vector<std::string> split_csv(const std::string& arg) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(arg);
    while (std::getline(is, cur, ','))
        if (!cur.empty()) parts.push_back(cur);
    return parts;
}

bool parse_dims(const std::string& arg, std::vector<int>& dims) {
    for (const auto& p : split_csv(arg)) {
        char* end = nullptr;
        long v = std::strtol(p.c_str(), &end, 10);
        if (end == p.c_str() || *end != '\0' || v < 1 || v > 64) return false;
        dims.push_back(int(v));
    }
    return !dims.empty();
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

void emit(const std::vector<CheckReport>& reports, const ReportMeta& meta,
          const std::string& format, const std::string& out_path) {
    std::string text;
    if (format == "json")
        text = report_json(reports, meta);
    else if (format == "csv")
        text = report_csv(reports, meta);
    else
        text = report_human(reports, meta);
    if (out_path.empty())
        std::cout << text;
    else
        write_atomic(out_path, text);
}

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

std::string runs_summary(const CheckDef& d) {
    std::string s;
    for (const auto& run : d.runs) {
        if (!s.empty()) s += "  ";
        std::string dims;
        for (size_t i = 0; i < run.dims.size(); ++i) {
            if (i) dims += "x";
            dims += std::to_string(run.dims[i]);
        }
        s += dims + ":" + std::to_string(run.trials) + ":" +
             to_string(run.expected);
        if (!run.variant.empty()) s += "(" + run.variant + ")";
    }
    return s;
}

int cmd_list(const std::string& format) {
    if (format == "json") {
        std::string out = "[";
        bool first = true;
        for (const auto& d : registry()) {
            if (!first) out += ",";
            out += "\"" + d.id + "\"";
            first = false;
        }
        std::cout << out << "]\n";
        return 0;
    }
    for (const auto& d : registry()) {
        std::ostringstream os;
        os << std::left << std::setw(28) << d.id << std::setw(34)
           << runs_summary(d);
        std::cout << os.str() << d.statement << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized verification of matrix convexity, entropy, and "
                 "channel monotonicity inequalities"};
    app.require_subcommand(1);

    std::string list_format = "human";
    auto* list_cmd =
        app.add_subcommand("list", "print every check in the registry");
    list_cmd->add_option("--format", list_format, "human or json")
        ->check(CLI::IsMember({"human", "json"}));

    bool run_all = false, bits = false;
    std::string checks_arg, dims_arg, format = "human", out_path;
    long trials = 0, budget = 100000;
    int jobs = 1;
    double tol = 1e-8;
    uint64_t seed = seed_from_env();
    auto* run_cmd =
        app.add_subcommand("run", "execute checks and report worst slacks");
    run_cmd->add_flag("--all", run_all, "run the whole registry");
    run_cmd->add_option("--checks", checks_arg,
                        "comma separated check ids to run");
    run_cmd->add_option("--dims", dims_arg,
                        "comma separated dims override (with --checks only)");
    run_cmd->add_option("--trials", trials, "override the trial count");
    run_cmd->add_option("--seed", seed, "base seed (env TRACEFORGE_SEED)");
    run_cmd->add_option("--tol", tol, "slack tolerance");
    run_cmd->add_option("--budget", budget, "search budget for searches");
    run_cmd->add_option("--jobs", jobs, "worker threads")
        ->check(CLI::Range(1, 64));
    run_cmd->add_option("--format", format, "human, json, or csv")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    run_cmd->add_option("--out", out_path, "write the report to a file");
    run_cmd->add_flag("--bits", bits,
                      "report entropy-unit slacks in bits instead of nats");

    std::string search_id, s_format = "human", s_out;
    long s_budget = 100000, s_trials = 0;
    int s_jobs = 1;
    uint64_t s_seed = seed_from_env();
    auto* search_cmd = app.add_subcommand(
        "search", "drive a counterexample search to a confirmed witness");
    search_cmd->add_option("id", search_id, "searchable check id")
        ->required();
    search_cmd->add_option("--budget", s_budget, "candidate budget");
    search_cmd->add_option("--trials", s_trials, "override the trial count");
    search_cmd->add_option("--seed", s_seed, "base seed (env TRACEFORGE_SEED)");
    search_cmd->add_option("--jobs", s_jobs, "worker threads")
        ->check(CLI::Range(1, 64));
    search_cmd->add_option("--format", s_format, "human, json, or csv")
        ->check(CLI::IsMember({"human", "json", "csv"}));
    search_cmd->add_option("--out", s_out, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*list_cmd) return cmd_list(list_format);

        if (*run_cmd) {
            if (run_all && !checks_arg.empty())
                return usage_error("--all and --checks are exclusive");
            if (!run_all && checks_arg.empty())
                return usage_error("run needs --all or --checks");
            if (run_all && !dims_arg.empty())
                return usage_error("--dims needs --checks");
            CheckConfig cfg;
            cfg.seed = seed;
            cfg.tol = tol;
            cfg.search_budget = budget;
            cfg.jobs = jobs;
            if (trials > 0) cfg.trials_override = trials;
            if (!dims_arg.empty()) {
                std::vector<int> dims;
                if (!parse_dims(dims_arg, dims))
                    return usage_error("bad --dims: " + dims_arg);
                cfg.dims_override = dims;
            }
            std::vector<std::string> ids;
            if (run_all)
                for (const auto& d : registry()) ids.push_back(d.id);
            else
                ids = split_csv(checks_arg);
            if (ids.empty()) return usage_error("no check ids given");

            std::vector<CheckReport> reports;
            try {
                reports = run_checks(ids, cfg);
            } catch (const ParamError& e) {
                return usage_error(e.what());
            }

            ReportMeta meta;
            meta.command =
                run_all ? "run --all" : "run --checks " + checks_arg;
            if (!dims_arg.empty()) meta.command += " --dims " + dims_arg;
            if (trials > 0)
                meta.command += " --trials " + std::to_string(trials);
            meta.command += " --seed " + std::to_string(seed);
            if (tol != 1e-8) meta.command += " --tol " + fmt_double(tol);
            if (budget != 100000)
                meta.command += " --budget " + std::to_string(budget);
            if (bits) meta.command += " --bits";
            meta.seed = seed;
            meta.units = bits ? ReportUnits::bits : ReportUnits::nats;
            meta.tol = tol;
            emit(reports, meta, format, out_path);
            return all_expected(reports) ? 0 : 1;
        }

        if (*search_cmd) {
            const CheckDef* def = find_check(search_id);
            if (!def) return usage_error("unknown check id: " + search_id);
            if (!def->searchable)
                return usage_error(search_id + " is not a search check");
            CheckConfig cfg;
            cfg.seed = s_seed;
            cfg.search_budget = s_budget;
            cfg.jobs = s_jobs;
            if (s_trials > 0) cfg.trials_override = s_trials;
            auto reports = run_checks({search_id}, cfg);

            ReportMeta meta;
            meta.command = "search " + search_id + " --budget " +
                           std::to_string(s_budget) + " --seed " +
                           std::to_string(s_seed);
            meta.seed = s_seed;
            emit(reports, meta, s_format, s_out);
            if (all_expected(reports)) return 0;
            for (const auto& r : reports)
                if (r.status == CheckStatus::inconclusive) return 3;
            return 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
