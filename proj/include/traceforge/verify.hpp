#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "traceforge/linalg.hpp"

namespace traceforge {

enum class CheckStatus { pass, fail, inconclusive };

const char* to_string(CheckStatus s);

struct CheckConfig {
    uint64_t seed = 42;
    std::optional<long> trials_override;
    double tol = 1e-8;
    double eig_tol = 1e-9;
    long search_budget = 100000;
    int jobs = 1;
    std::optional<std::vector<int>> dims_override;
};

struct WitnessEntry {
    std::string name;
    Matrix value;
};

struct CheckReport {
    std::string id;
    std::string variant;
    std::vector<int> dims;
    CheckStatus status = CheckStatus::inconclusive;
    CheckStatus expected = CheckStatus::pass;
    double worst_slack = 0.0;
    long worst_index = -1;
    long trials_run = 0;
    uint64_t seed = 0;
    long resampled = 0;
    bool entropy_units = false;
    std::string note;
    double wall_time_ms = 0.0;
    std::vector<std::pair<std::string, double>> aux;
    std::vector<WitnessEntry> witness;
};

struct RunSpec {
    std::vector<int> dims;
    long trials = 0;
    CheckStatus expected = CheckStatus::pass;
    std::string variant;
};

struct CheckDef {
    std::string id;
    std::string statement;
    bool entropy_units = false;
    bool searchable = false;
    std::vector<RunSpec> runs;
    std::function<CheckReport(const RunSpec&, const CheckConfig&)> execute;
};

// all checks in canonical id order
const std::vector<CheckDef>& registry();

const CheckDef* find_check(const std::string& id);

// runs every listed check (all runs of each); throws ParamError on an
// unknown id
std::vector<CheckReport> run_checks(const std::vector<std::string>& ids,
                                    const CheckConfig& cfg);

bool all_expected(const std::vector<CheckReport>& reports);

} // namespace traceforge
