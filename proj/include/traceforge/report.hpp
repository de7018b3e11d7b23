#pragma once

#include <string>
#include <vector>

#include "traceforge/verify.hpp"

namespace traceforge {

enum class ReportUnits { nats, bits };

struct ReportMeta {
    std::string command;
    uint64_t seed = 0;
    ReportUnits units = ReportUnits::nats;
    double tol = 1e-8;
    double eig_tol = 1e-9;
};

std::string report_json(const std::vector<CheckReport>& reports,
                        const ReportMeta& meta);
std::string report_csv(const std::vector<CheckReport>& reports,
                       const ReportMeta& meta);
std::string report_human(const std::vector<CheckReport>& reports,
                         const ReportMeta& meta);

// writes through a temp file in the same directory, then renames
void write_atomic(const std::string& path, const std::string& content);

} // namespace traceforge
