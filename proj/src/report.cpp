#include "traceforge/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "check_common.hpp"
#include "traceforge/json_io.hpp"

namespace traceforge {

namespace {

constexpr double ln2 = 0.6931471805599453;

double emitted_slack(const CheckReport& r, const ReportMeta& meta) {
    if (meta.units == ReportUnits::bits && r.entropy_units)
        return r.worst_slack / ln2;
    return r.worst_slack;
}

} // namespace

std::string report_json(const std::vector<CheckReport>& reports,
                        const ReportMeta& meta) {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value("traceforge-report-v1");
    w.key("command");
    w.value(meta.command);
    w.key("seed");
    w.value(meta.seed);
    w.key("units");
    w.value(meta.units == ReportUnits::bits ? "bits" : "nats");
    w.key("tol");
    w.value(meta.tol);
    w.key("eig_tol");
    w.value(meta.eig_tol);
    w.key("reports");
    w.begin_array();
    for (const auto& r : reports) {
        w.begin_object();
        w.key("id");
        w.value(r.id);
        w.key("variant");
        w.value(r.variant);
        w.key("dims");
        w.begin_array();
        for (int d : r.dims) w.value(d);
        w.end_array();
        w.key("status");
        w.value(to_string(r.status));
        w.key("expected");
        w.value(to_string(r.expected));
        w.key("worst_slack");
        w.value(emitted_slack(r, meta));
        w.key("worst_index");
        w.value(r.worst_index);
        w.key("trials");
        w.value(r.trials_run);
        w.key("seed");
        w.value(r.seed);
        w.key("resampled");
        w.value(r.resampled);
        w.key("entropy_units");
        w.value(r.entropy_units);
        w.key("note");
        w.value(r.note);
        w.key("wall_time_ms");
        w.value(r.wall_time_ms);
        w.key("aux");
        w.begin_object();
        for (const auto& [k, v] : r.aux) {
            w.key(k);
            w.value(v);
        }
        w.end_object();
        w.key("witness");
        w.begin_array();
        for (const auto& wit : r.witness) {
            w.begin_object();
            w.key("name");
            w.value(wit.name);
            w.key("matrix");
            write_matrix(w, wit.value);
            w.end_object();
        }
        w.end_array();
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string report_csv(const std::vector<CheckReport>& reports,
                       const ReportMeta& meta) {
    std::ostringstream os;
    os << "id,variant,dims,status,expected,worst_slack,worst_index,"
          "trials,seed,resampled,note\n";
    for (const auto& r : reports) {
        std::string note = r.note;
        std::string quoted = "\"";
        for (char c : note) {
            if (c == '"') quoted += "\"\"";
            else quoted += c;
        }
        quoted += '"';
        char slack[32];
        std::snprintf(slack, sizeof slack, "%.17g", emitted_slack(r, meta));
        os << r.id << ',' << r.variant << ',' << checks::dims_label(r.dims)
           << ',' << to_string(r.status) << ',' << to_string(r.expected)
           << ',' << slack << ',' << r.worst_index << ',' << r.trials_run
           << ',' << r.seed << ',' << r.resampled << ',' << quoted << '\n';
    }
    return os.str();
}

std::string report_human(const std::vector<CheckReport>& reports,
                         const ReportMeta& meta) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %-14s %-8s %-13s %-13s %12s %7s\n",
                  "check", "variant", "dims", "status", "expected",
                  "worst_slack", "trials");
    os << line;
    os << std::string(100, '-') << '\n';
    long ok = 0;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line,
                      "%-28s %-14s %-8s %-13s %-13s %12.3e %7ld\n",
                      r.id.c_str(), r.variant.c_str(),
                      checks::dims_label(r.dims).c_str(), to_string(r.status),
                      to_string(r.expected), emitted_slack(r, meta),
                      r.trials_run);
        os << line;
        if (!r.note.empty()) os << "    note: " << r.note << '\n';
        if (r.status == r.expected) ++ok;
    }
    os << std::string(100, '-') << '\n';
    os << ok << "/" << reports.size() << " checks behaved as expected (units: "
       << (meta.units == ReportUnits::bits ? "bits" : "nats")
       << ", seed " << meta.seed << ")\n";
    return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp + " for writing");
        f << content;
        f.flush();
        if (!f) throw Error("write to " + tmp + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("rename to " + path + " failed");
}

} // namespace traceforge
