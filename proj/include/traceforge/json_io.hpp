#pragma once

// deterministic json emission: fixed key order, 17 significant digits,
// no locale dependence

#include <cstdio>
#include <string>
#include <vector>

#include "traceforge/linalg.hpp"

namespace traceforge {

inline std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

// streaming writer; the caller controls structure, commas are automatic
class JsonWriter {
public:
    explicit JsonWriter(bool pretty = true) : pretty_(pretty) {}

    const std::string& str() const { return out_; }

    JsonWriter& begin_object() { open('{'); return *this; }
    JsonWriter& end_object() { close('}'); return *this; }
    JsonWriter& begin_array() { open('['); return *this; }
    JsonWriter& end_array() { close(']'); return *this; }

    JsonWriter& key(const std::string& k) {
        separate();
        out_ += '"';
        out_ += json_escape(k);
        out_ += pretty_ ? "\": " : "\":";
        pending_key_ = true;
        return *this;
    }

    JsonWriter& value(double x) { raw(format_double(x)); return *this; }
    JsonWriter& value(int x) { raw(std::to_string(x)); return *this; }
    JsonWriter& value(long x) { raw(std::to_string(x)); return *this; }
    JsonWriter& value(std::uint64_t x) { raw(std::to_string(x)); return *this; }
    JsonWriter& value(bool b) { raw(b ? "true" : "false"); return *this; }
    JsonWriter& value(const std::string& s) {
        raw('"' + json_escape(s) + '"');
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& null() { raw("null"); return *this; }

private:
    void open(char c) {
        separate();
        out_ += c;
        depth_ += 1;
        first_.push_back(true);
    }
    void close(char c) {
        depth_ -= 1;
        bool empty = first_.back();
        first_.pop_back();
        if (pretty_ && !empty) newline_indent();
        out_ += c;
    }
    void separate() {
        if (pending_key_) { pending_key_ = false; return; }
        if (!first_.empty()) {
            if (!first_.back()) out_ += ',';
            first_.back() = false;
            if (pretty_) newline_indent();
        }
    }
    void newline_indent() {
        out_ += '\n';
        out_.append(std::size_t(2) * depth_, ' ');
    }
    void raw(const std::string& s) { separate(); out_ += s; }

    std::string out_;
    bool pretty_;
    bool pending_key_ = false;
    int depth_ = 0;
    std::vector<bool> first_;
};

// matrix payload: {"dim": n, "re": [[..]], "im": [[..]]} for square input,
// rectangular input gets "rows"/"cols" instead of "dim"
inline void write_matrix(JsonWriter& w, const Matrix& m) {
    w.begin_object();
    if (m.rows() == m.cols()) {
        w.key("dim").value(int(m.rows()));
    } else {
        w.key("rows").value(int(m.rows()));
        w.key("cols").value(int(m.cols()));
    }
    w.key("re").begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        w.begin_array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) w.value(m(i, j).real());
        w.end_array();
    }
    w.end_array();
    w.key("im").begin_array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        w.begin_array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) w.value(m(i, j).imag());
        w.end_array();
    }
    w.end_array();
    w.end_object();
}

} // namespace traceforge
