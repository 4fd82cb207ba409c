#include "qpt/report.hpp"

#include <cmath>
#include <cstdio>

namespace qpt {

std::string format_double_17(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

std::string value_json(const TestReport::Value& v) {
    struct Visitor {
        std::string operator()(const std::string& s) const { return "\"" + escape(s) + "\""; }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(double x) const { return format_double_17(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::vector<double>& a) const {
            std::string s = "[";
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) s += ",";
                s += format_double_17(a[i]);
            }
            return s + "]";
        }
    };
    return std::visit(Visitor{}, v);
}

std::string value_csv(const TestReport::Value& v) {
    struct Visitor {
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(double x) const { return format_double_17(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::vector<double>& a) const {
            std::string s;
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i) s += ";";
                s += format_double_17(a[i]);
            }
            return s;
        }
    };
    return std::visit(Visitor{}, v);
}

}  // namespace

std::string TestReport::to_json() const {
    std::string s = "{";
    s += "\"arithmetic_mode\":\"" + escape(arithmetic_mode_) + "\"";
    s += ",\"command\":\"" + escape(command_) + "\"";
    s += ",\"notes\":[";
    for (std::size_t i = 0; i < notes_.size(); ++i) {
        if (i) s += ",";
        s += "\"" + escape(notes_[i]) + "\"";
    }
    s += "],\"params\":{";
    bool first = true;
    for (const auto& [k, v] : params_) {
        if (!first) s += ",";
        first = false;
        s += "\"" + escape(k) + "\":" + value_json(v);
    }
    s += "},\"results\":{";
    first = true;
    for (const auto& [k, v] : results_) {
        if (!first) s += ",";
        first = false;
        s += "\"" + escape(k) + "\":" + value_json(v);
    }
    s += "}";
    if (seed_) s += ",\"seed\":" + std::to_string(*seed_);
    s += "}\n";
    return s;
}

std::string TestReport::to_csv() const {
    std::string s = "key,value\n";
    s += "command," + command_ + "\n";
    s += "arithmetic_mode," + arithmetic_mode_ + "\n";
    if (seed_) s += "seed," + std::to_string(*seed_) + "\n";
    for (const auto& [k, v] : params_) s += "param." + k + "," + value_csv(v) + "\n";
    for (const auto& [k, v] : results_) s += "result." + k + "," + value_csv(v) + "\n";
    for (std::size_t i = 0; i < notes_.size(); ++i)
        s += "note." + std::to_string(i) + "," + notes_[i] + "\n";
    return s;
}

}  // namespace qpt
