#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qpt {

// Machine-readable result of one CLI computation. Serialization is
// deterministic: keys sorted, doubles at 17 significant digits so repeated
// invocations with the same flags and seed are byte-identical.
class TestReport {
public:
    using Value = std::variant<std::string, long long, double, bool, std::vector<double>>;

    explicit TestReport(std::string command) : command_(std::move(command)) {}

    void set_param(const std::string& key, Value v) { params_[key] = std::move(v); }
    void set_result(const std::string& key, Value v) { results_[key] = std::move(v); }
    void add_note(std::string note) { notes_.push_back(std::move(note)); }
    void set_seed(std::uint64_t seed) { seed_ = seed; }
    void set_arithmetic_mode(std::string mode) { arithmetic_mode_ = std::move(mode); }

    const std::string& command() const { return command_; }
    std::string to_json() const;
    std::string to_csv() const;

private:
    std::string command_;
    std::string arithmetic_mode_ = "float";
    std::optional<std::uint64_t> seed_;
    std::map<std::string, Value> params_;
    std::map<std::string, Value> results_;
    std::vector<std::string> notes_;
};

std::string format_double_17(double v);

}  // namespace qpt
