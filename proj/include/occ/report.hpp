#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace occ {

struct ValidityCondition {
    std::string condition;
    bool satisfied = false;
    double threshold = 0.0;
};

// A numeric upper bound paired with the result that produced it, the
// validity conditions that were checked, and its named sub-terms. A report
// whose conditions fail is inapplicable and carries no value.
struct BoundReport {
    std::string theorem;
    std::optional<double> value;
    std::vector<ValidityCondition> validity;
    std::map<std::string, double> components;
    std::string label;  // e.g. "estimated bound" for Monte Carlo backed values

    bool applicable() const { return value.has_value(); }
};

struct DiagnosticPoint {
    long long n = 0;
    double ratio = 0.0;
    double stderr_ = 0.0;  // nonzero only for Monte Carlo diagnostics
};

// A limit constant with the normalizing sequence it is taken against and
// the finite-n ratio diagnostics that support it.
struct LimitReport {
    double constant = 0.0;
    double companion = 0.0;  // sum_a pi_a^alpha, the second-limit constant
    std::string normalizer;
    std::string mode;
    bool near_zero = false;
    std::vector<DiagnosticPoint> diagnostics;
};

struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t replicas = 0;
    std::uint64_t seed = 0;
    std::string target;
};

// 17-significant-digit serialization; round-trips doubles exactly.
std::string format_double(double v);

std::string to_json_string(const BoundReport& r);
std::string to_json_string(const LimitReport& r);
std::string to_json_string(const MCEstimate& r);

}  // namespace occ
