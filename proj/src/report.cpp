#include "occ/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace occ {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

nlohmann::json validity_json(const std::vector<ValidityCondition>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : vs)
        arr.push_back({{"condition", v.condition},
                       {"satisfied", v.satisfied},
                       {"threshold", v.threshold}});
    return arr;
}

}  // namespace

std::string to_json_string(const BoundReport& r) {
    nlohmann::json j;
    j["theorem"] = r.theorem;
    if (r.value)
        j["value"] = *r.value;
    else
        j["value"] = nullptr;
    j["applicable"] = r.applicable();
    j["validity"] = validity_json(r.validity);
    j["components"] = r.components;
    if (!r.label.empty()) j["label"] = r.label;
    return j.dump();
}

std::string to_json_string(const LimitReport& r) {
    nlohmann::json j;
    j["constant"] = r.constant;
    j["companion"] = r.companion;
    j["normalizer"] = r.normalizer;
    j["mode"] = r.mode;
    j["near_zero"] = r.near_zero;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& d : r.diagnostics) {
        nlohmann::json p = {{"n", d.n}, {"ratio", d.ratio}};
        if (d.stderr_ > 0.0) p["stderr"] = d.stderr_;
        pts.push_back(p);
    }
    j["diagnostics"] = pts;
    return j.dump();
}

std::string to_json_string(const MCEstimate& r) {
    nlohmann::json j;
    j["target"] = r.target;
    j["mean"] = r.mean;
    j["stderr"] = r.stderr_;
    j["replicas"] = r.replicas;
    j["seed"] = r.seed;
    return j.dump();
}

}  // namespace occ
