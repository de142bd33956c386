#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "oddhom/search.hpp"

namespace oddhom {

inline constexpr const char* tool_version = "0.1.0";

enum class check_status { pass, fail, abort };

inline const char* to_string(check_status s) {
    switch (s) {
        case check_status::pass: return "pass";
        case check_status::fail: return "fail";
        case check_status::abort: return "abort";
    }
    return "?";
}

inline check_status check_status_of(search_status s, bool found_is_pass) {
    if (s == search_status::aborted) return check_status::abort;
    bool found = s == search_status::found;
    return found == found_is_pass ? check_status::pass : check_status::fail;
}

// One verified property: a stable name, the property statement in plain
// language, the outcome, and a witness or diagnostic that can be re-checked
// independently.
struct check_result {
    std::string name;
    std::string statement;
    check_status status = check_status::pass;
    nlohmann::ordered_json details;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["name"] = name;
        j["statement"] = statement;
        j["status"] = to_string(status);
        if (!details.is_null()) j["details"] = details;
        return j;
    }
};

struct certificate_report {
    std::string subject;
    nlohmann::ordered_json params;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::array();
    std::vector<check_result> checks;
    double runtime_ms = 0.0;

    check_result& add(std::string name, std::string statement, check_status status,
                      nlohmann::ordered_json details = {}) {
        checks.push_back({std::move(name), std::move(statement), status, std::move(details)});
        return checks.back();
    }

    check_result& add(std::string name, std::string statement, bool pass,
                      nlohmann::ordered_json details = {}) {
        return add(std::move(name), std::move(statement),
                   pass ? check_status::pass : check_status::fail, std::move(details));
    }

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status != check_status::pass) return false;
        return true;
    }

    bool any_abort() const {
        for (const auto& c : checks)
            if (c.status == check_status::abort) return true;
        return false;
    }

    void merge(const certificate_report& o, const std::string& prefix) {
        for (auto c : o.checks) {
            c.name = prefix + "/" + c.name;
            checks.push_back(std::move(c));
        }
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["tool"] = "oddhom";
        j["version"] = tool_version;
        j["subject"] = subject;
        if (!params.is_null()) j["params"] = params;
        if (!inputs.empty()) j["inputs"] = inputs;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : checks) arr.push_back(c.to_json());
        j["checks"] = arr;
        j["all_pass"] = all_pass();
        j["runtime_ms"] = runtime_ms;
        return j;
    }
};

} // namespace oddhom
