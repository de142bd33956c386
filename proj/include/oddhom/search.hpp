#pragma once

#include <cstdlib>
#include <optional>
#include <string>

namespace oddhom {

// Exhaustive searches distinguish a certified negative (search space
// exhausted) from running out of budget; callers must not conflate them.
enum class search_status { found, exhausted, aborted };

inline const char* to_string(search_status s) {
    switch (s) {
        case search_status::found: return "found";
        case search_status::exhausted: return "none";
        case search_status::aborted: return "budget-abort";
    }
    return "?";
}

template <typename Witness>
struct search_result {
    search_status status = search_status::exhausted;
    std::optional<Witness> witness;
    long long nodes = 0;

    bool found() const { return status == search_status::found; }
    bool certified_none() const { return status == search_status::exhausted; }
    bool aborted() const { return status == search_status::aborted; }
};

constexpr long long default_node_budget = 100'000'000;

// Reads ODD_HOM_BUDGET when set, otherwise the built-in default.
inline long long node_budget_from_env() {
    if (const char* s = std::getenv("ODD_HOM_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(s, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return default_node_budget;
}

// Shared expansion counter for one logical search, including nested phases.
class node_budget {
public:
    explicit node_budget(long long limit = default_node_budget) : limit_(limit) {}

    // False once the budget is exhausted; the search must unwind and report
    // search_status::aborted.
    bool tick() { return ++used_ <= limit_; }

    bool exceeded() const { return used_ > limit_; }
    long long used() const { return used_; }
    long long limit() const { return limit_; }

private:
    long long limit_;
    long long used_ = 0;
};

} // namespace oddhom
