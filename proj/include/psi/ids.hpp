#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace psi {

// Identifies an agent by (group, index). Groups are 1-based, indices 0-based.
// Ordering gives the global turn order: all of group 1 before group 2.
struct AgentRef {
    int group = 0;
    int index = 0;

    auto operator<=>(const AgentRef&) const = default;
};

inline std::string to_string(const AgentRef& a) {
    return "g" + std::to_string(a.group) + "a" + std::to_string(a.index);
}

// S1: one group alone. S2: two groups, strongly hostile start. S3: two
// groups, moderately hostile start.
enum class Scenario { S1 = 1, S2 = 2, S3 = 3 };

inline const char* to_string(Scenario s) {
    switch (s) {
    case Scenario::S1: return "s1";
    case Scenario::S2: return "s2";
    case Scenario::S3: return "s3";
    }
    return "?";
}

}  // namespace psi
