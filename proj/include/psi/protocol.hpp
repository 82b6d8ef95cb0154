#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "psi/hex.hpp"
#include "psi/ids.hpp"

namespace psi {

// The five broadcast kinds. Help calls and exchange requests carry a
// subject agent; the others are anonymous pleas.
enum class ShoutKind {
    HelpAttacked,
    FoodRequest,
    HealRequest,
    SocialInfoExchange,
    LocationInfoExchange,
};

const char* to_string(ShoutKind k);
ShoutKind shout_from_string(const std::string& s);

struct ShoutOut {
    ShoutKind kind = ShoutKind::FoodRequest;
    AgentRef sender;
    std::optional<AgentRef> subject;
    HexCoord origin;
    std::int64_t tick = 0;
};

}  // namespace psi
