#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psi/hex.hpp"
#include "psi/ids.hpp"
#include "psi/needs.hpp"
#include "psi/plans.hpp"
#include "psi/protocol.hpp"

namespace psi {

enum class EventKind {
    Spawn,     // agent placed at its start tile
    Meet,      // first sighting of another agent (value = initial score)
    Adopt,     // motive selection switched to this plan (value = strength)
    Abandon,   // plan dropped for a rival before completing (no signals)
    End,       // plan completed; ok + signals applied + new pr
    Shout,     // broadcast sent
    Hit,       // damage delivered (value = damage, value2 = victim health)
    Heal,      // healing delivered (self or other)
    Transfer,  // one food unit gifted
    Exchange,  // committed information exchange (plan = which kind)
    Score,     // social score change (value = delta, value2 = new score)
    Starve,    // starvation health loss (value2 = health after)
    Death,
};

const char* to_string(EventKind k);

struct Event {
    EventKind kind = EventKind::Spawn;
    std::int64_t tick = 0;
    AgentRef actor;
    std::optional<AgentRef> other;     // counterpart agent
    std::optional<AgentRef> subject;   // third party (shout/exchange topic)
    std::optional<PlanId> plan;
    std::string target;                // motive target, printable form
    std::optional<bool> ok;            // End outcome
    std::optional<NeedVec> signals;    // need signals applied on End
    std::optional<double> value;       // kind-specific, see EventKind
    std::optional<double> value2;
    std::optional<ShoutKind> shout;
    std::optional<HexCoord> pos;

    std::string to_json_line() const;
    static Event from_json_line(const std::string& line);
};

struct NetworkNode {
    AgentRef id;
    std::string name;
    bool alive = true;
};

struct NetworkEdge {
    AgentRef from, to;
    double score = 0.0;
};

struct SocialNetworkSnapshot {
    std::int64_t tick = 0;
    std::vector<NetworkNode> nodes;  // ascending id
    std::vector<NetworkEdge> edges;  // ascending (from, to)

    std::string to_json() const;
    static SocialNetworkSnapshot from_json_text(const std::string& text);
};

// Complete record of one run: header (enough to reproduce the run), the
// event stream, and the final social network. Line-oriented JSON on disk:
// header line, one line per event, snapshot line.
struct RunLog {
    std::string header_json;  // single-line JSON document
    std::vector<Event> events;
    SocialNetworkSnapshot final_network;

    void serialize(std::ostream& out) const;
    std::string serialize_to_string() const;
    static RunLog parse(std::istream& in, const std::string& origin);
    static RunLog load(const std::string& path);
    void save(const std::string& path) const;
};

// Deterministic exports of a snapshot. `symmetrize` averages the two
// directions of each pair; `prune_below` drops |score| < threshold edges.
std::string network_to_graphml(const SocialNetworkSnapshot& s, bool symmetrize = false,
                               double prune_below = 0.0);
std::string network_to_csv(const SocialNetworkSnapshot& s, bool symmetrize = false,
                           double prune_below = 0.0);

}  // namespace psi
