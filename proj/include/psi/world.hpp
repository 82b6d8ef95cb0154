#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "psi/agent.hpp"
#include "psi/config.hpp"
#include "psi/map.hpp"
#include "psi/telemetry.hpp"

namespace psi {

// Effects are queued while agents act and applied in queue order once every
// agent has finished its tick, so that within a tick no agent observes
// another agent's same-tick actions.

struct MoveEffect {
    AgentRef who;
    HexCoord to;
};
struct ShoutEffect {
    ShoutOut shout;
};
struct HitEffect {
    AgentRef attacker;
    AgentRef target;
    int damage = 0;
    std::optional<AgentRef> assist_for;
};
struct HealEffect {
    AgentRef healer;
    AgentRef target;
    int amount = 0;
};
struct TransferEffect {  // one food unit, giver to requester
    AgentRef from;
    AgentRef to;
};
struct CollectEffect {  // pick up ground food at a tile
    AgentRef who;
    HexCoord tile;
    bool eat = false;
};
struct PledgeEffect {  // responder tells a requester that help is coming
    AgentRef responder;
    AgentRef requester;
    PlanId requested = PlanId::CallForFood;
};
struct ExchangeCommitEffect {  // responder arrived next to the initiator
    AgentRef responder;
    AgentRef initiator;
    PlanId kind = PlanId::ExchangeLocationInfo;
};

using Effect = std::variant<MoveEffect, ShoutEffect, HitEffect, HealEffect,
                            TransferEffect, CollectEffect, PledgeEffect,
                            ExchangeCommitEffect>;

class World {
public:
    World(WorldMap map, RunConfig cfg, ScenarioSpec spec);

    void step();
    void run();  // all cfg.ticks steps plus the final network snapshot

    std::int64_t tick() const { return tick_; }
    const RunConfig& config() const { return cfg_; }
    const ScenarioSpec& spec() const { return spec_; }
    WorldMap& map() { return map_; }
    const WorldMap& map() const { return map_; }

    std::vector<AgentState>& roster() { return roster_; }
    const std::vector<AgentState>& roster() const { return roster_; }
    AgentState& agent(AgentRef id);
    const AgentState& agent(AgentRef id) const;
    AgentState* agent_at(HexCoord pos);  // alive occupant or nullptr

    void queue(Effect e) { effects_.push_back(std::move(e)); }
    void log(Event e);
    const RunLog& run_log() const { return log_; }

    SocialNetworkSnapshot snapshot() const;
    RunLog take_log();

    // Food ledger; spawned - eaten must equal ground + carried at all times.
    std::int64_t food_spawned() const { return food_spawned_; }
    std::int64_t food_eaten() const { return food_eaten_; }
    void note_food_eaten() { ++food_eaten_; }

    void check_invariants() const;  // throws std::logic_error on violation

private:
    void spawn_food();
    void apply_effects();
    void process_death(AgentState& a);
    void move_agent(AgentState& a, HexCoord to);
    void share_location_info(AgentState& src, AgentState& dst);
    // Returns the third party whose score was shared, if any.
    std::optional<AgentRef> share_social_info(AgentState& src, AgentState& dst);

    void apply(const MoveEffect& e);
    void apply(const ShoutEffect& e);
    void apply(const HitEffect& e);
    void apply(const HealEffect& e);
    void apply(const TransferEffect& e);
    void apply(const CollectEffect& e);
    void apply(const PledgeEffect& e);
    void apply(const ExchangeCommitEffect& e);

    void feedback(AgentRef from, AgentRef to, double delta);

    WorldMap map_;
    RunConfig cfg_;
    ScenarioSpec spec_;
    std::int64_t tick_ = 0;
    std::vector<AgentState> roster_;
    std::map<HexCoord, AgentRef> occupancy_;
    std::vector<Effect> effects_;
    Rng food_rng_{0};
    RunLog log_;
    std::int64_t food_spawned_ = 0;
    std::int64_t food_eaten_ = 0;
};

// Builds the world for a scenario: loads the map, places the team(s) on
// their spawn regions, initializes tanks, memories and plan estimates.
World make_world(const RunConfig& cfg, const ScenarioSpec& spec);

// Convenience wrapper: build, run, return the finished log.
RunLog run_scenario(const RunConfig& cfg, const ScenarioSpec& spec);

}  // namespace psi
