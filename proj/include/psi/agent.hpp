#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "psi/memory.hpp"
#include "psi/motive.hpp"
#include "psi/needs.hpp"
#include "psi/personality.hpp"
#include "psi/plans.hpp"
#include "psi/protocol.hpp"
#include "psi/rng.hpp"

namespace psi {

class World;

struct InboxEntry {
    ShoutOut shout;
    std::int64_t expires_at = 0;
};

// Remembered group of food-bearing tiles; the center is the member tile
// used as the travel goal of cluster foraging.
struct FoodCluster {
    HexCoord center;
    std::vector<HexCoord> members;  // sorted
    std::int64_t last_seen = 0;
};

enum class ExecPhase { Init, Travel, Wait };

// Outcome of a cross-agent delivery, reported by the world when effects are
// applied and consumed by the owner at its next tick.
struct AsyncResult {
    enum class Kind {
        Collect,            // grabbed (or missed) ground food
        HitLanded,          // attack resolved; success = damage > 0
        HealDelivered,      // healer side
        HealReceived,       // requester side
        FoodReceived,       // requester side of a food gift
        TransferDelivered,  // giver side
        ExchangeDone,       // either side of a committed exchange
    };
    Kind kind = Kind::Collect;
    bool success = false;
    std::optional<AgentRef> partner;
    bool ate = false;  // Collect: consumed on the spot vs stored
};

// Mutable book-keeping of the plan currently being executed.
struct PlanExec {
    ExecPhase phase = ExecPhase::Init;
    std::vector<HexCoord> path;  // path[path_idx] is the expected current pos
    std::size_t path_idx = 0;
    std::optional<HexCoord> dest;
    int wait_left = 0;
    int ttl = 0;
    int retries = 0;
    bool pledged = false;     // someone adopted a response to our request
    bool awaiting_async = false;
    bool retargeted = false;  // cluster foraging: side-step to visible food
    std::optional<AgentRef> respond_to;  // set on responder-side plans
    std::optional<AgentRef> assist_for;  // Engage on behalf of this victim
    std::optional<AsyncResult> async_result;
};

struct UnderAttack {
    AgentRef attacker;
    std::int64_t until = 0;
    bool prefers_flee = false;
};

struct AgentState {
    AgentRef id;
    std::string name;
    HexCoord pos;
    int health = 100;
    int storage = 0;
    bool alive = true;
    double alpha_pr = 0.3;

    NeedState needs;
    LocationMemory loc_mem;
    SocialMemory soc_mem;
    std::array<ActionPlanState, kPlanCount> plan_states;
    std::vector<FoodCluster> clusters;

    std::optional<Motive> current;
    PlanExec exec;

    std::vector<InboxEntry> inbox;
    std::optional<UnderAttack> under_attack;
    std::vector<std::pair<AgentRef, std::int64_t>> attack_notices;  // set at boundaries

    Rng rng{0};
    std::map<AgentRef, HexCoord> last_seen;
    std::vector<AgentRef> visible_now;  // refreshed by sense each tick

    ActionPlanState& plan_state(PlanId p) { return plan_states[static_cast<int>(p)]; }
    const ActionPlanState& plan_state(PlanId p) const {
        return plan_states[static_cast<int>(p)];
    }
};

// Runs the full per-agent tick: leakage, memory decay, sensing, inbox
// processing, motive selection, starvation, one basic-action step.
void agent_tick(World& w, AgentState& a);

// Applies a finished plan's outcome: effective signals into tanks and
// location memory, Pr/E learning, the End log event, and clearing the
// current motive. `partner` scales relationship-dependent signals.
void finalize_plan(World& w, AgentState& a, bool succeeded,
                   std::optional<AgentRef> partner);

// Folds newly seen food tiles into the agent's cluster map.
void update_food_clusters(AgentState& a, const std::vector<HexCoord>& food_tiles,
                          std::int64_t tick);

}  // namespace psi
