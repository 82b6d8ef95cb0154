#include "psi/world.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

#include "psi/personality.hpp"
#include "psi/util.hpp"

namespace psi {

using nlohmann::json;

World::World(WorldMap map, RunConfig cfg, ScenarioSpec spec)
    : map_(std::move(map)),
      cfg_(std::move(cfg)),
      spec_(spec),
      food_rng_(Rng::stream(static_cast<std::uint64_t>(spec.sim_seed), {'F'})) {
    int teams = spec_.scenario == Scenario::S1 ? 1 : 2;
    json roster_meta = json::array();
    for (int team = 1; team <= teams; ++team) {
        std::vector<Personality> troops =
            make_team(cfg_, spec_.group_seed, team, cfg_.agents_per_group);
        RegionKind region = team == 1 ? RegionKind::Spawn1 : RegionKind::Spawn2;
        std::vector<HexCoord> tiles = map_.region_tiles(region);
        if (static_cast<int>(tiles.size()) < cfg_.agents_per_group)
            throw ConfigError("spawn region for team " + std::to_string(team) +
                              " has fewer tiles than agents");
        for (int i = 0; i < cfg_.agents_per_group; ++i) {
            AgentState a;
            a.id = AgentRef{team, i};
            a.name = troops[i].name;
            a.pos = tiles[i];
            a.health = cfg_.health_max;
            a.alpha_pr = troops[i].alpha_pr;
            a.needs.set_value = troops[i].set_values;
            a.needs.leakage = troops[i].leakages;
            for (NeedId n : kAllNeeds)
                at(a.needs.current, n) = clamp01(at(a.needs.set_value, n) *
                                                 at(cfg_.initial_fill_fraction, n));
            for (PlanId p : kAllPlans) {
                a.plan_state(p).pr = 1.0;
                a.plan_state(p).expected = cfg_.signals.row(p, true);
            }
            a.rng = Rng::stream(static_cast<std::uint64_t>(spec_.sim_seed),
                                {'A', static_cast<std::uint64_t>(team),
                                 static_cast<std::uint64_t>(i)});

            json m;
            m["id"] = to_string(a.id);
            m["name"] = a.name;
            m["group"] = team;
            m["alpha_pr"] = a.alpha_pr;
            json set = json::object(), leak = json::object();
            for (NeedId n : kAllNeeds) {
                set[to_string(n)] = at(a.needs.set_value, n);
                leak[to_string(n)] = at(a.needs.leakage, n);
            }
            m["set"] = set;
            m["leakage"] = leak;
            m["start"] = json::array({a.pos.q, a.pos.r});
            roster_meta.push_back(m);

            occupancy_.emplace(a.pos, a.id);
            roster_.push_back(std::move(a));
        }
    }

    json h;
    h["psisim_log"] = 1;
    h["version"] = "0.1.0";
    h["scenario"] = to_string(spec_.scenario);
    h["group_seed"] = spec_.group_seed;
    h["sim_seed"] = spec_.sim_seed;
    h["map"] = map_.name();
    h["agents"] = roster_meta;
    h["config"] = json::parse(cfg_.to_json_text());
    log_.header_json = h.dump();

    for (const AgentState& a : roster_) {
        Event ev;
        ev.kind = EventKind::Spawn;
        ev.tick = 0;
        ev.actor = a.id;
        ev.pos = a.pos;
        log(ev);
    }
}

AgentState& World::agent(AgentRef id) {
    for (AgentState& a : roster_)
        if (a.id == id) return a;
    throw std::logic_error("unknown agent ref " + to_string(id));
}

const AgentState& World::agent(AgentRef id) const {
    for (const AgentState& a : roster_)
        if (a.id == id) return a;
    throw std::logic_error("unknown agent ref " + to_string(id));
}

AgentState* World::agent_at(HexCoord pos) {
    auto it = occupancy_.find(pos);
    if (it == occupancy_.end()) return nullptr;
    return &agent(it->second);
}

void World::log(Event e) { log_.events.push_back(std::move(e)); }

void World::step() {
    spawn_food();
    for (AgentState& a : roster_)
        if (a.alive) agent_tick(*this, a);
    apply_effects();
    for (AgentState& a : roster_)
        if (a.alive && a.health <= 0) process_death(a);
    ++tick_;
}

void World::run() {
    while (tick_ < cfg_.ticks) step();
}

void World::spawn_food() {
    for (HexCoord p : map_.food_spawn_points())
        if (food_rng_.bernoulli(cfg_.food_spawn_prob)) {
            map_.add_food(p, 1);
            ++food_spawned_;
        }
}

void World::apply_effects() {
    std::vector<Effect> q;
    q.swap(effects_);
    for (const Effect& e : q)
        std::visit([&](const auto& ee) { apply(ee); }, e);
}

void World::move_agent(AgentState& a, HexCoord to) {
    occupancy_.erase(a.pos);
    a.pos = to;
    occupancy_.emplace(to, a.id);
}

void World::apply(const MoveEffect& e) {
    AgentState& a = agent(e.who);
    if (!a.alive) return;
    if (hex_distance(a.pos, e.to) != 1) return;
    if (!map_.accessible(e.to)) return;
    if (agent_at(e.to) == nullptr) {
        move_agent(a, e.to);
        return;
    }
    // tile taken: half the time try to slip onto a free neighboring tile
    if (!a.rng.bernoulli(0.5)) return;
    std::vector<HexCoord> open;
    for (HexCoord n : hex_neighbors(a.pos))
        if (map_.accessible(n) && agent_at(n) == nullptr) open.push_back(n);
    if (open.empty()) return;
    move_agent(a, open[a.rng.uniform_int(static_cast<int>(open.size()))]);
}

void World::apply(const ShoutEffect& e) {
    const ShoutOut& s = e.shout;
    if (!agent(s.sender).alive) return;
    Event ev;
    ev.kind = EventKind::Shout;
    ev.tick = tick_;
    ev.actor = s.sender;
    ev.shout = s.kind;
    ev.subject = s.subject;
    ev.pos = s.origin;
    log(ev);
    for (AgentState& o : roster_) {
        if (!o.alive || o.id == s.sender) continue;
        if (hex_distance(o.pos, s.origin) > cfg_.view_range) continue;
        o.inbox.push_back(InboxEntry{s, tick_ + cfg_.inbox_ttl});
    }
}

void World::feedback(AgentRef from, AgentRef to, double delta) {
    AgentState& f = agent(from);
    if (!f.alive) return;
    double before = f.soc_mem.score_or_zero(to);
    f.soc_mem.apply_feedback(to, delta, tick_);
    double after = f.soc_mem.score_or_zero(to);
    Event ev;
    ev.kind = EventKind::Score;
    ev.tick = tick_;
    ev.actor = from;
    ev.other = to;
    ev.value = after - before;
    ev.value2 = after;
    log(ev);
}

void World::apply(const HitEffect& e) {
    AgentState& att = agent(e.attacker);
    AgentState& vic = agent(e.target);
    bool landed = att.alive && vic.alive && hex_distance(att.pos, vic.pos) <= 1 &&
                  e.damage > 0;
    if (landed) {
        vic.health = std::max(0, vic.health - e.damage);
        double pain = -static_cast<double>(e.damage) / cfg_.health_max;
        apply_signal(vic.needs, NeedId::PainAvoidance, pain);
        vic.loc_mem.record_signal(vic.pos, NeedId::PainAvoidance, pain);
        vic.attack_notices.emplace_back(e.attacker, tick_);
        feedback(e.target, e.attacker, cfg_.attack_feedback);
        Event ev;
        ev.kind = EventKind::Hit;
        ev.tick = tick_;
        ev.actor = e.attacker;
        ev.other = e.target;
        ev.value = e.damage;
        ev.value2 = vic.health;
        log(ev);
        if (e.assist_for && *e.assist_for != e.target)
            feedback(*e.assist_for, e.attacker, cfg_.social_reward);
        if (vic.health <= 0) process_death(vic);
    }
    if (att.alive) {
        att.exec.async_result =
            AsyncResult{AsyncResult::Kind::HitLanded, landed, e.target, false};
    }
}

void World::apply(const HealEffect& e) {
    AgentState& h = agent(e.healer);
    AgentState& t = agent(e.target);
    bool ok = h.alive && t.alive && hex_distance(h.pos, t.pos) <= 1 &&
              e.amount > 0 && t.health < cfg_.health_max;
    if (ok) {
        int before = t.health;
        t.health = std::min(cfg_.health_max, t.health + e.amount);
        int gained = t.health - before;
        double relief = static_cast<double>(gained) / cfg_.health_max;
        apply_signal(t.needs, NeedId::PainAvoidance, relief);
        t.loc_mem.record_signal(t.pos, NeedId::PainAvoidance, relief);
        Event ev;
        ev.kind = EventKind::Heal;
        ev.tick = tick_;
        ev.actor = e.healer;
        ev.other = e.target;
        ev.value = gained;
        ev.value2 = t.health;
        log(ev);
        feedback(e.target, e.healer, cfg_.social_reward);
        feedback(e.healer, e.target, cfg_.social_reward);
        if (t.current && t.current->plan == PlanId::RequestHeal &&
            t.exec.phase == ExecPhase::Wait)
            t.exec.async_result =
                AsyncResult{AsyncResult::Kind::HealReceived, true, e.healer, false};
    }
    if (h.alive)
        h.exec.async_result =
            AsyncResult{AsyncResult::Kind::HealDelivered, ok, e.target, false};
}

void World::apply(const TransferEffect& e) {
    AgentState& g = agent(e.from);
    AgentState& r = agent(e.to);
    // the gift completes only if the requester is still waiting for it
    bool ok = g.alive && r.alive && g.storage > 0 &&
              hex_distance(g.pos, r.pos) <= 1 && r.current &&
              r.current->plan == PlanId::CallForFood &&
              r.exec.phase == ExecPhase::Wait;
    if (ok) {
        g.storage -= 1;
        ++food_eaten_;  // the requester eats it on the spot
        Event ev;
        ev.kind = EventKind::Transfer;
        ev.tick = tick_;
        ev.actor = e.from;
        ev.other = e.to;
        log(ev);
        feedback(e.to, e.from, cfg_.social_reward);
        feedback(e.from, e.to, cfg_.social_reward);
        r.exec.async_result =
            AsyncResult{AsyncResult::Kind::FoodReceived, true, e.from, false};
    }
    if (g.alive)
        g.exec.async_result =
            AsyncResult{AsyncResult::Kind::TransferDelivered, ok, e.to, false};
}

void World::apply(const CollectEffect& e) {
    AgentState& a = agent(e.who);
    if (!a.alive) return;
    bool ok = false;
    if (a.pos == e.tile) {
        if (e.eat) {
            ok = map_.take_food(e.tile);
            if (ok) ++food_eaten_;
        } else if (a.storage < cfg_.storage_capacity) {
            ok = map_.take_food(e.tile);
            if (ok) a.storage += 1;
        }
    }
    a.exec.async_result = AsyncResult{AsyncResult::Kind::Collect, ok, std::nullopt, e.eat};
}

void World::apply(const PledgeEffect& e) {
    AgentState& req = agent(e.requester);
    if (!req.alive || !req.current) return;
    if (req.current->plan != e.requested) return;
    if (e.requested == PlanId::ExchangeLocationInfo ||
        e.requested == PlanId::ExchangeSocialInfo) {
        const AgentRef* t = std::get_if<AgentRef>(&req.current->target);
        if (!t || *t != e.responder) return;
    }
    req.exec.pledged = true;
    if (req.exec.phase == ExecPhase::Wait)
        req.exec.wait_left = std::max(req.exec.wait_left, cfg_.delivery_wait);
}

void World::share_location_info(AgentState& src, AgentState& dst) {
    const auto& cells = src.loc_mem.cells();
    std::size_t n = cells.size();
    if (n == 0) return;
    std::vector<HexCoord> keys;
    keys.reserve(n);
    for (const auto& [c, cell] : cells) keys.push_back(c);
    std::vector<HexCoord> picked;
    if (static_cast<int>(n) <= cfg_.exchange_tiles) {
        picked = keys;
    } else {
        std::vector<char> used(n, 0);
        while (static_cast<int>(picked.size()) < cfg_.exchange_tiles) {
            int i = src.rng.uniform_int(static_cast<int>(n));
            if (used[i]) continue;
            used[i] = 1;
            picked.push_back(keys[i]);
        }
    }
    for (HexCoord c : picked)
        dst.loc_mem.merge_remote(c, src.loc_mem.cell(c)->assoc,
                                 cfg_.discounts.location, tick_);
}

std::optional<AgentRef> World::share_social_info(AgentState& src, AgentState& dst) {
    std::vector<AgentRef> topics;
    for (const auto& [ref, rec] : src.soc_mem.records())
        if (ref != dst.id && ref != src.id) topics.push_back(ref);
    if (topics.empty()) return std::nullopt;
    AgentRef topic = topics[src.rng.uniform_int(static_cast<int>(topics.size()))];
    dst.soc_mem.merge_remote(topic, src.soc_mem.score_or_zero(topic), cfg_.discounts,
                             tick_);
    return topic;
}

void World::apply(const ExchangeCommitEffect& e) {
    AgentState& resp = agent(e.responder);
    AgentState& init = agent(e.initiator);
    bool ok = resp.alive && init.alive && hex_distance(resp.pos, init.pos) <= 1 &&
              init.current && init.current->plan == e.kind &&
              init.exec.phase == ExecPhase::Wait;
    if (ok) {
        const AgentRef* t = std::get_if<AgentRef>(&init.current->target);
        ok = t && *t == e.responder;
    }
    if (ok) {
        std::optional<AgentRef> topic;
        if (e.kind == PlanId::ExchangeLocationInfo) {
            share_location_info(resp, init);
            share_location_info(init, resp);
        } else {
            // the accepting side tells the asker about a third party
            topic = share_social_info(resp, init);
        }
        feedback(e.responder, e.initiator, cfg_.social_reward);
        feedback(e.initiator, e.responder, cfg_.social_reward);
        Event ev;
        ev.kind = EventKind::Exchange;
        ev.tick = tick_;
        ev.actor = e.initiator;
        ev.other = e.responder;
        ev.plan = e.kind;
        ev.subject = topic;
        log(ev);
        init.exec.async_result =
            AsyncResult{AsyncResult::Kind::ExchangeDone, true, e.responder, false};
    }
    if (resp.alive)
        resp.exec.async_result =
            AsyncResult{AsyncResult::Kind::ExchangeDone, ok, e.initiator, false};
}

void World::process_death(AgentState& a) {
    if (!a.alive) return;
    a.alive = false;
    occupancy_.erase(a.pos);
    if (a.storage > 0) {  // carried food falls to the ground
        map_.add_food(a.pos, a.storage);
        a.storage = 0;
    }
    a.current.reset();
    a.exec = PlanExec{};
    Event ev;
    ev.kind = EventKind::Death;
    ev.tick = tick_;
    ev.actor = a.id;
    ev.pos = a.pos;
    log(ev);
}

SocialNetworkSnapshot World::snapshot() const {
    SocialNetworkSnapshot s;
    s.tick = tick_;
    for (const AgentState& a : roster_)
        s.nodes.push_back(NetworkNode{a.id, a.name, a.alive});
    for (const AgentState& a : roster_)
        for (const auto& [ref, rec] : a.soc_mem.records())
            s.edges.push_back(NetworkEdge{a.id, ref, rec.score});
    return s;
}

RunLog World::take_log() {
    log_.final_network = snapshot();
    return std::move(log_);
}

void World::check_invariants() const {
    auto fail = [](const std::string& m) {
        throw std::logic_error("invariant violated: " + m);
    };
    long carried = 0;
    std::map<HexCoord, int> occ_check;
    for (const AgentState& a : roster_) {
        for (NeedId n : kAllNeeds) {
            double c = at(a.needs.current, n);
            if (!(c >= 0.0 && c <= 1.0)) fail("tank fill out of range");
        }
        for (const auto& [ref, rec] : a.soc_mem.records())
            if (!(rec.score >= -1.0 && rec.score <= 1.0))
                fail("social score out of range");
        for (const auto& [c, cell] : a.loc_mem.cells())
            for (NeedId n : kAllNeeds)
                if (!(at(cell.assoc, n) >= -1.0 && at(cell.assoc, n) <= 1.0))
                    fail("tile association out of range");
        if (!a.alive) continue;
        if (a.health < 0 || a.health > cfg_.health_max) fail("health out of range");
        if (a.storage < 0 || a.storage > cfg_.storage_capacity)
            fail("storage out of range");
        if (!map_.accessible(a.pos)) fail("agent on a blocked tile");
        if (++occ_check[a.pos] > 1) fail("two agents on one tile");
        carried += a.storage;
    }
    if (map_.total_ground_food() + carried != food_spawned_ - food_eaten_)
        fail("food not conserved");
    for (const auto& [c, id] : occupancy_) {
        const AgentState& a = agent(id);
        if (!a.alive || a.pos != c) fail("occupancy table stale");
    }
}

World make_world(const RunConfig& cfg, const ScenarioSpec& spec) {
    WorldMap m = WorldMap::load(cfg.resolved_map_path());
    return World(std::move(m), cfg, spec);
}

RunLog run_scenario(const RunConfig& cfg, const ScenarioSpec& spec) {
    World w = make_world(cfg, spec);
    w.run();
    return w.take_log();
}

}  // namespace psi
