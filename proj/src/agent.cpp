#include "psi/agent.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <variant>

#include "psi/world.hpp"

namespace psi {

namespace {

struct Candidate {
    PlanId plan = PlanId::Explore;
    MotiveTarget target{};
    std::optional<AgentRef> respond_to;
    std::optional<AgentRef> assist_for;
    double urgency = 0.0;
    double strength = 0.0;
};

// ---- sensing -------------------------------------------------------------

void sense(World& w, AgentState& a) {
    const RunConfig& cfg = w.config();
    std::vector<HexCoord> food_tiles;
    for (HexCoord c : w.map().tiles_within(a.pos, cfg.view_range)) {
        a.loc_mem.discover(c, w.tick());
        if (w.map().food_at(c) > 0) food_tiles.push_back(c);
    }
    update_food_clusters(a, food_tiles, w.tick());

    a.visible_now.clear();
    for (const AgentState& o : w.roster()) {
        if (!o.alive || o.id == a.id) continue;
        if (hex_distance(a.pos, o.pos) > cfg.view_range) continue;
        a.visible_now.push_back(o.id);
        a.last_seen[o.id] = o.pos;
        if (!a.soc_mem.knows(o.id)) {
            double s = init_social_score(a.rng, o.id.group == a.id.group,
                                         w.spec().scenario, cfg.social_init);
            a.soc_mem.insert(o.id, s, w.tick());
            Event ev;
            ev.kind = EventKind::Meet;
            ev.tick = w.tick();
            ev.actor = a.id;
            ev.other = o.id;
            ev.value = s;
            w.log(ev);
        }
    }
}

// ---- boundary deliveries --------------------------------------------------

void consume_async(World& w, AgentState& a) {
    AsyncResult r = *a.exec.async_result;
    a.exec.async_result.reset();
    a.exec.awaiting_async = false;
    if (!a.current) return;
    PlanId p = a.current->plan;
    switch (r.kind) {
    case AsyncResult::Kind::Collect:
        if (p == PlanId::CollectFood) {
            finalize_plan(w, a, r.success, std::nullopt);
        } else if (p == PlanId::SearchFood || p == PlanId::GeneralFood) {
            // a miss (someone grabbed it first) just continues the plan
            if (r.success) finalize_plan(w, a, true, std::nullopt);
        }
        break;
    case AsyncResult::Kind::HitLanded:
        if (p == PlanId::Engage) finalize_plan(w, a, r.success, r.partner);
        break;
    case AsyncResult::Kind::HealDelivered:
        if (p == PlanId::GoHeal) finalize_plan(w, a, r.success, r.partner);
        break;
    case AsyncResult::Kind::HealReceived:
        if (p == PlanId::RequestHeal) finalize_plan(w, a, r.success, r.partner);
        break;
    case AsyncResult::Kind::FoodReceived:
        if (p == PlanId::CallForFood) finalize_plan(w, a, r.success, r.partner);
        break;
    case AsyncResult::Kind::TransferDelivered:
        if (p == PlanId::GiveFood) finalize_plan(w, a, r.success, r.partner);
        break;
    case AsyncResult::Kind::ExchangeDone:
        if (p == PlanId::ExchangeLocationInfo || p == PlanId::ExchangeSocialInfo)
            finalize_plan(w, a, r.success, r.partner);
        break;
    }
}

void process_boundary_state(World& w, AgentState& a) {
    const RunConfig& cfg = w.config();
    for (auto [attacker, hit_tick] : a.attack_notices) {
        bool fresh = !a.under_attack || a.under_attack->attacker != attacker;
        double c_engage =
            competence_indicator(at(a.needs.current, NeedId::Competence),
                                 a.plan_state(PlanId::Engage).pr, cfg.alpha_c);
        bool flee = a.health < cfg.health_max * cfg.flee_health_fraction ||
                    c_engage < 0.5;
        a.under_attack = UnderAttack{attacker, hit_tick + cfg.under_attack_ticks, flee};
        if (flee && fresh) {
            w.queue(ShoutEffect{
                ShoutOut{ShoutKind::HelpAttacked, a.id, attacker, a.pos, w.tick()}});
        }
    }
    a.attack_notices.clear();
    if (a.under_attack && w.tick() >= a.under_attack->until) a.under_attack.reset();

    std::erase_if(a.inbox,
                  [&](const InboxEntry& e) { return e.expires_at <= w.tick(); });

    if (a.exec.async_result) consume_async(w, a);
}

// ---- urgency --------------------------------------------------------------

double urgency_of(const World& w, const AgentState& a, PlanId p,
                  std::optional<AgentRef> respond_to) {
    const RunConfig& cfg = w.config();
    switch (p) {
    case PlanId::CollectFood:
        return cfg.urgency_food;  // candidate only exists while food is in view
    case PlanId::Flee:
        return (a.under_attack &&
                a.health < cfg.health_max * cfg.flee_health_fraction)
                   ? cfg.urgency_flee
                   : 0.0;
    case PlanId::GiveFood:
    case PlanId::GoHeal: {
        std::optional<AgentRef> req = respond_to;
        if (!req && a.current && a.current->plan == p) req = a.exec.respond_to;
        if (req && a.soc_mem.score_or_zero(*req) > 0) return cfg.urgency_help;
        return 0.0;
    }
    default:
        return 0.0;
    }
}

double candidate_strength(const World& w, const AgentState& a, PlanId p,
                          const MotiveTarget& tgt, double urgency) {
    const RunConfig& cfg = w.config();
    NeedVec inds = need_indicators(a.needs, cfg.weights);
    std::optional<double> s;
    if (is_relationship_dependent(p)) {
        if (const AgentRef* t = std::get_if<AgentRef>(&tgt))
            s = a.soc_mem.score_or_zero(*t);
        else
            s = 0.0;  // untargeted requests: neutral partner assumed
    }
    NeedVec e = adjust_for_relationship(a.plan_state(p).expected, p, s);
    double m_prime = preliminary_strength(inds, e);
    double c = competence_indicator(at(a.needs.current, NeedId::Competence),
                                    a.plan_state(p).pr, cfg.alpha_c);
    return motive_strength(m_prime, urgency, c);
}

// ---- candidate enumeration --------------------------------------------------

std::vector<Candidate> enumerate_candidates(World& w, AgentState& a) {
    const RunConfig& cfg = w.config();
    std::vector<Candidate> out;
    auto add = [&](PlanId p, MotiveTarget t, std::optional<AgentRef> resp,
                   std::optional<AgentRef> assist) {
        for (const Candidate& c : out)
            if (c.plan == p && c.target == t) return;  // first wins
        Candidate c;
        c.plan = p;
        c.target = t;
        c.respond_to = resp;
        c.assist_for = assist;
        out.push_back(c);
    };

    add(PlanId::Explore, {}, std::nullopt, std::nullopt);

    for (AgentRef v : a.visible_now) {
        std::optional<AgentRef> assist;
        for (const InboxEntry& e : a.inbox)
            if (e.shout.kind == ShoutKind::HelpAttacked && e.shout.subject &&
                *e.shout.subject == v) {
                assist = e.shout.sender;
                break;
            }
        add(PlanId::Engage, v, std::nullopt, assist);
    }

    if (a.under_attack) add(PlanId::Flee, a.under_attack->attacker, std::nullopt, std::nullopt);

    add(PlanId::SearchFood, {}, std::nullopt, std::nullopt);

    if (a.storage < cfg.storage_capacity) {
        std::optional<HexCoord> best;
        int best_d = INT_MAX;
        for (HexCoord c : w.map().tiles_within(a.pos, cfg.view_range))
            if (w.map().food_at(c) > 0) {
                int d = hex_distance(a.pos, c);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
        if (best) add(PlanId::CollectFood, *best, std::nullopt, std::nullopt);
    }

    if (a.storage > 0) add(PlanId::GeneralFood, {}, std::nullopt, std::nullopt);
    {
        std::vector<const FoodCluster*> cl;
        cl.reserve(a.clusters.size());
        for (const FoodCluster& c : a.clusters) cl.push_back(&c);
        std::sort(cl.begin(), cl.end(), [&](const FoodCluster* x, const FoodCluster* y) {
            int dx = hex_distance(a.pos, x->center);
            int dy = hex_distance(a.pos, y->center);
            if (dx != dy) return dx < dy;
            return x->center < y->center;
        });
        int n = std::min<int>(static_cast<int>(cl.size()), cfg.max_cluster_candidates);
        for (int i = 0; i < n; ++i)
            add(PlanId::GeneralFood, cl[i]->center, std::nullopt, std::nullopt);
    }

    add(PlanId::CallForFood, {}, std::nullopt, std::nullopt);

    if (a.storage > 0)
        for (const InboxEntry& e : a.inbox)
            if (e.shout.kind == ShoutKind::FoodRequest && w.agent(e.shout.sender).alive)
                add(PlanId::GiveFood, e.shout.sender, e.shout.sender, std::nullopt);

    if (a.health < cfg.health_max) {
        add(PlanId::SelfHeal, {}, std::nullopt, std::nullopt);
        add(PlanId::RequestHeal, {}, std::nullopt, std::nullopt);
    }

    for (const InboxEntry& e : a.inbox)
        if (e.shout.kind == ShoutKind::HealRequest && w.agent(e.shout.sender).alive)
            add(PlanId::GoHeal, e.shout.sender, e.shout.sender, std::nullopt);

    // responders first so the respond_to flavor survives deduplication
    for (const InboxEntry& e : a.inbox)
        if (e.shout.kind == ShoutKind::LocationInfoExchange && e.shout.subject &&
            *e.shout.subject == a.id && w.agent(e.shout.sender).alive)
            add(PlanId::ExchangeLocationInfo, e.shout.sender, e.shout.sender, std::nullopt);
    for (AgentRef v : a.visible_now)
        add(PlanId::ExchangeLocationInfo, v, std::nullopt, std::nullopt);

    for (const InboxEntry& e : a.inbox)
        if (e.shout.kind == ShoutKind::SocialInfoExchange && e.shout.subject &&
            *e.shout.subject == a.id && w.agent(e.shout.sender).alive)
            add(PlanId::ExchangeSocialInfo, e.shout.sender, e.shout.sender, std::nullopt);
    if (a.soc_mem.size() >= 2)
        for (AgentRef v : a.visible_now)
            add(PlanId::ExchangeSocialInfo, v, std::nullopt, std::nullopt);

    return out;
}

// ---- selection --------------------------------------------------------------

ShoutKind shout_kind_for_response(PlanId p) {
    switch (p) {
    case PlanId::GiveFood: return ShoutKind::FoodRequest;
    case PlanId::GoHeal: return ShoutKind::HealRequest;
    case PlanId::ExchangeLocationInfo: return ShoutKind::LocationInfoExchange;
    default: return ShoutKind::SocialInfoExchange;
    }
}

PlanId requested_plan_for_response(PlanId p) {
    switch (p) {
    case PlanId::GiveFood: return PlanId::CallForFood;
    case PlanId::GoHeal: return PlanId::RequestHeal;
    default: return p;  // exchanges pair with themselves
    }
}

int initial_ttl(const RunConfig& cfg, PlanId p, bool responder) {
    switch (p) {
    case PlanId::Explore: return cfg.cluster_timeout;
    case PlanId::Engage: return cfg.engage_timeout;
    case PlanId::Flee: return cfg.flee_timeout;
    case PlanId::CollectFood: return cfg.engage_timeout;
    case PlanId::GeneralFood: return cfg.cluster_timeout;
    case PlanId::GiveFood:
    case PlanId::GoHeal: return cfg.delivery_wait;
    case PlanId::ExchangeLocationInfo:
    case PlanId::ExchangeSocialInfo:
        return responder ? cfg.delivery_wait : cfg.delivery_wait + cfg.response_wait;
    default: return 0;  // 0 = no time limit; bounded elsewhere
    }
}

void select_step(World& w, AgentState& a) {
    const RunConfig& cfg = w.config();
    std::vector<Candidate> cands = enumerate_candidates(w, a);
    for (Candidate& c : cands) {
        c.urgency = urgency_of(w, a, c.plan, c.respond_to);
        c.strength = candidate_strength(w, a, c.plan, c.target, c.urgency);
    }
    std::vector<Motive> motives;
    motives.reserve(cands.size());
    for (const Candidate& c : cands)
        motives.push_back(Motive{c.plan, c.target, c.strength});

    std::optional<Motive> cur;
    if (a.current) {
        double urg = urgency_of(w, a, a.current->plan, std::nullopt);
        cur = Motive{a.current->plan, a.current->target,
                     candidate_strength(w, a, a.current->plan, a.current->target, urg)};
    }
    if (motives.empty()) {
        if (cur) a.current->strength = cur->strength;
        return;
    }
    Motive sel = select_motive(cur, motives, cfg.tau);
    if (cur && sel.plan == cur->plan && sel.target == cur->target) {
        a.current->strength = sel.strength;
        return;
    }

    if (a.current) {
        Event ev;
        ev.kind = EventKind::Abandon;
        ev.tick = w.tick();
        ev.actor = a.id;
        ev.plan = a.current->plan;
        ev.target = target_string(a.current->target);
        if (const AgentRef* t = std::get_if<AgentRef>(&a.current->target)) ev.other = *t;
        w.log(ev);
    }

    const Candidate* chosen = nullptr;
    for (const Candidate& c : cands)
        if (c.plan == sel.plan && c.target == sel.target) {
            chosen = &c;
            break;
        }

    a.current = Motive{sel.plan, sel.target, sel.strength};
    a.exec = PlanExec{};
    if (chosen) {
        a.exec.respond_to = chosen->respond_to;
        a.exec.assist_for = chosen->assist_for;
    }
    a.exec.ttl = initial_ttl(cfg, sel.plan, a.exec.respond_to.has_value());

    if (a.exec.respond_to) {
        ShoutKind want = shout_kind_for_response(sel.plan);
        for (auto it = a.inbox.begin(); it != a.inbox.end(); ++it)
            if (it->shout.kind == want && it->shout.sender == *a.exec.respond_to) {
                a.inbox.erase(it);
                break;
            }
        w.queue(PledgeEffect{a.id, *a.exec.respond_to,
                             requested_plan_for_response(sel.plan)});
    }
    if (a.exec.assist_for)
        for (auto it = a.inbox.begin(); it != a.inbox.end(); ++it)
            if (it->shout.kind == ShoutKind::HelpAttacked &&
                it->shout.sender == *a.exec.assist_for) {
                a.inbox.erase(it);
                break;
            }

    Event ev;
    ev.kind = EventKind::Adopt;
    ev.tick = w.tick();
    ev.actor = a.id;
    ev.plan = sel.plan;
    ev.target = target_string(sel.target);
    if (const AgentRef* t = std::get_if<AgentRef>(&sel.target)) ev.other = *t;
    ev.value = sel.strength;
    w.log(ev);
}

// ---- travel -----------------------------------------------------------------

enum class TravelResult { Arrived, Stepping, Stuck };

TravelResult travel_toward(World& w, AgentState& a, HexCoord dest) {
    if (a.pos == dest) return TravelResult::Arrived;
    PlanExec& ex = a.exec;
    bool valid_cache = ex.dest && *ex.dest == dest && !ex.path.empty() &&
                       ex.path_idx < ex.path.size() && ex.path[ex.path_idx] == a.pos;
    if (!valid_cache) {
        auto known = [&](HexCoord c) { return a.loc_mem.knows(c) || c == dest; };
        auto p = find_path(w.map(), known, a.pos, dest);
        if (!p) {
            ex.path.clear();
            return TravelResult::Stuck;
        }
        ex.path = std::move(*p);
        ex.path_idx = 0;
        ex.dest = dest;
    }
    if (ex.path_idx + 1 >= ex.path.size()) return TravelResult::Arrived;
    w.queue(MoveEffect{a.id, ex.path[ex.path_idx + 1]});
    ++ex.path_idx;
    return TravelResult::Stepping;
}

// Decrements the plan's time budget; 0 means unlimited.
bool ttl_expired(AgentState& a) {
    if (a.exec.ttl <= 0) return false;
    return --a.exec.ttl == 0;
}

void start_wait(AgentState& a, int ticks) {
    a.exec.phase = ExecPhase::Wait;
    a.exec.wait_left = ticks;
}

// ---- per-plan execution -------------------------------------------------------

bool adopt_path(AgentState& a, HexCoord dest, std::vector<HexCoord> path) {
    a.exec.dest = dest;
    a.exec.path = std::move(path);
    a.exec.path_idx = 0;
    return true;
}

bool pick_explore_dest(World& w, AgentState& a) {
    std::vector<HexCoord> unknown, known;
    for (HexCoord c : w.map().all_accessible()) {
        if (c == a.pos) continue;
        (a.loc_mem.knows(c) ? known : unknown).push_back(c);
    }
    for (std::vector<HexCoord>* pool : {&unknown, &known}) {
        if (pool->empty()) continue;
        for (int tries = 0; tries < 5; ++tries) {
            HexCoord c = (*pool)[a.rng.uniform_int(static_cast<int>(pool->size()))];
            auto pred = [&](HexCoord x) { return a.loc_mem.knows(x) || x == c; };
            if (auto p = find_path(w.map(), pred, a.pos, c))
                return adopt_path(a, c, std::move(*p));
        }
    }
    return false;
}

void exec_explore(World& w, AgentState& a) {
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, std::nullopt);
        return;
    }
    PlanExec& ex = a.exec;
    if (ex.phase == ExecPhase::Init) {
        if (!pick_explore_dest(w, a)) {
            finalize_plan(w, a, false, std::nullopt);
            return;
        }
        ex.phase = ExecPhase::Travel;
    }
    switch (travel_toward(w, a, *ex.dest)) {
    case TravelResult::Arrived: finalize_plan(w, a, true, std::nullopt); return;
    case TravelResult::Stuck: finalize_plan(w, a, false, std::nullopt); return;
    case TravelResult::Stepping: return;
    }
}

bool pick_search_dest(World& w, AgentState& a) {
    std::vector<HexCoord> pool;
    for (const auto& [c, cell] : a.loc_mem.cells())
        if (c != a.pos && w.map().accessible(c)) pool.push_back(c);
    if (pool.empty()) return false;
    auto known = [&](HexCoord x) { return a.loc_mem.knows(x); };
    for (int tries = 0; tries < 5; ++tries) {
        HexCoord c = pool[a.rng.uniform_int(static_cast<int>(pool.size()))];
        if (auto p = find_path(w.map(), known, a.pos, c))
            return adopt_path(a, c, std::move(*p));
    }
    return false;
}

void exec_search_food(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    if (w.map().food_at(a.pos) > 0) {
        w.queue(CollectEffect{a.id, a.pos, true});
        ex.awaiting_async = true;
        return;
    }
    if (ex.phase == ExecPhase::Init) {
        ex.retries = w.config().search_food_retries;
        if (!pick_search_dest(w, a)) {
            finalize_plan(w, a, false, std::nullopt);
            return;
        }
        ex.phase = ExecPhase::Travel;
    }
    switch (travel_toward(w, a, *ex.dest)) {
    case TravelResult::Arrived:
        if (--ex.retries <= 0 || !pick_search_dest(w, a))
            finalize_plan(w, a, false, std::nullopt);
        return;
    case TravelResult::Stuck: finalize_plan(w, a, false, std::nullopt); return;
    case TravelResult::Stepping: return;
    }
}

void exec_collect_food(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    HexCoord t = std::get<HexCoord>(a.current->target);
    if (w.map().food_at(t) == 0 || a.storage >= w.config().storage_capacity) {
        finalize_plan(w, a, false, std::nullopt);
        return;
    }
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, std::nullopt);
        return;
    }
    if (a.pos == t) {
        w.queue(CollectEffect{a.id, t, false});
        ex.awaiting_async = true;
        return;
    }
    if (travel_toward(w, a, t) == TravelResult::Stuck)
        finalize_plan(w, a, false, std::nullopt);
}

void exec_general_food(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    if (std::holds_alternative<std::monostate>(a.current->target)) {
        bool ok = a.storage > 0;
        if (ok) {
            a.storage -= 1;
            w.note_food_eaten();
        }
        finalize_plan(w, a, ok, std::nullopt);
        return;
    }
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, std::nullopt);
        return;
    }
    if (w.map().food_at(a.pos) > 0) {
        w.queue(CollectEffect{a.id, a.pos, true});
        ex.awaiting_async = true;
        return;
    }
    HexCoord center = std::get<HexCoord>(a.current->target);
    HexCoord goal = (ex.retargeted && ex.dest) ? *ex.dest : center;
    TravelResult tr = travel_toward(w, a, goal);
    if (tr == TravelResult::Stuck) {
        finalize_plan(w, a, false, std::nullopt);
        return;
    }
    if (tr == TravelResult::Arrived) {
        // nothing underfoot: look around the cluster for standing food
        std::optional<HexCoord> best;
        int best_d = INT_MAX;
        for (HexCoord c : w.map().tiles_within(a.pos, w.config().view_range))
            if (w.map().food_at(c) > 0) {
                int d = hex_distance(a.pos, c);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
        if (!best) {
            finalize_plan(w, a, false, std::nullopt);
            return;
        }
        ex.retargeted = true;
        if (travel_toward(w, a, *best) == TravelResult::Stuck)
            finalize_plan(w, a, false, std::nullopt);
    }
}

void exec_call_for_food(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    if (ex.phase == ExecPhase::Init) {
        w.queue(ShoutEffect{
            ShoutOut{ShoutKind::FoodRequest, a.id, std::nullopt, a.pos, w.tick()}});
        start_wait(a, w.config().response_wait);
        return;
    }
    if (--ex.wait_left <= 0) finalize_plan(w, a, false, std::nullopt);
}

void exec_give_food(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    AgentRef tid = std::get<AgentRef>(a.current->target);
    const AgentState& t = w.agent(tid);
    if (!t.alive || a.storage <= 0) {
        finalize_plan(w, a, false, tid);
        return;
    }
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, tid);
        return;
    }
    if (hex_distance(a.pos, t.pos) <= 1) {
        w.queue(TransferEffect{a.id, tid});
        ex.awaiting_async = true;
        return;
    }
    if (travel_toward(w, a, t.pos) == TravelResult::Stuck)
        finalize_plan(w, a, false, tid);
}

void exec_self_heal(World& w, AgentState& a) {
    const RunConfig& cfg = w.config();
    if (a.health >= cfg.health_max) {
        finalize_plan(w, a, false, std::nullopt);
        return;
    }
    int h = static_cast<int>(
        std::llround(std::max(0.0, a.rng.normal(cfg.heal_mu, cfg.heal_sigma))));
    bool ok = h > 0;
    if (ok) {
        int before = a.health;
        a.health = std::min(cfg.health_max, a.health + h);
        int gained = a.health - before;
        double relief = static_cast<double>(gained) / cfg.health_max;
        apply_signal(a.needs, NeedId::PainAvoidance, relief);
        a.loc_mem.record_signal(a.pos, NeedId::PainAvoidance, relief);
        Event ev;
        ev.kind = EventKind::Heal;
        ev.tick = w.tick();
        ev.actor = a.id;
        ev.value = gained;
        ev.value2 = a.health;
        w.log(ev);
    }
    finalize_plan(w, a, ok, std::nullopt);
}

void exec_request_heal(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    if (ex.phase == ExecPhase::Init) {
        w.queue(ShoutEffect{
            ShoutOut{ShoutKind::HealRequest, a.id, std::nullopt, a.pos, w.tick()}});
        start_wait(a, w.config().response_wait);
        return;
    }
    if (--ex.wait_left <= 0) finalize_plan(w, a, false, std::nullopt);
}

void exec_go_heal(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    const RunConfig& cfg = w.config();
    AgentRef tid = std::get<AgentRef>(a.current->target);
    const AgentState& t = w.agent(tid);
    if (!t.alive) {
        finalize_plan(w, a, false, tid);
        return;
    }
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, tid);
        return;
    }
    if (hex_distance(a.pos, t.pos) <= 1) {
        int h = static_cast<int>(
            std::llround(std::max(0.0, a.rng.normal(cfg.heal_mu, cfg.heal_sigma))));
        w.queue(HealEffect{a.id, tid, h});
        ex.awaiting_async = true;
        return;
    }
    if (travel_toward(w, a, t.pos) == TravelResult::Stuck)
        finalize_plan(w, a, false, tid);
}

void exec_engage(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    const RunConfig& cfg = w.config();
    AgentRef tid = std::get<AgentRef>(a.current->target);
    const AgentState& t = w.agent(tid);
    if (!t.alive) {
        finalize_plan(w, a, false, tid);
        return;
    }
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, tid);
        return;
    }
    int d = hex_distance(a.pos, t.pos);
    if (d <= 1) {
        int dmg = static_cast<int>(
            std::llround(std::max(0.0, a.rng.normal(cfg.damage_mu, cfg.damage_sigma))));
        w.queue(HitEffect{a.id, tid, dmg, ex.assist_for});
        ex.awaiting_async = true;
        return;
    }
    if (d > cfg.view_range) {
        finalize_plan(w, a, false, tid);  // lost sight of it
        return;
    }
    if (travel_toward(w, a, t.pos) == TravelResult::Stuck)
        finalize_plan(w, a, false, tid);
}

bool pick_flee_dest(World& w, AgentState& a, HexCoord threat) {
    const RunConfig& cfg = w.config();
    auto known = [&](HexCoord x) { return a.loc_mem.knows(x); };
    std::vector<HexCoord> pool;
    for (const auto& [c, cell] : a.loc_mem.cells()) {
        if (c == a.pos || !w.map().accessible(c)) continue;
        if (at(cell.assoc, NeedId::PainAvoidance) < 0) continue;  // known-bad spots
        if (hex_distance(c, threat) <= cfg.view_range) continue;
        pool.push_back(c);
    }
    for (int tries = 0; tries < 5 && !pool.empty(); ++tries) {
        HexCoord c = pool[a.rng.uniform_int(static_cast<int>(pool.size()))];
        if (auto p = find_path(w.map(), known, a.pos, c))
            return adopt_path(a, c, std::move(*p));
    }
    // fall back to the farthest reachable known tiles
    std::vector<HexCoord> all;
    for (const auto& [c, cell] : a.loc_mem.cells())
        if (c != a.pos && w.map().accessible(c)) all.push_back(c);
    std::sort(all.begin(), all.end(), [&](HexCoord x, HexCoord y) {
        int dx = hex_distance(x, threat);
        int dy = hex_distance(y, threat);
        if (dx != dy) return dx > dy;
        return x < y;
    });
    for (std::size_t i = 0; i < all.size() && i < 5; ++i)
        if (auto p = find_path(w.map(), known, a.pos, all[i]))
            return adopt_path(a, all[i], std::move(*p));
    return false;
}

void exec_flee(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    const RunConfig& cfg = w.config();
    AgentRef tid = std::get<AgentRef>(a.current->target);
    const AgentState& t = w.agent(tid);
    if (!t.alive || hex_distance(a.pos, t.pos) > cfg.view_range) {
        finalize_plan(w, a, true, std::nullopt);  // got away
        return;
    }
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, std::nullopt);
        return;
    }
    if (ex.phase == ExecPhase::Init || (ex.dest && a.pos == *ex.dest)) {
        if (!pick_flee_dest(w, a, t.pos)) {
            finalize_plan(w, a, false, std::nullopt);
            return;
        }
        ex.phase = ExecPhase::Travel;
    }
    if (travel_toward(w, a, *ex.dest) == TravelResult::Stuck)
        finalize_plan(w, a, false, std::nullopt);
}

void exec_exchange(World& w, AgentState& a) {
    PlanExec& ex = a.exec;
    const RunConfig& cfg = w.config();
    PlanId p = a.current->plan;
    AgentRef tid = std::get<AgentRef>(a.current->target);
    const AgentState& t = w.agent(tid);
    if (!t.alive) {
        finalize_plan(w, a, false, tid);
        return;
    }
    if (ttl_expired(a)) {
        finalize_plan(w, a, false, tid);
        return;
    }
    if (ex.respond_to) {  // accepted someone's request: walk over and commit
        if (hex_distance(a.pos, t.pos) <= 1) {
            w.queue(ExchangeCommitEffect{a.id, tid, p});
            ex.awaiting_async = true;
            return;
        }
        if (travel_toward(w, a, t.pos) == TravelResult::Stuck)
            finalize_plan(w, a, false, tid);
        return;
    }
    if (ex.phase == ExecPhase::Wait) {
        if (--ex.wait_left <= 0) finalize_plan(w, a, false, tid);
        return;
    }
    if (hex_distance(a.pos, t.pos) <= cfg.view_range) {
        ShoutKind k = p == PlanId::ExchangeLocationInfo
                          ? ShoutKind::LocationInfoExchange
                          : ShoutKind::SocialInfoExchange;
        w.queue(ShoutEffect{ShoutOut{k, a.id, tid, a.pos, w.tick()}});
        start_wait(a, cfg.response_wait);
        return;
    }
    if (travel_toward(w, a, t.pos) == TravelResult::Stuck)
        finalize_plan(w, a, false, tid);
}

void execute_step(World& w, AgentState& a) {
    switch (a.current->plan) {
    case PlanId::Explore: exec_explore(w, a); break;
    case PlanId::Engage: exec_engage(w, a); break;
    case PlanId::Flee: exec_flee(w, a); break;
    case PlanId::SearchFood: exec_search_food(w, a); break;
    case PlanId::CollectFood: exec_collect_food(w, a); break;
    case PlanId::GeneralFood: exec_general_food(w, a); break;
    case PlanId::CallForFood: exec_call_for_food(w, a); break;
    case PlanId::GiveFood: exec_give_food(w, a); break;
    case PlanId::SelfHeal: exec_self_heal(w, a); break;
    case PlanId::RequestHeal: exec_request_heal(w, a); break;
    case PlanId::GoHeal: exec_go_heal(w, a); break;
    case PlanId::ExchangeLocationInfo:
    case PlanId::ExchangeSocialInfo: exec_exchange(w, a); break;
    }
}

}  // namespace

// ---- food cluster map ---------------------------------------------------------

namespace {

void recompute_center(FoodCluster& c) {
    HexCoord best = c.members.front();
    long best_sum = LONG_MAX;
    for (HexCoord m : c.members) {
        long sum = 0;
        for (HexCoord o : c.members) sum += hex_distance(m, o);
        if (sum < best_sum) {  // members sorted, so first minimum is lex-least
            best_sum = sum;
            best = m;
        }
    }
    c.center = best;
}

}  // namespace

void update_food_clusters(AgentState& a, const std::vector<HexCoord>& food_tiles,
                          std::int64_t tick) {
    for (HexCoord t : food_tiles) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < a.clusters.size(); ++i)
            for (HexCoord m : a.clusters[i].members)
                if (hex_distance(m, t) <= 2) {
                    hits.push_back(i);
                    break;
                }
        if (hits.empty()) {
            a.clusters.push_back(FoodCluster{t, {t}, tick});
            continue;
        }
        FoodCluster& dst = a.clusters[hits.front()];
        for (std::size_t k = hits.size(); k > 1; --k) {
            FoodCluster& src = a.clusters[hits[k - 1]];
            dst.members.insert(dst.members.end(), src.members.begin(),
                               src.members.end());
            a.clusters.erase(a.clusters.begin() +
                             static_cast<std::ptrdiff_t>(hits[k - 1]));
        }
        if (!std::count(dst.members.begin(), dst.members.end(), t))
            dst.members.push_back(t);
        std::sort(dst.members.begin(), dst.members.end());
        dst.last_seen = tick;
        recompute_center(dst);
    }
    std::sort(a.clusters.begin(), a.clusters.end(),
              [](const FoodCluster& x, const FoodCluster& y) {
                  return x.center < y.center;
              });
}

// ---- outcome application --------------------------------------------------------

void finalize_plan(World& w, AgentState& a, bool succeeded,
                   std::optional<AgentRef> partner) {
    if (!a.current) return;
    PlanId p = a.current->plan;
    std::optional<double> score;
    if (is_relationship_dependent(p))
        score = partner ? a.soc_mem.score_or_zero(*partner) : 0.0;
    NeedVec sig = effective_signal(w.config().signals, p, succeeded, score);
    for (NeedId n : kAllNeeds) {
        double s = at(sig, n);
        if (s == 0.0) continue;
        apply_signal(a.needs, n, s);
        a.loc_mem.record_signal(a.pos, n, s);
    }
    ActionPlanState& ps = a.plan_state(p);
    ps.pr = update_success_probability(ps.pr, succeeded, a.alpha_pr);
    ps.expected = update_expected_satisfaction(ps.expected, sig, a.alpha_pr);

    Event ev;
    ev.kind = EventKind::End;
    ev.tick = w.tick();
    ev.actor = a.id;
    ev.plan = p;
    ev.target = target_string(a.current->target);
    ev.other = partner;
    ev.ok = succeeded;
    ev.signals = sig;
    ev.value = ps.pr;
    w.log(ev);

    a.current.reset();
    a.exec = PlanExec{};
}

// ---- the per-tick pipeline --------------------------------------------------------

void agent_tick(World& w, AgentState& a) {
    const RunConfig& cfg = w.config();
    apply_leakage(a.needs);
    a.loc_mem.decay(cfg.forgetting);
    a.soc_mem.decay(cfg.forgetting);
    sense(w, a);
    process_boundary_state(w, a);
    if (!a.exec.awaiting_async) select_step(w, a);
    if (a.storage == 0 && at(a.needs.current, NeedId::Energy) <= 0.0) {
        a.health -= 1;
        double pain = -1.0 / cfg.health_max;
        apply_signal(a.needs, NeedId::PainAvoidance, pain);
        a.loc_mem.record_signal(a.pos, NeedId::PainAvoidance, pain);
        Event ev;
        ev.kind = EventKind::Starve;
        ev.tick = w.tick();
        ev.actor = a.id;
        ev.value2 = a.health;
        w.log(ev);
        if (a.health <= 0) return;  // world processes the death at the boundary
    }
    if (a.exec.awaiting_async) return;  // an effect from last tick is still pending
    if (!a.current) return;
    execute_step(w, a);
}

}  // namespace psi
