#include "psi/metrics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "psi/util.hpp"

namespace psi {

namespace {

bool in_family(PlanId p, PlanFamily f) {
    switch (f) {
    case PlanFamily::All: return true;
    case PlanFamily::Social: return is_social_plan(p);
    case PlanFamily::InformationExchange:
        return p == PlanId::ExchangeLocationInfo || p == PlanId::ExchangeSocialInfo;
    }
    return false;
}

}  // namespace

PlanFamily family_from_string(const std::string& s) {
    if (s == "all") return PlanFamily::All;
    if (s == "social") return PlanFamily::Social;
    if (s == "exchange" || s == "information-exchange") return PlanFamily::InformationExchange;
    throw ConfigError("unknown plan family: " + s + " (expected all|social|exchange)");
}

std::vector<EngageBinRow> bin_engage_counts(const std::vector<Event>& events, int bin) {
    if (bin <= 0) throw ConfigError("bin size must be positive");
    std::map<std::int64_t, EngageBinRow> rows;
    std::int64_t max_tick = 0;
    for (const Event& e : events) {
        max_tick = std::max(max_tick, e.tick);
        if (e.kind != EventKind::End || e.plan != PlanId::Engage || !e.other) continue;
        EngageBinRow& row = rows[e.tick / bin];
        if (e.actor.group == e.other->group)
            ++row.intra;
        else
            ++row.inter;
    }
    std::vector<EngageBinRow> out;
    for (std::int64_t b = 0; b * bin <= max_tick; ++b) {
        EngageBinRow row = rows.count(b) ? rows[b] : EngageBinRow{};
        row.bin_start = b * bin;
        out.push_back(row);
    }
    return out;
}

std::vector<ActionCountRow> count_actions(const std::vector<Event>& events,
                                          PlanFamily family) {
    std::array<ActionCountRow, kPlanCount> acc{};
    for (PlanId p : kAllPlans) acc[static_cast<int>(p)].plan = p;
    for (const Event& e : events) {
        if (e.kind != EventKind::Adopt || !e.plan) continue;
        ActionCountRow& row = acc[static_cast<int>(*e.plan)];
        ++row.total;
        if (e.other) {
            if (e.actor.group == e.other->group)
                ++row.intra;
            else
                ++row.inter;
        }
    }
    std::vector<ActionCountRow> out;
    for (PlanId p : kAllPlans)
        if (in_family(p, family)) out.push_back(acc[static_cast<int>(p)]);
    return out;
}

ExchangeCounts count_exchanges(const std::vector<Event>& events) {
    ExchangeCounts out;
    for (const Event& e : events) {
        if (e.kind != EventKind::Exchange || !e.other) continue;
        if (e.actor.group == e.other->group)
            ++out.intra;
        else
            ++out.inter;
    }
    return out;
}

EngageSplit count_engages(const std::vector<Event>& events, std::int64_t from_tick,
                          std::int64_t to_tick) {
    EngageSplit out;
    for (const Event& e : events) {
        if (e.kind != EventKind::End || e.plan != PlanId::Engage || !e.other) continue;
        if (e.tick < from_tick || e.tick >= to_tick) continue;
        if (e.actor.group == e.other->group)
            ++out.intra;
        else
            ++out.inter;
    }
    return out;
}

std::optional<std::int64_t> first_intergroup_contact(const std::vector<Event>& events) {
    for (const Event& e : events)
        if (e.kind == EventKind::Meet && e.other && e.actor.group != e.other->group)
            return e.tick;
    return std::nullopt;
}

double mean_intra_score(const SocialNetworkSnapshot& s) {
    std::map<int, long> group_sizes;
    for (const NetworkNode& n : s.nodes) ++group_sizes[n.id.group];
    long pairs = 0;
    for (const auto& [g, n] : group_sizes) pairs += n * (n - 1);
    if (pairs == 0) return 0.0;
    double sum = 0.0;
    for (const NetworkEdge& e : s.edges)
        if (e.from.group == e.to.group) sum += e.score;
    return sum / static_cast<double>(pairs);
}

long count_positive_inter_edges(const SocialNetworkSnapshot& s, double min_score) {
    long count = 0;
    for (const NetworkEdge& e : s.edges)
        if (e.from.group != e.to.group && e.score > min_score) ++count;
    return count;
}

std::string engage_bins_to_csv(const std::vector<EngageBinRow>& rows) {
    std::ostringstream out;
    out << "bin_start,intra,inter\n";
    for (const EngageBinRow& r : rows)
        out << r.bin_start << ',' << r.intra << ',' << r.inter << '\n';
    return out.str();
}

std::string action_counts_to_csv(const std::vector<ActionCountRow>& rows) {
    std::ostringstream out;
    out << "plan,total,intra,inter\n";
    for (const ActionCountRow& r : rows)
        out << to_string(r.plan) << ',' << r.total << ',' << r.intra << ',' << r.inter
            << '\n';
    return out.str();
}

}  // namespace psi
