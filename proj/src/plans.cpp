#include "psi/plans.hpp"

#include <stdexcept>

#include "psi/util.hpp"

namespace psi {

const char* to_string(PlanId p) {
    switch (p) {
    case PlanId::Explore: return "explore";
    case PlanId::Engage: return "engage";
    case PlanId::Flee: return "flee";
    case PlanId::SearchFood: return "search_food";
    case PlanId::CollectFood: return "collect_food";
    case PlanId::GeneralFood: return "general_food";
    case PlanId::CallForFood: return "call_for_food";
    case PlanId::GiveFood: return "give_food";
    case PlanId::SelfHeal: return "self_heal";
    case PlanId::RequestHeal: return "request_heal";
    case PlanId::GoHeal: return "go_heal";
    case PlanId::ExchangeLocationInfo: return "exchange_location_info";
    case PlanId::ExchangeSocialInfo: return "exchange_social_info";
    }
    return "?";
}

PlanId plan_from_string(const std::string& s) {
    for (PlanId p : kAllPlans)
        if (s == to_string(p)) return p;
    throw ConfigError("unknown plan: " + s);
}

bool is_social_plan(PlanId p) {
    switch (p) {
    case PlanId::CallForFood:
    case PlanId::GiveFood:
    case PlanId::RequestHeal:
    case PlanId::GoHeal:
    case PlanId::ExchangeLocationInfo:
    case PlanId::ExchangeSocialInfo: return true;
    default: return false;
    }
}

bool is_relationship_dependent(PlanId p) {
    return is_social_plan(p) || p == PlanId::Engage;
}

SignalTable SignalTable::defaults() {
    SignalTable t{};
    auto set = [&t](PlanId p, NeedVec s, NeedVec f) {
        t.success[static_cast<int>(p)] = s;
        t.failure[static_cast<int>(p)] = f;
    };
    // Order: pain avoidance, energy, affiliation, certainty, competence.
    set(PlanId::Explore, {0, 0, 0, 0.3, 0.25}, {0, 0, 0, 0, 0});
    set(PlanId::Engage, {0, 0, -0.25, 0.35, 0.35}, {0, 0, -0.25, -0.3, -0.4});
    set(PlanId::Flee, {0.1, 0, 0, 0.1, 0.05}, {-0.15, 0, 0, -0.2, -0.2});
    set(PlanId::SearchFood, {0, 0.2, 0, 0.2, 0.2}, {0, 0, 0, -0.2, -0.3});
    set(PlanId::CallForFood, {0, 0.2, 0.1, 0, 0.05}, {0, 0, -0.2, -0.2, -0.2});
    set(PlanId::GiveFood, {0, 0, 0.2, 0.05, 0.1}, {0, 0, -0.22, -0.1, -0.2});
    set(PlanId::CollectFood, {0, 0, 0, 0.1, 0.1}, {0, 0, 0, -0.2, -0.2});
    set(PlanId::GeneralFood, {0, 0.2, 0, 0, 0.25}, {0, 0, 0, -0.25, -0.3});
    set(PlanId::SelfHeal, {0.1, 0, 0, 0, 0.2}, {0, 0, 0, -0.05, -0.2});
    set(PlanId::RequestHeal, {0.1, 0, 0.2, 0, 0.05}, {0, 0, -0.2, -0.05, -0.2});
    set(PlanId::GoHeal, {0, 0, 0.2, 0.05, 0.1}, {0, 0, -0.2, -0.1, -0.2});
    // Shared exchange-info row.
    set(PlanId::ExchangeLocationInfo, {0, 0, 0.2, 0.05, 0.05}, {0, 0, -0.2, -0.15, -0.2});
    set(PlanId::ExchangeSocialInfo, {0, 0, 0.2, 0.05, 0.05}, {0, 0, -0.2, -0.15, -0.2});
    return t;
}

double affiliation_modifier(double score) { return score + 1.0; }

double certainty_modifier(double score) { return -(score * score * score); }

NeedVec adjust_for_relationship(const NeedVec& base, PlanId plan,
                                std::optional<double> score) {
    if (!is_relationship_dependent(plan)) return base;
    if (!score.has_value())
        throw std::logic_error("relationship-dependent plan needs a social score");
    NeedVec out = base;
    at(out, NeedId::Affiliation) *= affiliation_modifier(*score);
    if (plan == PlanId::Engage) at(out, NeedId::Certainty) *= certainty_modifier(*score);
    return out;
}

NeedVec effective_signal(const SignalTable& table, PlanId plan, bool succeeded,
                         std::optional<double> score) {
    return adjust_for_relationship(table.row(plan, succeeded), plan, score);
}

double update_success_probability(double pr, bool succeeded, double alpha_pr) {
    return (1.0 - alpha_pr) * pr + alpha_pr * (succeeded ? 1.0 : 0.0);
}

NeedVec update_expected_satisfaction(const NeedVec& e, const NeedVec& observed,
                                     double alpha_pr) {
    NeedVec out{};
    for (int i = 0; i < kNeedCount; ++i)
        out[i] = clamp_signed((1.0 - alpha_pr) * e[i] + alpha_pr * observed[i]);
    return out;
}

}  // namespace psi
