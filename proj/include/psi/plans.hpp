#pragma once

#include <optional>
#include <string>

#include "psi/needs.hpp"

namespace psi {

// The full plan repertoire. Enum order is the deterministic preference
// order used to break exact strength ties during motive selection.
enum class PlanId {
    Explore = 0,
    Engage,
    Flee,
    SearchFood,
    CollectFood,
    GeneralFood,
    CallForFood,
    GiveFood,
    SelfHeal,
    RequestHeal,
    GoHeal,
    ExchangeLocationInfo,
    ExchangeSocialInfo,
};

inline constexpr int kPlanCount = 13;
inline constexpr std::array<PlanId, kPlanCount> kAllPlans{
    PlanId::Explore,      PlanId::Engage,       PlanId::Flee,
    PlanId::SearchFood,   PlanId::CollectFood,  PlanId::GeneralFood,
    PlanId::CallForFood,  PlanId::GiveFood,     PlanId::SelfHeal,
    PlanId::RequestHeal,  PlanId::GoHeal,       PlanId::ExchangeLocationInfo,
    PlanId::ExchangeSocialInfo,
};

const char* to_string(PlanId p);
PlanId plan_from_string(const std::string& s);

// Plans whose execution is a social interaction with another agent.
bool is_social_plan(PlanId p);
// Plans whose signals are scaled by the relationship to the other agent
// (the social plans plus Engage).
bool is_relationship_dependent(PlanId p);

// Success/failure need-satisfaction signal vectors per plan. The two
// exchange plans share one row; cluster eating and storage eating share
// the general-food row.
struct SignalTable {
    NeedVec success[kPlanCount];
    NeedVec failure[kPlanCount];

    static SignalTable defaults();

    const NeedVec& row(PlanId p, bool succeeded) const {
        return succeeded ? success[static_cast<int>(p)] : failure[static_cast<int>(p)];
    }
};

// λ_a = s + 1 in [0, 2]: relationship scaling of affiliation signals.
double affiliation_modifier(double score);
// λ_ce = -s³ in [-1, 1]: Engage-only scaling of certainty signals; attacks
// on enemies confirm beliefs (positive), attacks on friends destroy them.
double certainty_modifier(double score);

// Applies the relationship modifiers to a base signal vector. No-op for
// plans that are not relationship-dependent. `score` is required for
// relationship-dependent plans.
NeedVec adjust_for_relationship(const NeedVec& base, PlanId plan,
                                std::optional<double> score);

// Final signal vector for an outcome: table row with relationship scaling.
NeedVec effective_signal(const SignalTable& table, PlanId plan, bool succeeded,
                         std::optional<double> score);

// Per-plan learned state. Pr starts optimistic at 1; E starts at the plan's
// success vector so first-tick motive strengths are meaningful.
struct ActionPlanState {
    double pr = 1.0;
    NeedVec expected{};
};

// EMA toward 1 (success) or 0 (failure).
double update_success_probability(double pr, bool succeeded, double alpha_pr);
// Componentwise EMA toward the observed signal vector; clipped to [-1, 1].
NeedVec update_expected_satisfaction(const NeedVec& e, const NeedVec& observed,
                                     double alpha_pr);

}  // namespace psi
