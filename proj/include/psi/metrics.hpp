#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psi/plans.hpp"
#include "psi/telemetry.hpp"

namespace psi {

// Executed Engage actions (completions, success or failure) per time bin,
// split by attacker/target group equality.
struct EngageBinRow {
    std::int64_t bin_start = 0;
    long intra = 0;
    long inter = 0;
};
std::vector<EngageBinRow> bin_engage_counts(const std::vector<Event>& events,
                                            int bin = 500);

enum class PlanFamily { All, Social, InformationExchange };
PlanFamily family_from_string(const std::string& s);

// How often each plan was chosen (Adopt events), with an intra/inter split
// for plans aimed at another agent.
struct ActionCountRow {
    PlanId plan = PlanId::Explore;
    long total = 0;
    long intra = 0;
    long inter = 0;
};
std::vector<ActionCountRow> count_actions(const std::vector<Event>& events,
                                          PlanFamily family = PlanFamily::All);

// Committed information exchanges, split intra/inter.
struct ExchangeCounts {
    long intra = 0;
    long inter = 0;
};
ExchangeCounts count_exchanges(const std::vector<Event>& events);

// Engage completions before/after a reference tick, intra/inter.
struct EngageSplit {
    long intra = 0;
    long inter = 0;
};
EngageSplit count_engages(const std::vector<Event>& events, std::int64_t from_tick = 0,
                          std::int64_t to_tick = INT64_MAX);

// First tick at which two agents of different groups saw each other.
std::optional<std::int64_t> first_intergroup_contact(const std::vector<Event>& events);

// Mean directed score over all ordered same-group pairs; pairs without an
// edge count as 0.
double mean_intra_score(const SocialNetworkSnapshot& s);

// Directed inter-group edges with score strictly above `min_score`.
long count_positive_inter_edges(const SocialNetworkSnapshot& s, double min_score = 0.0);

std::string engage_bins_to_csv(const std::vector<EngageBinRow>& rows);
std::string action_counts_to_csv(const std::vector<ActionCountRow>& rows);

}  // namespace psi
