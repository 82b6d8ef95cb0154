#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "psi/hex.hpp"
#include "psi/ids.hpp"
#include "psi/needs.hpp"
#include "psi/rng.hpp"

namespace psi {

// Per-tick multiplicative forgetting. Negative entries are forgotten faster
// than positive ones (rate further from 1).
struct ForgettingRates {
    double location_positive = 0.9995;
    double location_negative = 0.9985;
    double social_positive = 0.9995;
    double social_negative = 0.9992;
};

// Discount factors applied when merging information received from others.
struct ExchangeDiscounts {
    double location = 0.1;        // α_l
    double social_unknown = 0.4;  // α_s1, opinion about an agent never met
    double social_known = 0.8;    // α_s2, opinion about an agent already known
};

// What an agent remembers about one tile: per-need satisfaction association
// built up from the signals it experienced there.
struct MemoryWorldCell {
    NeedVec assoc{};  // each entry in [-1, 1]
    std::int64_t discovered_at = 0;
};

class LocationMemory {
public:
    bool knows(HexCoord c) const { return cells_.count(c) != 0; }
    // Creates the cell with a zero association if it is new.
    void discover(HexCoord c, std::int64_t tick);
    const MemoryWorldCell* cell(HexCoord c) const;

    // Spreads a signal from `origin` over discovered cells with a weight of
    // max(0, (4 - d) / 4); results clipped to [-1, 1]. Origin must be known.
    void record_signal(HexCoord origin, NeedId need, double signal);

    void decay(const ForgettingRates& rates);

    // Merge a received association for one tile; unknown tiles enter memory
    // with a zero prior.
    void merge_remote(HexCoord c, const NeedVec& remote, double alpha_l, std::int64_t tick);

    std::size_t size() const { return cells_.size(); }
    const std::map<HexCoord, MemoryWorldCell>& cells() const { return cells_; }

private:
    std::map<HexCoord, MemoryWorldCell> cells_;
};

struct SocialRecord {
    double score = 0.0;  // in [-1, 1]; > 0 friendly, < 0 hostile
    std::int64_t last_interaction = 0;
};

class SocialMemory {
public:
    bool knows(AgentRef a) const { return records_.count(a) != 0; }
    const SocialRecord* record(AgentRef a) const;
    double score_or_zero(AgentRef a) const;

    void insert(AgentRef a, double score, std::int64_t tick);
    // score += delta, clipped; creates the record at zero if absent.
    void apply_feedback(AgentRef a, double delta, std::int64_t tick);
    // Merge a second-hand opinion about `a` using the unknown/known discount.
    void merge_remote(AgentRef a, double remote_score, const ExchangeDiscounts& d,
                      std::int64_t tick);
    void decay(const ForgettingRates& rates);

    std::size_t size() const { return records_.size(); }
    const std::map<AgentRef, SocialRecord>& records() const { return records_; }

private:
    std::map<AgentRef, SocialRecord> records_;
};

// First-impression distribution parameters per scenario.
struct SocialInitParams {
    double same_mu = 0.75, same_sigma = 0.05;
    double s2_opp_mu = -0.9, s2_opp_sigma = 0.05;
    double s3_opp_mu = -0.5, s3_opp_sigma = 0.05;
};

// Gaussian initial opinion of a newly met agent; parameters depend on the
// scenario and on whether the two share a group. Clipped to [-1, 1].
// Opposing-group draws are invalid in S1 (there is only one group).
double init_social_score(Rng& rng, bool same_group, Scenario scenario,
                         const SocialInitParams& params = {});

// Pure merge rules, exposed for direct verification.
double merge_social_info(std::optional<double> s, double s_prime, double alpha_unknown,
                         double alpha_known);
double merge_location_info(double nu, double nu_prime, double alpha_l);

}  // namespace psi
