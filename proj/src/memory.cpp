#include "psi/memory.hpp"

#include <stdexcept>

#include "psi/util.hpp"

namespace psi {

void LocationMemory::discover(HexCoord c, std::int64_t tick) {
    cells_.try_emplace(c, MemoryWorldCell{{}, tick});
}

const MemoryWorldCell* LocationMemory::cell(HexCoord c) const {
    auto it = cells_.find(c);
    return it == cells_.end() ? nullptr : &it->second;
}

void LocationMemory::record_signal(HexCoord origin, NeedId need, double signal) {
    if (!knows(origin)) throw std::logic_error("record_signal: unknown origin");
    // Weight max(0,(4-d)/4) vanishes at d = 4, so only the disc of radius 3
    // can change.
    for (HexCoord c : hex_disc(origin, 3)) {
        auto it = cells_.find(c);
        if (it == cells_.end()) continue;
        int d = hex_distance(origin, c);
        double w = (4.0 - d) / 4.0;
        double& nu = at(it->second.assoc, need);
        nu = clamp_signed(nu + signal * w);
    }
}

void LocationMemory::decay(const ForgettingRates& rates) {
    for (auto& [c, cell] : cells_)
        for (double& nu : cell.assoc)
            nu *= nu >= 0.0 ? rates.location_positive : rates.location_negative;
}

void LocationMemory::merge_remote(HexCoord c, const NeedVec& remote, double alpha_l,
                                  std::int64_t tick) {
    auto [it, inserted] = cells_.try_emplace(c, MemoryWorldCell{{}, tick});
    for (int i = 0; i < kNeedCount; ++i)
        it->second.assoc[i] = merge_location_info(it->second.assoc[i], remote[i], alpha_l);
}

const SocialRecord* SocialMemory::record(AgentRef a) const {
    auto it = records_.find(a);
    return it == records_.end() ? nullptr : &it->second;
}

double SocialMemory::score_or_zero(AgentRef a) const {
    const SocialRecord* r = record(a);
    return r ? r->score : 0.0;
}

void SocialMemory::insert(AgentRef a, double score, std::int64_t tick) {
    records_[a] = SocialRecord{clamp_signed(score), tick};
}

void SocialMemory::apply_feedback(AgentRef a, double delta, std::int64_t tick) {
    SocialRecord& r = records_[a];
    r.score = clamp_signed(r.score + delta);
    r.last_interaction = tick;
}

void SocialMemory::merge_remote(AgentRef a, double remote_score, const ExchangeDiscounts& d,
                                std::int64_t tick) {
    auto it = records_.find(a);
    if (it == records_.end()) {
        double merged = merge_social_info(std::nullopt, remote_score, d.social_unknown,
                                          d.social_known);
        records_[a] = SocialRecord{merged, tick};
    } else {
        it->second.score = merge_social_info(it->second.score, remote_score,
                                             d.social_unknown, d.social_known);
        it->second.last_interaction = tick;
    }
}

void SocialMemory::decay(const ForgettingRates& rates) {
    for (auto& [a, r] : records_)
        r.score *= r.score >= 0.0 ? rates.social_positive : rates.social_negative;
}

double init_social_score(Rng& rng, bool same_group, Scenario scenario,
                         const SocialInitParams& p) {
    double mu, sigma;
    if (same_group) {
        mu = p.same_mu;
        sigma = p.same_sigma;
    } else {
        switch (scenario) {
        case Scenario::S2:
            mu = p.s2_opp_mu;
            sigma = p.s2_opp_sigma;
            break;
        case Scenario::S3:
            mu = p.s3_opp_mu;
            sigma = p.s3_opp_sigma;
            break;
        default:
            throw std::logic_error("init_social_score: no opposing group in this scenario");
        }
    }
    return clamp_signed(rng.normal(mu, sigma));
}

double merge_social_info(std::optional<double> s, double s_prime, double alpha_unknown,
                         double alpha_known) {
    if (!s.has_value()) return clamp_signed(alpha_unknown * s_prime);
    return clamp_signed((1.0 - alpha_known) * *s + alpha_known * s_prime);
}

double merge_location_info(double nu, double nu_prime, double alpha_l) {
    return clamp_signed((1.0 - alpha_l) * nu + alpha_l * nu_prime);
}

}  // namespace psi
