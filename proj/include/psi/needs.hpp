#pragma once

#include <array>
#include <string>

namespace psi {

// The five needs, in canonical order. This order is used for every
// 5-vector in the simulation (signals, weights, indicators).
enum class NeedId { PainAvoidance = 0, Energy, Affiliation, Certainty, Competence };

inline constexpr int kNeedCount = 5;
inline constexpr std::array<NeedId, kNeedCount> kAllNeeds{
    NeedId::PainAvoidance, NeedId::Energy, NeedId::Affiliation,
    NeedId::Certainty, NeedId::Competence,
};

const char* to_string(NeedId n);
NeedId need_from_string(const std::string& s);

using NeedVec = std::array<double, kNeedCount>;

inline double& at(NeedVec& v, NeedId n) { return v[static_cast<int>(n)]; }
inline double at(const NeedVec& v, NeedId n) { return v[static_cast<int>(n)]; }

// Relative importance of the needs when computing indicators.
struct NeedWeights {
    NeedVec w{3.0, 2.0, 1.0, 1.0, 1.0};
};

// Tank model: each need has a current fill, a target fill (set value) and a
// per-tick leakage. All fills live in [0, 1].
struct NeedState {
    NeedVec current{};
    NeedVec set_value{};
    NeedVec leakage{};
};

// current -= leakage, floored at 0.
void apply_leakage(NeedState& s);

// Pleasure (+) / displeasure (-) signal moves the tank fill; result clamped
// to [0, 1].
void apply_signal(NeedState& s, NeedId n, double signal);

// Weighted deviation below the set value; satisfied or overfull needs
// indicate 0.
double need_indicator(const NeedState& s, const NeedWeights& w, NeedId n);
NeedVec need_indicators(const NeedState& s, const NeedWeights& w);

}  // namespace psi
