#include "psi/needs.hpp"

#include <algorithm>

#include "psi/util.hpp"

namespace psi {

const char* to_string(NeedId n) {
    switch (n) {
    case NeedId::PainAvoidance: return "pain_avoidance";
    case NeedId::Energy: return "energy";
    case NeedId::Affiliation: return "affiliation";
    case NeedId::Certainty: return "certainty";
    case NeedId::Competence: return "competence";
    }
    return "?";
}

NeedId need_from_string(const std::string& s) {
    for (NeedId n : kAllNeeds)
        if (s == to_string(n)) return n;
    throw ConfigError("unknown need: " + s);
}

void apply_leakage(NeedState& s) {
    for (int i = 0; i < kNeedCount; ++i)
        s.current[i] = std::max(0.0, s.current[i] - s.leakage[i]);
}

void apply_signal(NeedState& s, NeedId n, double signal) {
    at(s.current, n) = clamp01(at(s.current, n) + signal);
}

double need_indicator(const NeedState& s, const NeedWeights& w, NeedId n) {
    double deficit = at(s.set_value, n) - at(s.current, n);
    return std::max(0.0, deficit) * at(w.w, n);
}

NeedVec need_indicators(const NeedState& s, const NeedWeights& w) {
    NeedVec out{};
    for (NeedId n : kAllNeeds) at(out, n) = need_indicator(s, w, n);
    return out;
}

}  // namespace psi
