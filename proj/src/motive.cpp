#include "psi/motive.hpp"

namespace psi {

bool target_less(const MotiveTarget& a, const MotiveTarget& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    if (std::holds_alternative<AgentRef>(a))
        return std::get<AgentRef>(a) < std::get<AgentRef>(b);
    if (std::holds_alternative<HexCoord>(a))
        return std::get<HexCoord>(a) < std::get<HexCoord>(b);
    return false;  // two monostates
}

std::string target_string(const MotiveTarget& t) {
    if (std::holds_alternative<AgentRef>(t)) return to_string(std::get<AgentRef>(t));
    if (std::holds_alternative<HexCoord>(t)) {
        HexCoord c = std::get<HexCoord>(t);
        return std::to_string(c.q) + "," + std::to_string(c.r);
    }
    return "";
}

double preliminary_strength(const NeedVec& indicators, const NeedVec& expected) {
    double sum = 0.0;
    for (int i = 0; i < kNeedCount; ++i) sum += indicators[i] * expected[i];
    return sum;
}

double competence_indicator(double is_competence, double pr, double alpha_c) {
    return (1.0 - alpha_c) * is_competence + alpha_c * pr;
}

double motive_strength(double m_prime, double urgency, double c) {
    return (m_prime + urgency) * c;
}

namespace {

// Strict "a should be preferred over b" with deterministic tie-breaks.
bool stronger(const Motive& a, const Motive& b) {
    if (a.strength != b.strength) return a.strength > b.strength;
    if (a.plan != b.plan) return a.plan < b.plan;
    return target_less(a.target, b.target);
}

}  // namespace

Motive select_motive(const std::optional<Motive>& current,
                     const std::vector<Motive>& candidates, double tau) {
    const Motive* best = &candidates.front();
    for (const Motive& m : candidates)
        if (stronger(m, *best)) best = &m;
    if (current.has_value() && best->strength <= current->strength + tau) return *current;
    return *best;
}

}  // namespace psi
