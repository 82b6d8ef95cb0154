#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "psi/hex.hpp"
#include "psi/ids.hpp"
#include "psi/needs.hpp"
#include "psi/plans.hpp"

namespace psi {

// What a plan acts on: nothing, another agent, or a tile. Variant order
// gives the deterministic tie-break order across target kinds.
using MotiveTarget = std::variant<std::monostate, AgentRef, HexCoord>;

bool target_less(const MotiveTarget& a, const MotiveTarget& b);
std::string target_string(const MotiveTarget& t);

struct Motive {
    PlanId plan = PlanId::Explore;
    MotiveTarget target{};
    double strength = 0.0;
};

// m' = Σ_i n_i · E_i over the five needs.
double preliminary_strength(const NeedVec& indicators, const NeedVec& expected);

// c = (1 - α_c) · competence fill + α_c · Pr.
double competence_indicator(double is_competence, double pr, double alpha_c = 0.5);

// m = (m' + urgency) · c.
double motive_strength(double m_prime, double urgency, double c);

// Picks the strongest candidate, but the incumbent survives unless a rival
// exceeds its (freshly recomputed) strength by more than τ. Ties break by
// strength, then plan order, then target order. Candidates must be
// non-empty.
Motive select_motive(const std::optional<Motive>& current,
                     const std::vector<Motive>& candidates, double tau = 0.02);

}  // namespace psi
