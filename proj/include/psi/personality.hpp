#pragma once

#include <string>
#include <vector>

#include "psi/config.hpp"
#include "psi/needs.hpp"
#include "psi/rng.hpp"

namespace psi {

// Trait bundle sampled once per agent. Competence set value is always 1 and
// pain-avoidance never leaks.
struct Personality {
    std::string name;
    NeedVec set_values{};
    NeedVec leakages{};
    double alpha_pr = 0.3;
};

// Samples one personality from the configured distributions. Draw order is
// fixed: 4 set values, 4 leakage values, alpha_pr.
Personality generate_personality(Rng& rng, const PersonalityDists& dists,
                                 const std::string& name);

// Loads a team roster file: {"agents":[{"name":..., "set":{...4 needs...},
// "leakage":{...4 needs...}}, ...]}. alpha_pr is not part of the files and
// is sampled by make_team.
std::vector<Personality> load_team_fixture(const std::string& path);

// Builds one team of `count` personalities. In fixture mode, reads
// <dir>/seed<group_seed>_team<team>.json and samples only alpha_pr; in
// generate mode, samples everything. Either way the team's rng stream is
// derived from (group_seed, team).
std::vector<Personality> make_team(const RunConfig& cfg, int group_seed, int team,
                                   int count);

}  // namespace psi
