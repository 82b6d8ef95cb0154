#pragma once

#include <string>

#include "psi/ids.hpp"
#include "psi/memory.hpp"
#include "psi/needs.hpp"
#include "psi/plans.hpp"

namespace psi {

// Gaussian personality parameters; (mu, sigma) pairs.
struct PersonalityDists {
    double set_pain_mu = 0.85, set_pain_sigma = 0.03;
    double set_other_mu = 0.8, set_other_sigma = 0.005;
    // The printed table swaps these two columns; the published per-agent
    // values cluster near 0.005 with spread ~0.0003, which settles it.
    double leakage_mu = 0.005, leakage_sigma = 0.00033;
    double alpha_pr_mu = 0.3, alpha_pr_sigma = 0.05;
};

// Everything a run depends on besides scenario and seeds. Defaults encode
// the published settings; all of it can be overridden by config file or
// CLI flags.
struct RunConfig {
    // world
    int ticks = 5000;
    int agents_per_group = 10;
    int view_range = 4;
    double food_spawn_prob = 0.02;
    int storage_capacity = 5;
    int health_max = 100;
    std::string map_path;           // empty → <data>/maps/crossroads.json
    std::string personalities_dir;  // empty → <data>/personalities
    std::string personalities_mode = "fixtures";  // fixtures | generate

    // needs
    NeedWeights weights;
    // Fraction of the set value the tank starts at. Certainty and
    // competence start half-full so early behavior is exploration-driven.
    NeedVec initial_fill_fraction{1.0, 1.0, 1.0, 0.5, 0.5};

    // memory
    ForgettingRates forgetting;
    ExchangeDiscounts discounts;
    SocialInitParams social_init;

    PersonalityDists personality;

    // plans
    SignalTable signals = SignalTable::defaults();
    std::string signal_table_path;  // optional override file
    double social_reward = 0.1;
    double attack_feedback = -0.1;
    double urgency_food = 0.2;
    double urgency_flee = 0.6;
    double urgency_help = 0.15;
    int response_wait = 5;    // ticks a request waits for a pledge
    int delivery_wait = 16;   // ticks granted once a helper pledged
    int inbox_ttl = 5;        // ticks before an unanswered shout expires
    int under_attack_ticks = 5;
    int search_food_retries = 3;
    int flee_timeout = 30;
    int engage_timeout = 20;
    int cluster_timeout = 40;
    int exchange_tiles = 10;  // tiles sent per side in a location exchange
    int max_cluster_candidates = 5;

    // combat
    double damage_mu = 11.0 / 6.0;
    double damage_sigma = 6.5;
    double heal_mu = 5.0 / 3.0;
    double heal_sigma = 10.0;
    double flee_health_fraction = 0.5;

    // motive arbitration
    double tau = 0.02;
    double alpha_c = 0.5;

    static RunConfig defaults() { return RunConfig{}; }
    static RunConfig from_file(const std::string& path);
    // Overlays `json_text` onto this config (partial documents allowed).
    void apply_json_text(const std::string& text, const std::string& origin);
    // Applies one dotted-path override, e.g. "plans.urgency.food=0.3".
    void apply_override(const std::string& key_eq_value);
    std::string to_json_text(int indent = 2) const;

    // Paths with defaults resolved against the data directory.
    std::string resolved_map_path() const;
    std::string resolved_personalities_dir() const;
};

// PSISIM_DATA_DIR env var, falling back to the source-tree data directory.
std::string default_data_dir();

// One cell of the experiment grid.
struct ScenarioSpec {
    Scenario scenario = Scenario::S1;
    int group_seed = 1;
    int sim_seed = 1;
};

Scenario scenario_from_string(const std::string& s);

}  // namespace psi
