#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "psi/config.hpp"
#include "psi/util.hpp"

using namespace psi;

TEST_CASE("defaults survive a serialization round trip") {
    RunConfig a = RunConfig::defaults();
    RunConfig b;
    b.apply_json_text(a.to_json_text(), "round-trip");
    CHECK(a.to_json_text() == b.to_json_text());
    CHECK(b.ticks == 5000);
    CHECK(b.agents_per_group == 10);
    CHECK(b.view_range == 4);
    CHECK(b.food_spawn_prob == 0.02);
    CHECK(b.storage_capacity == 5);
    CHECK(b.health_max == 100);
    CHECK(at(b.weights.w, NeedId::PainAvoidance) == 3.0);
    CHECK(at(b.initial_fill_fraction, NeedId::Certainty) == 0.5);
    CHECK(at(b.initial_fill_fraction, NeedId::Energy) == 1.0);
    CHECK(b.tau == 0.02);
    CHECK(b.alpha_c == 0.5);
}

TEST_CASE("the shipped default config file matches built-in defaults") {
    RunConfig file = RunConfig::from_file(default_data_dir() + "/config/default.json");
    CHECK(file.to_json_text() == RunConfig::defaults().to_json_text());
}

TEST_CASE("overrides: later sources win") {
    RunConfig c = RunConfig::defaults();
    c.apply_json_text(R"({"world": {"ticks": 100, "view_range": 6}})", "file");
    CHECK(c.ticks == 100);
    CHECK(c.view_range == 6);
    c.apply_override("world.ticks=250");
    CHECK(c.ticks == 250);
    CHECK(c.view_range == 6);  // untouched by the flag

    c.apply_override("plans.urgency.flee=0.9");
    CHECK(c.urgency_flee == 0.9);
    c.apply_override("needs.weights.energy=4");
    CHECK(at(c.weights.w, NeedId::Energy) == 4.0);
    c.apply_override("world.map=/tmp/some_map.json");
    CHECK(c.map_path == "/tmp/some_map.json");
}

TEST_CASE("unknown keys and malformed values are rejected") {
    RunConfig c = RunConfig::defaults();
    CHECK_THROWS_AS(c.apply_override("simulation.ticks=300"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("world.tick=300"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("plans.urgency.panic=1"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("noequals"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("=5"), ConfigError);
    CHECK_THROWS_AS(c.apply_json_text("{nope", "bad"), ConfigError);
    CHECK_THROWS_AS(c.apply_json_text(R"({"world": {"ticks": "soon"}})", "bad"),
                    ConfigError);
    // state unchanged after failed overrides
    CHECK(c.ticks == 5000);
}

TEST_CASE("out-of-range values are rejected") {
    RunConfig c = RunConfig::defaults();
    CHECK_THROWS_AS(c.apply_override("world.food_spawn_prob=1.5"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("world.ticks=-1"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("world.agents_per_group=0"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("world.personalities_mode=psychic"), ConfigError);
    CHECK_THROWS_AS(c.apply_override("motive.alpha_c=2"), ConfigError);
}

TEST_CASE("missing config file") {
    CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/cfg.json"), ConfigError);
}

TEST_CASE("signal table can be replaced from a file") {
    RunConfig c = RunConfig::defaults();
    c.apply_override("plans.signal_table_file=" + default_data_dir() +
                     "/signal_table.json");
    CHECK(at(c.signals.row(PlanId::Explore, true), NeedId::Certainty) == 0.3);

    std::string path = "/tmp/psisim_test_table.json";
    {
        std::ofstream out(path);
        out << R"({"explore": {"success": {"certainty": 0.7}}})";
    }
    RunConfig d = RunConfig::defaults();
    d.apply_override("plans.signal_table_file=" + path);
    CHECK(at(d.signals.row(PlanId::Explore, true), NeedId::Certainty) == 0.7);
    // untouched entries keep their defaults
    CHECK(at(d.signals.row(PlanId::Explore, true), NeedId::Competence) == 0.25);
    std::remove(path.c_str());

    RunConfig e = RunConfig::defaults();
    CHECK_THROWS_AS(e.apply_override("plans.signal_table_file=/nonexistent.json"),
                    ConfigError);
}

TEST_CASE("inline signal table override") {
    RunConfig c = RunConfig::defaults();
    c.apply_json_text(
        R"({"plans": {"signal_table": {"flee": {"failure": {"pain_avoidance": -0.5}}}}})",
        "inline");
    CHECK(at(c.signals.row(PlanId::Flee, false), NeedId::PainAvoidance) == -0.5);
    CHECK(at(c.signals.row(PlanId::Flee, true), NeedId::PainAvoidance) == 0.1);
}

TEST_CASE("scenario parsing") {
    CHECK(scenario_from_string("s1") == Scenario::S1);
    CHECK(scenario_from_string("s2") == Scenario::S2);
    CHECK(scenario_from_string("s3") == Scenario::S3);
    CHECK_THROWS_AS(scenario_from_string("s4"), ConfigError);
    CHECK_THROWS_AS(scenario_from_string(""), ConfigError);
}
