#include "doctest.h"

#include "psi/personality.hpp"
#include "psi/util.hpp"

using namespace psi;

TEST_CASE("fixture roster loads verbatim") {
    auto roster =
        load_team_fixture(default_data_dir() + "/personalities/seed1_team1.json");
    REQUIRE(roster.size() == 10);
    CHECK(roster[0].name == "Brandom");
    CHECK(at(roster[0].set_values, NeedId::PainAvoidance) == 0.832322710251051);
    CHECK(at(roster[0].set_values, NeedId::Energy) == 0.792954903009047);
    CHECK(at(roster[0].set_values, NeedId::Affiliation) == 0.800698923499392);
    CHECK(at(roster[0].set_values, NeedId::Certainty) == 0.79635015154248);
    CHECK(at(roster[0].set_values, NeedId::Competence) == 1.0);
    CHECK(at(roster[0].leakages, NeedId::PainAvoidance) == 0.0);
    CHECK(at(roster[0].leakages, NeedId::Energy) == 0.00513131392255188);
    CHECK(at(roster[0].leakages, NeedId::Affiliation) == 0.00459934507003216);
    CHECK(at(roster[0].leakages, NeedId::Certainty) == 0.00494593232012495);
    CHECK(at(roster[0].leakages, NeedId::Competence) == 0.00449886894180903);
    CHECK(roster[9].name == "Tehran");

    CHECK_THROWS_AS(load_team_fixture("/nonexistent/team.json"), ConfigError);
}

TEST_CASE("all six shipped fixtures are complete") {
    for (int seed = 1; seed <= 3; ++seed)
        for (int team = 1; team <= 2; ++team) {
            auto roster = load_team_fixture(default_data_dir() + "/personalities/seed" +
                                            std::to_string(seed) + "_team" +
                                            std::to_string(team) + ".json");
            REQUIRE(roster.size() == 10);
            for (const auto& p : roster) {
                CHECK(!p.name.empty());
                CHECK(at(p.set_values, NeedId::Competence) == 1.0);
                CHECK(at(p.leakages, NeedId::PainAvoidance) == 0.0);
                for (NeedId n : kAllNeeds) {
                    CHECK(at(p.set_values, n) > 0.0);
                    CHECK(at(p.set_values, n) <= 1.0);
                    CHECK(at(p.leakages, n) >= 0.0);
                    CHECK(at(p.leakages, n) < 0.05);
                }
            }
        }
}

TEST_CASE("generated personalities are deterministic per stream") {
    PersonalityDists d;
    Rng a(Rng::stream(11, {'P', 1}));
    Rng b(Rng::stream(11, {'P', 1}));
    Personality pa = generate_personality(a, d, "x");
    Personality pb = generate_personality(b, d, "x");
    CHECK(pa.set_values == pb.set_values);
    CHECK(pa.leakages == pb.leakages);
    CHECK(pa.alpha_pr == pb.alpha_pr);

    Rng c(Rng::stream(11, {'P', 2}));
    Personality pc = generate_personality(c, d, "y");
    CHECK(pc.set_values != pa.set_values);

    CHECK(at(pa.set_values, NeedId::Competence) == 1.0);
    CHECK(at(pa.leakages, NeedId::PainAvoidance) == 0.0);
    CHECK(pa.alpha_pr > 0.0);
    CHECK(pa.alpha_pr < 1.0);
    // set values land near their means
    CHECK(at(pa.set_values, NeedId::PainAvoidance) > 0.6);
    CHECK(at(pa.set_values, NeedId::PainAvoidance) < 1.0);
    CHECK(at(pa.set_values, NeedId::Energy) > 0.7);
    CHECK(at(pa.set_values, NeedId::Energy) < 0.9);
}

TEST_CASE("make_team: fixtures plus sampled learning rates") {
    RunConfig cfg = RunConfig::defaults();
    auto team = make_team(cfg, 1, 1, 10);
    REQUIRE(team.size() == 10);
    CHECK(team[0].name == "Brandom");
    CHECK(at(team[0].set_values, NeedId::PainAvoidance) == 0.832322710251051);
    for (const auto& p : team) {
        CHECK(p.alpha_pr > 0.0);
        CHECK(p.alpha_pr < 1.0);
    }
    // alpha_pr draws are reproducible and team-dependent
    auto again = make_team(cfg, 1, 1, 10);
    for (int i = 0; i < 10; ++i) CHECK(team[i].alpha_pr == again[i].alpha_pr);
    auto other = make_team(cfg, 1, 2, 10);
    CHECK(other[0].name != team[0].name);
    CHECK(other[0].alpha_pr != team[0].alpha_pr);

    // generate mode needs no fixture files
    cfg.personalities_mode = "generate";
    cfg.personalities_dir = "/nonexistent";
    auto gen = make_team(cfg, 1, 1, 10);
    REQUIRE(gen.size() == 10);
    CHECK(gen[0].name != "Brandom");  // synthesized names
    auto gen2 = make_team(cfg, 1, 1, 10);
    CHECK(gen[3].set_values == gen2[3].set_values);

    // asking for more agents than a fixture provides fails loudly
    cfg.personalities_mode = "fixtures";
    cfg.personalities_dir = "";
    CHECK_THROWS_AS(make_team(cfg, 1, 1, 11), ConfigError);
}
