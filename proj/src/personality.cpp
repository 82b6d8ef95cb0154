#include "psi/personality.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "psi/util.hpp"

namespace psi {

using nlohmann::json;

namespace {

double clamp_open_unit(double x) {
    return std::clamp(x, 1e-9, 1.0 - 1e-9);
}

double sample_alpha_pr(Rng& rng, const PersonalityDists& d) {
    return clamp_open_unit(rng.normal(d.alpha_pr_mu, d.alpha_pr_sigma));
}

}  // namespace

Personality generate_personality(Rng& rng, const PersonalityDists& d,
                                 const std::string& name) {
    Personality p;
    p.name = name;
    at(p.set_values, NeedId::PainAvoidance) =
        clamp01(rng.normal(d.set_pain_mu, d.set_pain_sigma));
    at(p.set_values, NeedId::Energy) = clamp01(rng.normal(d.set_other_mu, d.set_other_sigma));
    at(p.set_values, NeedId::Affiliation) =
        clamp01(rng.normal(d.set_other_mu, d.set_other_sigma));
    at(p.set_values, NeedId::Certainty) =
        clamp01(rng.normal(d.set_other_mu, d.set_other_sigma));
    at(p.set_values, NeedId::Competence) = 1.0;

    at(p.leakages, NeedId::PainAvoidance) = 0.0;
    for (NeedId n : {NeedId::Energy, NeedId::Affiliation, NeedId::Certainty,
                     NeedId::Competence})
        at(p.leakages, n) = std::max(0.0, rng.normal(d.leakage_mu, d.leakage_sigma));

    p.alpha_pr = sample_alpha_pr(rng, d);
    return p;
}

std::vector<Personality> load_team_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open personality fixture: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }

    std::vector<Personality> out;
    try {
        for (const json& a : j.at("agents")) {
            Personality p;
            p.name = a.at("name").get<std::string>();
            const json& set = a.at("set");
            at(p.set_values, NeedId::PainAvoidance) = set.at("pain_avoidance").get<double>();
            at(p.set_values, NeedId::Energy) = set.at("energy").get<double>();
            at(p.set_values, NeedId::Affiliation) = set.at("affiliation").get<double>();
            at(p.set_values, NeedId::Certainty) = set.at("certainty").get<double>();
            at(p.set_values, NeedId::Competence) = 1.0;
            const json& leak = a.at("leakage");
            at(p.leakages, NeedId::PainAvoidance) = 0.0;
            at(p.leakages, NeedId::Energy) = leak.at("energy").get<double>();
            at(p.leakages, NeedId::Affiliation) = leak.at("affiliation").get<double>();
            at(p.leakages, NeedId::Certainty) = leak.at("certainty").get<double>();
            at(p.leakages, NeedId::Competence) = leak.at("competence").get<double>();
            out.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    if (out.empty()) throw ConfigError(path + ": empty roster");
    return out;
}

std::vector<Personality> make_team(const RunConfig& cfg, int group_seed, int team,
                                   int count) {
    Rng rng = Rng::stream(static_cast<std::uint64_t>(group_seed),
                          {'P', static_cast<std::uint64_t>(team)});
    std::vector<Personality> out;

    if (cfg.personalities_mode == "fixtures") {
        std::string path = cfg.resolved_personalities_dir() + "/seed" +
                           std::to_string(group_seed) + "_team" + std::to_string(team) +
                           ".json";
        out = load_team_fixture(path);
        if (static_cast<int>(out.size()) < count)
            throw ConfigError(path + ": roster smaller than agents_per_group");
        out.resize(count);
        for (Personality& p : out) p.alpha_pr = sample_alpha_pr(rng, cfg.personality);
    } else {
        for (int i = 0; i < count; ++i) {
            std::string name = "g" + std::to_string(team) + "a" + std::to_string(i);
            out.push_back(generate_personality(rng, cfg.personality, name));
        }
    }
    return out;
}

}  // namespace psi
