#include "psi/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "psi/util.hpp"

namespace psi {

using nlohmann::json;

namespace {

json need_vec_to_json(const NeedVec& v) {
    json out = json::object();
    for (NeedId n : kAllNeeds) out[to_string(n)] = at(v, n);
    return out;
}

NeedVec need_vec_from_json(const json& j, const NeedVec& base) {
    NeedVec out = base;
    for (NeedId n : kAllNeeds)
        if (j.contains(to_string(n))) at(out, n) = j.at(to_string(n)).get<double>();
    return out;
}

template <class T>
void ov(const json& j, const char* key, T& field) {
    if (j.contains(key)) field = j.at(key).get<T>();
}

json signal_table_to_json(const SignalTable& t) {
    json out = json::object();
    for (PlanId p : kAllPlans) {
        out[to_string(p)] = {
            {"success", need_vec_to_json(t.row(p, true))},
            {"failure", need_vec_to_json(t.row(p, false))},
        };
    }
    return out;
}

SignalTable signal_table_from_json(const json& j, const SignalTable& base) {
    SignalTable out = base;
    for (PlanId p : kAllPlans) {
        if (!j.contains(to_string(p))) continue;
        const json& row = j.at(to_string(p));
        if (row.contains("success"))
            out.success[static_cast<int>(p)] =
                need_vec_from_json(row.at("success"), out.row(p, true));
        if (row.contains("failure"))
            out.failure[static_cast<int>(p)] =
                need_vec_from_json(row.at("failure"), out.row(p, false));
    }
    return out;
}

// Every settable leaf, as a dotted path. A typo in a config file or a --set
// must fail loudly, not fall back to the default.
const std::set<std::string>& known_config_paths() {
    static const std::set<std::string> paths = [] {
        std::set<std::string> s;
        for (const char* k :
             {"ticks", "agents_per_group", "view_range", "food_spawn_prob",
              "storage_capacity", "health_max", "map", "personalities_dir",
              "personalities_mode"})
            s.insert(std::string("world.") + k);
        for (NeedId n : kAllNeeds) {
            s.insert(std::string("needs.weights.") + to_string(n));
            s.insert(std::string("needs.initial_fill_fraction.") + to_string(n));
        }
        for (const char* k : {"location_positive", "location_negative",
                              "social_positive", "social_negative"})
            s.insert(std::string("memory.forgetting.") + k);
        for (const char* k : {"location", "social_unknown", "social_known"})
            s.insert(std::string("memory.discounts.") + k);
        for (const char* k : {"same_mu", "same_sigma", "s2_opp_mu", "s2_opp_sigma",
                              "s3_opp_mu", "s3_opp_sigma"})
            s.insert(std::string("social_init.") + k);
        for (const char* k :
             {"set_pain_mu", "set_pain_sigma", "set_other_mu", "set_other_sigma",
              "leakage_mu", "leakage_sigma", "alpha_pr_mu", "alpha_pr_sigma"})
            s.insert(std::string("personality.") + k);
        for (const char* k :
             {"signal_table_file", "social_reward", "attack_feedback",
              "response_wait", "delivery_wait", "inbox_ttl", "under_attack_ticks",
              "search_food_retries", "flee_timeout", "engage_timeout",
              "cluster_timeout", "exchange_tiles", "max_cluster_candidates"})
            s.insert(std::string("plans.") + k);
        for (const char* k : {"food", "flee", "help"})
            s.insert(std::string("plans.urgency.") + k);
        for (const char* k : {"damage_mu", "damage_sigma", "heal_mu", "heal_sigma",
                              "flee_health_fraction"})
            s.insert(std::string("combat.") + k);
        for (const char* k : {"tau", "alpha_c"}) s.insert(std::string("motive.") + k);
        return s;
    }();
    return paths;
}

void check_known_keys(const json& j, const std::string& path,
                      const std::string& origin) {
    if (path == "plans.signal_table") return;  // validated by its own parser
    if (!j.is_object()) {
        if (!known_config_paths().count(path))
            throw ConfigError(origin + ": unknown config key: " + path);
        return;
    }
    for (const auto& [k, v] : j.items())
        check_known_keys(v, path.empty() ? k : path + "." + k, origin);
}

}  // namespace

std::string default_data_dir() {
    if (const char* env = std::getenv("PSISIM_DATA_DIR")) return env;
#ifdef PSISIM_SOURCE_DATA_DIR
    return PSISIM_SOURCE_DATA_DIR;
#else
    return "data";
#endif
}

std::string RunConfig::resolved_map_path() const {
    return map_path.empty() ? default_data_dir() + "/maps/crossroads.json" : map_path;
}

std::string RunConfig::resolved_personalities_dir() const {
    return personalities_dir.empty() ? default_data_dir() + "/personalities"
                                     : personalities_dir;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    RunConfig cfg;
    cfg.apply_json_text(buf.str(), path);
    return cfg;
}

void RunConfig::apply_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    check_known_keys(j, "", origin);

    try {
        if (j.contains("world")) {
            const json& w = j.at("world");
            ov(w, "ticks", ticks);
            ov(w, "agents_per_group", agents_per_group);
            ov(w, "view_range", view_range);
            ov(w, "food_spawn_prob", food_spawn_prob);
            ov(w, "storage_capacity", storage_capacity);
            ov(w, "health_max", health_max);
            ov(w, "map", map_path);
            ov(w, "personalities_dir", personalities_dir);
            ov(w, "personalities_mode", personalities_mode);
        }
        if (j.contains("needs")) {
            const json& n = j.at("needs");
            if (n.contains("weights")) weights.w = need_vec_from_json(n.at("weights"), weights.w);
            if (n.contains("initial_fill_fraction"))
                initial_fill_fraction =
                    need_vec_from_json(n.at("initial_fill_fraction"), initial_fill_fraction);
        }
        if (j.contains("memory")) {
            const json& m = j.at("memory");
            if (m.contains("forgetting")) {
                const json& f = m.at("forgetting");
                ov(f, "location_positive", forgetting.location_positive);
                ov(f, "location_negative", forgetting.location_negative);
                ov(f, "social_positive", forgetting.social_positive);
                ov(f, "social_negative", forgetting.social_negative);
            }
            if (m.contains("discounts")) {
                const json& d = m.at("discounts");
                ov(d, "location", discounts.location);
                ov(d, "social_unknown", discounts.social_unknown);
                ov(d, "social_known", discounts.social_known);
            }
        }
        if (j.contains("social_init")) {
            const json& s = j.at("social_init");
            ov(s, "same_mu", social_init.same_mu);
            ov(s, "same_sigma", social_init.same_sigma);
            ov(s, "s2_opp_mu", social_init.s2_opp_mu);
            ov(s, "s2_opp_sigma", social_init.s2_opp_sigma);
            ov(s, "s3_opp_mu", social_init.s3_opp_mu);
            ov(s, "s3_opp_sigma", social_init.s3_opp_sigma);
        }
        if (j.contains("personality")) {
            const json& p = j.at("personality");
            ov(p, "set_pain_mu", personality.set_pain_mu);
            ov(p, "set_pain_sigma", personality.set_pain_sigma);
            ov(p, "set_other_mu", personality.set_other_mu);
            ov(p, "set_other_sigma", personality.set_other_sigma);
            ov(p, "leakage_mu", personality.leakage_mu);
            ov(p, "leakage_sigma", personality.leakage_sigma);
            ov(p, "alpha_pr_mu", personality.alpha_pr_mu);
            ov(p, "alpha_pr_sigma", personality.alpha_pr_sigma);
        }
        if (j.contains("plans")) {
            const json& p = j.at("plans");
            ov(p, "signal_table_file", signal_table_path);
            if (p.contains("signal_table"))
                signals = signal_table_from_json(p.at("signal_table"), signals);
            ov(p, "social_reward", social_reward);
            ov(p, "attack_feedback", attack_feedback);
            if (p.contains("urgency")) {
                const json& u = p.at("urgency");
                ov(u, "food", urgency_food);
                ov(u, "flee", urgency_flee);
                ov(u, "help", urgency_help);
            }
            ov(p, "response_wait", response_wait);
            ov(p, "delivery_wait", delivery_wait);
            ov(p, "inbox_ttl", inbox_ttl);
            ov(p, "under_attack_ticks", under_attack_ticks);
            ov(p, "search_food_retries", search_food_retries);
            ov(p, "flee_timeout", flee_timeout);
            ov(p, "engage_timeout", engage_timeout);
            ov(p, "cluster_timeout", cluster_timeout);
            ov(p, "exchange_tiles", exchange_tiles);
            ov(p, "max_cluster_candidates", max_cluster_candidates);
        }
        if (j.contains("combat")) {
            const json& c = j.at("combat");
            ov(c, "damage_mu", damage_mu);
            ov(c, "damage_sigma", damage_sigma);
            ov(c, "heal_mu", heal_mu);
            ov(c, "heal_sigma", heal_sigma);
            ov(c, "flee_health_fraction", flee_health_fraction);
        }
        if (j.contains("motive")) {
            const json& m = j.at("motive");
            ov(m, "tau", tau);
            ov(m, "alpha_c", alpha_c);
        }
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    if (!signal_table_path.empty()) {
        std::ifstream in(signal_table_path);
        if (!in) throw ConfigError("cannot open signal table: " + signal_table_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        json t;
        try {
            t = json::parse(buf.str());
        } catch (const json::exception& e) {
            throw ConfigError(signal_table_path + ": " + e.what());
        }
        signals = signal_table_from_json(t, SignalTable::defaults());
    }

    if (ticks < 0 || agents_per_group < 1 || view_range < 0)
        throw ConfigError(origin + ": ticks/agents/view_range out of range");
    if (food_spawn_prob < 0.0 || food_spawn_prob > 1.0)
        throw ConfigError(origin + ": food_spawn_prob outside [0,1]");
    if (personalities_mode != "fixtures" && personalities_mode != "generate")
        throw ConfigError(origin + ": personalities_mode must be fixtures|generate");
    if (tau < 0.0 || alpha_c < 0.0 || alpha_c > 1.0)
        throw ConfigError(origin + ": bad motive parameters");
}

void RunConfig::apply_override(const std::string& key_eq_value) {
    auto eq = key_eq_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key.path=value, got: " + key_eq_value);
    std::string path = key_eq_value.substr(0, eq);
    std::string value = key_eq_value.substr(eq + 1);

    // Build a nested partial document {a:{b:{c:<value>}}} and overlay it.
    json leaf;
    try {
        leaf = json::parse(value);
    } catch (const json::exception&) {
        leaf = value;  // unquoted strings (e.g. file paths) pass through
    }
    json doc = leaf;
    for (auto pos = path.rfind('.'); pos != std::string::npos; pos = path.rfind('.')) {
        json wrap = json::object();
        wrap[path.substr(pos + 1)] = doc;
        doc = std::move(wrap);
        path.erase(pos);
    }
    json root = json::object();
    root[path] = doc;
    apply_json_text(root.dump(), "--set " + key_eq_value);
}

std::string RunConfig::to_json_text(int indent) const {
    json j{
        {"world",
         {{"ticks", ticks},
          {"agents_per_group", agents_per_group},
          {"view_range", view_range},
          {"food_spawn_prob", food_spawn_prob},
          {"storage_capacity", storage_capacity},
          {"health_max", health_max},
          {"map", map_path},
          {"personalities_dir", personalities_dir},
          {"personalities_mode", personalities_mode}}},
        {"needs",
         {{"weights", need_vec_to_json(weights.w)},
          {"initial_fill_fraction", need_vec_to_json(initial_fill_fraction)}}},
        {"memory",
         {{"forgetting",
           {{"location_positive", forgetting.location_positive},
            {"location_negative", forgetting.location_negative},
            {"social_positive", forgetting.social_positive},
            {"social_negative", forgetting.social_negative}}},
          {"discounts",
           {{"location", discounts.location},
            {"social_unknown", discounts.social_unknown},
            {"social_known", discounts.social_known}}}}},
        {"social_init",
         {{"same_mu", social_init.same_mu},
          {"same_sigma", social_init.same_sigma},
          {"s2_opp_mu", social_init.s2_opp_mu},
          {"s2_opp_sigma", social_init.s2_opp_sigma},
          {"s3_opp_mu", social_init.s3_opp_mu},
          {"s3_opp_sigma", social_init.s3_opp_sigma}}},
        {"personality",
         {{"set_pain_mu", personality.set_pain_mu},
          {"set_pain_sigma", personality.set_pain_sigma},
          {"set_other_mu", personality.set_other_mu},
          {"set_other_sigma", personality.set_other_sigma},
          {"leakage_mu", personality.leakage_mu},
          {"leakage_sigma", personality.leakage_sigma},
          {"alpha_pr_mu", personality.alpha_pr_mu},
          {"alpha_pr_sigma", personality.alpha_pr_sigma}}},
        {"plans",
         {{"signal_table_file", signal_table_path},
          {"signal_table", signal_table_to_json(signals)},
          {"social_reward", social_reward},
          {"attack_feedback", attack_feedback},
          {"urgency",
           {{"food", urgency_food}, {"flee", urgency_flee}, {"help", urgency_help}}},
          {"response_wait", response_wait},
          {"delivery_wait", delivery_wait},
          {"inbox_ttl", inbox_ttl},
          {"under_attack_ticks", under_attack_ticks},
          {"search_food_retries", search_food_retries},
          {"flee_timeout", flee_timeout},
          {"engage_timeout", engage_timeout},
          {"cluster_timeout", cluster_timeout},
          {"exchange_tiles", exchange_tiles},
          {"max_cluster_candidates", max_cluster_candidates}}},
        {"combat",
         {{"damage_mu", damage_mu},
          {"damage_sigma", damage_sigma},
          {"heal_mu", heal_mu},
          {"heal_sigma", heal_sigma},
          {"flee_health_fraction", flee_health_fraction}}},
        {"motive", {{"tau", tau}, {"alpha_c", alpha_c}}},
    };
    return j.dump(indent);
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "s1" || s == "S1" || s == "1") return Scenario::S1;
    if (s == "s2" || s == "S2" || s == "2") return Scenario::S2;
    if (s == "s3" || s == "S3" || s == "3") return Scenario::S3;
    throw ConfigError("unknown scenario: " + s + " (expected s1|s2|s3)");
}

}  // namespace psi
