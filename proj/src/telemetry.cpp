#include "psi/telemetry.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "psi/util.hpp"

namespace psi {

using nlohmann::json;

const char* to_string(ShoutKind k) {
    switch (k) {
    case ShoutKind::HelpAttacked: return "help_attacked";
    case ShoutKind::FoodRequest: return "food_request";
    case ShoutKind::HealRequest: return "heal_request";
    case ShoutKind::SocialInfoExchange: return "social_info_exchange";
    case ShoutKind::LocationInfoExchange: return "location_info_exchange";
    }
    return "?";
}

ShoutKind shout_from_string(const std::string& s) {
    for (ShoutKind k : {ShoutKind::HelpAttacked, ShoutKind::FoodRequest,
                        ShoutKind::HealRequest, ShoutKind::SocialInfoExchange,
                        ShoutKind::LocationInfoExchange})
        if (s == to_string(k)) return k;
    throw LogError("unknown shout kind: " + s);
}

const char* to_string(EventKind k) {
    switch (k) {
    case EventKind::Spawn: return "spawn";
    case EventKind::Meet: return "meet";
    case EventKind::Adopt: return "adopt";
    case EventKind::Abandon: return "abandon";
    case EventKind::End: return "end";
    case EventKind::Shout: return "shout";
    case EventKind::Hit: return "hit";
    case EventKind::Heal: return "heal";
    case EventKind::Transfer: return "transfer";
    case EventKind::Exchange: return "exchange";
    case EventKind::Score: return "score";
    case EventKind::Starve: return "starve";
    case EventKind::Death: return "death";
    }
    return "?";
}

namespace {

EventKind event_kind_from_string(const std::string& s) {
    for (EventKind k : {EventKind::Spawn, EventKind::Meet, EventKind::Adopt,
                        EventKind::Abandon, EventKind::End, EventKind::Shout,
                        EventKind::Hit, EventKind::Heal, EventKind::Transfer,
                        EventKind::Exchange, EventKind::Score, EventKind::Starve,
                        EventKind::Death})
        if (s == to_string(k)) return k;
    throw LogError("unknown event kind: " + s);
}

AgentRef agent_ref_from_string(const std::string& s) {
    // Format gXaY.
    auto a = s.find('a', 1);
    if (s.size() < 4 || s[0] != 'g' || a == std::string::npos)
        throw LogError("bad agent ref: " + s);
    return AgentRef{std::stoi(s.substr(1, a - 1)), std::stoi(s.substr(a + 1))};
}

}  // namespace

std::string Event::to_json_line() const {
    json j;
    j["ev"] = to_string(kind);
    j["t"] = tick;
    j["who"] = to_string(actor);
    if (other) j["other"] = to_string(*other);
    if (subject) j["subject"] = to_string(*subject);
    if (plan) j["plan"] = to_string(*plan);
    if (!target.empty()) j["target"] = target;
    if (ok) j["ok"] = *ok;
    if (signals) {
        json sig = json::object();
        for (NeedId n : kAllNeeds)
            if (at(*signals, n) != 0.0) sig[to_string(n)] = at(*signals, n);
        j["sig"] = sig;
    }
    if (value) j["val"] = *value;
    if (value2) j["val2"] = *value2;
    if (shout) j["shout"] = to_string(*shout);
    if (pos) j["pos"] = {pos->q, pos->r};
    return j.dump();
}

Event Event::from_json_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw LogError(std::string("bad event line: ") + e.what());
    }
    try {
        Event e;
        e.kind = event_kind_from_string(j.at("ev").get<std::string>());
        e.tick = j.at("t").get<std::int64_t>();
        e.actor = agent_ref_from_string(j.at("who").get<std::string>());
        if (j.contains("other"))
            e.other = agent_ref_from_string(j.at("other").get<std::string>());
        if (j.contains("subject"))
            e.subject = agent_ref_from_string(j.at("subject").get<std::string>());
        if (j.contains("plan")) e.plan = plan_from_string(j.at("plan").get<std::string>());
        if (j.contains("target")) e.target = j.at("target").get<std::string>();
        if (j.contains("ok")) e.ok = j.at("ok").get<bool>();
        if (j.contains("sig")) {
            NeedVec v{};
            for (NeedId n : kAllNeeds)
                if (j.at("sig").contains(to_string(n)))
                    at(v, n) = j.at("sig").at(to_string(n)).get<double>();
            e.signals = v;
        }
        if (j.contains("val")) e.value = j.at("val").get<double>();
        if (j.contains("val2")) e.value2 = j.at("val2").get<double>();
        if (j.contains("shout"))
            e.shout = shout_from_string(j.at("shout").get<std::string>());
        if (j.contains("pos")) e.pos = HexCoord{j.at("pos").at(0), j.at("pos").at(1)};
        return e;
    } catch (const json::exception& ex) {
        throw LogError(std::string("bad event line: ") + ex.what());
    }
}

std::string SocialNetworkSnapshot::to_json() const {
    json nodes = json::array();
    for (const NetworkNode& n : this->nodes)
        nodes.push_back({{"id", to_string(n.id)}, {"name", n.name}, {"alive", n.alive}});
    json edges = json::array();
    for (const NetworkEdge& e : this->edges)
        edges.push_back(
            {{"from", to_string(e.from)}, {"to", to_string(e.to)}, {"score", e.score}});
    return json{{"network", {{"tick", tick}, {"nodes", nodes}, {"edges", edges}}}}.dump();
}

SocialNetworkSnapshot SocialNetworkSnapshot::from_json_text(const std::string& text) {
    try {
        json j = json::parse(text).at("network");
        SocialNetworkSnapshot s;
        s.tick = j.at("tick").get<std::int64_t>();
        for (const json& n : j.at("nodes"))
            s.nodes.push_back(NetworkNode{
                agent_ref_from_string(n.at("id").get<std::string>()),
                n.at("name").get<std::string>(), n.at("alive").get<bool>()});
        for (const json& e : j.at("edges"))
            s.edges.push_back(NetworkEdge{
                agent_ref_from_string(e.at("from").get<std::string>()),
                agent_ref_from_string(e.at("to").get<std::string>()),
                e.at("score").get<double>()});
        return s;
    } catch (const json::exception& e) {
        throw LogError(std::string("bad network snapshot: ") + e.what());
    }
}

void RunLog::serialize(std::ostream& out) const {
    out << header_json << '\n';
    for (const Event& e : events) out << e.to_json_line() << '\n';
    out << final_network.to_json() << '\n';
}

std::string RunLog::serialize_to_string() const {
    std::ostringstream out;
    serialize(out);
    return out.str();
}

RunLog RunLog::parse(std::istream& in, const std::string& origin) {
    RunLog log;
    std::string line;
    if (!std::getline(in, line)) throw LogError(origin + ": empty log");
    try {
        json header = json::parse(line);
        if (!header.contains("psisim_log"))
            throw LogError(origin + ": missing log header");
    } catch (const json::exception& e) {
        throw LogError(origin + ": bad header: " + e.what());
    }
    log.header_json = line;

    bool saw_network = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.find("\"network\"") == 1) {  // {"network":... first key
            log.final_network = SocialNetworkSnapshot::from_json_text(line);
            saw_network = true;
            continue;
        }
        log.events.push_back(Event::from_json_line(line));
    }
    if (!saw_network) throw LogError(origin + ": truncated log, no network snapshot");
    return log;
}

RunLog RunLog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LogError("cannot open log: " + path);
    return parse(in, path);
}

void RunLog::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LogError("cannot write log: " + path);
    serialize(out);
}

namespace {

// Shortest-roundtrip double formatting, the same as the JSON writer's.
std::string num(double x) { return json(x).dump(); }

struct FlatEdge {
    std::string from, to;
    double score;
};

std::vector<FlatEdge> flatten_edges(const SocialNetworkSnapshot& s, bool symmetrize,
                                    double prune_below) {
    std::vector<FlatEdge> out;
    if (!symmetrize) {
        for (const NetworkEdge& e : s.edges)
            out.push_back({to_string(e.from), to_string(e.to), e.score});
    } else {
        // Mean of available directions per unordered pair, kept on the
        // (low, high) orientation.
        std::map<std::pair<AgentRef, AgentRef>, std::pair<double, int>> acc;
        for (const NetworkEdge& e : s.edges) {
            auto key = e.from < e.to ? std::make_pair(e.from, e.to)
                                     : std::make_pair(e.to, e.from);
            acc[key].first += e.score;
            acc[key].second += 1;
        }
        for (const auto& [key, sum_n] : acc)
            out.push_back({to_string(key.first), to_string(key.second),
                           sum_n.first / sum_n.second});
    }
    if (prune_below > 0.0) {
        std::erase_if(out, [&](const FlatEdge& e) {
            return e.score > -prune_below && e.score < prune_below;
        });
    }
    return out;
}

}  // namespace

std::string network_to_graphml(const SocialNetworkSnapshot& s, bool symmetrize,
                               double prune_below) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
        << "  <key id=\"group\" for=\"node\" attr.name=\"group\" attr.type=\"int\"/>\n"
        << "  <key id=\"score\" for=\"edge\" attr.name=\"score\" attr.type=\"double\"/>\n"
        << "  <graph id=\"social\" edgedefault=\""
        << (symmetrize ? "undirected" : "directed") << "\">\n";
    for (const NetworkNode& n : s.nodes) {
        out << "    <node id=\"" << to_string(n.id) << "\">"
            << "<data key=\"name\">" << n.name << "</data>"
            << "<data key=\"group\">" << n.id.group << "</data></node>\n";
    }
    int i = 0;
    for (const FlatEdge& e : flatten_edges(s, symmetrize, prune_below)) {
        out << "    <edge id=\"e" << i++ << "\" source=\"" << e.from << "\" target=\""
            << e.to << "\"><data key=\"score\">" << num(e.score) << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::string network_to_csv(const SocialNetworkSnapshot& s, bool symmetrize,
                           double prune_below) {
    std::ostringstream out;
    out << "from,to,score\n";
    for (const FlatEdge& e : flatten_edges(s, symmetrize, prune_below))
        out << e.from << ',' << e.to << ',' << num(e.score) << '\n';
    return out.str();
}

}  // namespace psi
