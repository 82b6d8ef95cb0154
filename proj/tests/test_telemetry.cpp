#include "doctest.h"

#include <sstream>

#include "psi/metrics.hpp"
#include "psi/telemetry.hpp"
#include "psi/util.hpp"

using namespace psi;

namespace {

Event end_event(std::int64_t tick, AgentRef actor, PlanId plan, bool ok) {
    Event e;
    e.kind = EventKind::End;
    e.tick = tick;
    e.actor = actor;
    e.plan = plan;
    e.ok = ok;
    return e;
}

Event adopt_event(std::int64_t tick, AgentRef actor, PlanId plan,
                  std::optional<AgentRef> other = std::nullopt) {
    Event e;
    e.kind = EventKind::Adopt;
    e.tick = tick;
    e.actor = actor;
    e.other = other;
    e.plan = plan;
    e.value = 0.5;
    return e;
}

}  // namespace

TEST_CASE("events round-trip through their line format") {
    Event e;
    e.kind = EventKind::End;
    e.tick = 123;
    e.actor = {1, 4};
    e.other = AgentRef{2, 0};
    e.plan = PlanId::Engage;
    e.target = "g2a0";
    e.ok = false;
    NeedVec sig{};
    at(sig, NeedId::Affiliation) = -0.25;
    e.signals = sig;
    e.value = 0.7;

    Event back = Event::from_json_line(e.to_json_line());
    CHECK(back.kind == EventKind::End);
    CHECK(back.tick == 123);
    CHECK(back.actor == AgentRef{1, 4});
    CHECK(back.other == AgentRef{2, 0});
    CHECK(back.plan == PlanId::Engage);
    CHECK(back.target == "g2a0");
    CHECK(back.ok == false);
    REQUIRE(back.signals.has_value());
    CHECK(at(*back.signals, NeedId::Affiliation) == -0.25);
    CHECK(back.value == 0.7);
    CHECK_FALSE(back.value2.has_value());
    CHECK_FALSE(back.pos.has_value());

    Event s;
    s.kind = EventKind::Shout;
    s.tick = 5;
    s.actor = {1, 0};
    s.subject = AgentRef{2, 3};
    s.shout = ShoutKind::HelpAttacked;
    s.pos = HexCoord{3, -1};
    Event sb = Event::from_json_line(s.to_json_line());
    CHECK(sb.subject == AgentRef{2, 3});
    CHECK(sb.shout == ShoutKind::HelpAttacked);
    CHECK(sb.pos == HexCoord{3, -1});

    CHECK_THROWS_AS(Event::from_json_line("{broken"), LogError);
}

TEST_CASE("a run log round-trips byte for byte") {
    RunLog log;
    log.header_json = R"({"psisim_log":1,"scenario":"s1"})";
    log.events.push_back(adopt_event(0, {1, 0}, PlanId::Explore));
    log.events.push_back(end_event(3, {1, 0}, PlanId::Explore, true));
    log.final_network.tick = 3;
    log.final_network.nodes.push_back({{1, 0}, "A", true});
    log.final_network.nodes.push_back({{1, 1}, "B", false});
    log.final_network.edges.push_back({{1, 0}, {1, 1}, 0.75});

    std::string text = log.serialize_to_string();
    std::istringstream in(text);
    RunLog back = RunLog::parse(in, "mem");
    CHECK(back.serialize_to_string() == text);
    CHECK(back.events.size() == 2);
    CHECK(back.final_network.nodes.size() == 2);
    CHECK(back.final_network.nodes[1].alive == false);
    CHECK(back.final_network.edges[0].score == 0.75);

    std::istringstream bad("not json\n");
    CHECK_THROWS_AS(RunLog::parse(bad, "mem"), LogError);
    CHECK_THROWS_AS(RunLog::load("/nonexistent/run.jsonl"), LogError);
}

TEST_CASE("network exports") {
    SocialNetworkSnapshot s;
    s.tick = 9;
    s.nodes.push_back({{1, 0}, "A", true});
    s.nodes.push_back({{1, 1}, "B", true});
    s.nodes.push_back({{2, 0}, "C", true});
    s.edges.push_back({{1, 0}, {1, 1}, 0.5});
    s.edges.push_back({{1, 1}, {1, 0}, 0.3});
    s.edges.push_back({{1, 0}, {2, 0}, -0.002});

    std::string csv = network_to_csv(s);
    CHECK(csv.find("from,to,score") == 0);
    CHECK(csv.find("g1a0,g1a1,0.5") != std::string::npos);
    CHECK(csv.find("g1a0,g2a0,-0.002") != std::string::npos);

    // pruning drops near-zero edges
    std::string pruned = network_to_csv(s, false, 0.01);
    CHECK(pruned.find("g2a0") == std::string::npos);
    CHECK(pruned.find("g1a0,g1a1,0.5") != std::string::npos);

    // symmetrizing averages the two directions
    std::string sym = network_to_csv(s, true, 0.0);
    CHECK(sym.find("g1a0,g1a1,0.4") != std::string::npos);
    CHECK(sym.find("g1a1,g1a0") == std::string::npos);

    std::string gml = network_to_graphml(s);
    CHECK(gml.find("<graphml") != std::string::npos);
    CHECK(gml.find("g1a0") != std::string::npos);
    CHECK(gml.find("0.5") != std::string::npos);

    // snapshot json round-trip
    SocialNetworkSnapshot back = SocialNetworkSnapshot::from_json_text(s.to_json());
    CHECK(back.tick == 9);
    CHECK(back.edges.size() == 3);
    CHECK(back.edges[0].score == 0.5);
}

TEST_CASE("engage bins split by group and refine consistently") {
    std::vector<Event> ev;
    Event e1 = end_event(10, {1, 0}, PlanId::Engage, true);
    e1.other = AgentRef{1, 1};
    Event e2 = end_event(700, {1, 0}, PlanId::Engage, false);
    e2.other = AgentRef{2, 1};
    Event e3 = end_event(900, {2, 0}, PlanId::Engage, true);
    e3.other = AgentRef{2, 2};
    ev.push_back(e1);
    ev.push_back(e2);
    ev.push_back(e3);
    ev.push_back(end_event(20, {1, 0}, PlanId::Explore, true));  // ignored

    auto rows = bin_engage_counts(ev, 500);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].bin_start == 0);
    CHECK(rows[0].intra == 1);
    CHECK(rows[0].inter == 0);
    CHECK(rows[1].bin_start == 500);
    CHECK(rows[1].intra == 1);
    CHECK(rows[1].inter == 1);

    // halving the bin width preserves totals
    auto fine = bin_engage_counts(ev, 250);
    long intra = 0, inter = 0;
    for (const auto& r : fine) {
        intra += r.intra;
        inter += r.inter;
    }
    CHECK(intra == 2);
    CHECK(inter == 1);

    std::string csv = engage_bins_to_csv(rows);
    CHECK(csv.find("bin_start,intra,inter") == 0);
    CHECK(csv.find("500,1,1") != std::string::npos);
}

TEST_CASE("action counts by family") {
    std::vector<Event> ev;
    ev.push_back(adopt_event(1, {1, 0}, PlanId::Explore));
    ev.push_back(adopt_event(2, {1, 0}, PlanId::GiveFood, AgentRef{1, 1}));
    ev.push_back(adopt_event(3, {1, 0}, PlanId::GiveFood, AgentRef{2, 1}));
    ev.push_back(adopt_event(4, {1, 0}, PlanId::ExchangeLocationInfo, AgentRef{2, 1}));
    ev.push_back(end_event(5, {1, 0}, PlanId::Explore, true));  // not an adoption

    auto all = count_actions(ev, PlanFamily::All);
    long total = 0;
    for (const auto& r : all) total += r.total;
    CHECK(total == 4);
    for (const auto& r : all)
        if (r.plan == PlanId::GiveFood) {
            CHECK(r.total == 2);
            CHECK(r.intra == 1);
            CHECK(r.inter == 1);
        }

    auto social = count_actions(ev, PlanFamily::Social);
    for (const auto& r : social) {
        CHECK(is_social_plan(r.plan));
        if (r.plan == PlanId::ExchangeLocationInfo) CHECK(r.total == 1);
    }

    auto ex = count_actions(ev, PlanFamily::InformationExchange);
    long ex_total = 0;
    for (const auto& r : ex) {
        ex_total += r.total;
        CHECK((r.plan == PlanId::ExchangeLocationInfo ||
               r.plan == PlanId::ExchangeSocialInfo));
    }
    CHECK(ex_total == 1);

    CHECK(family_from_string("all") == PlanFamily::All);
    CHECK(family_from_string("social") == PlanFamily::Social);
    CHECK(family_from_string("exchange") == PlanFamily::InformationExchange);
    CHECK_THROWS(family_from_string("bogus"));

    std::string csv = action_counts_to_csv(all);
    CHECK(csv.find("plan,total,intra,inter") == 0);
}

TEST_CASE("contact, exchange and score summaries") {
    std::vector<Event> ev;
    Event meet;
    meet.kind = EventKind::Meet;
    meet.tick = 40;
    meet.actor = {1, 0};
    meet.other = AgentRef{1, 1};
    ev.push_back(meet);
    CHECK_FALSE(first_intergroup_contact(ev).has_value());
    meet.tick = 55;
    meet.other = AgentRef{2, 3};
    ev.push_back(meet);
    CHECK(first_intergroup_contact(ev) == 55);

    Event x;
    x.kind = EventKind::Exchange;
    x.tick = 60;
    x.actor = {1, 0};
    x.other = AgentRef{2, 3};
    x.plan = PlanId::ExchangeLocationInfo;
    ev.push_back(x);
    x.other = AgentRef{1, 1};
    ev.push_back(x);
    ExchangeCounts xc = count_exchanges(ev);
    CHECK(xc.intra == 1);
    CHECK(xc.inter == 1);

    Event hit = end_event(70, {1, 0}, PlanId::Engage, true);
    hit.other = AgentRef{2, 3};
    ev.push_back(hit);
    EngageSplit early = count_engages(ev, 0, 65);
    CHECK(early.inter == 0);
    EngageSplit late = count_engages(ev, 65);
    CHECK(late.inter == 1);
    CHECK(late.intra == 0);

    SocialNetworkSnapshot s;
    s.nodes.push_back({{1, 0}, "A", true});
    s.nodes.push_back({{1, 1}, "B", true});
    s.nodes.push_back({{2, 0}, "C", true});
    s.edges.push_back({{1, 0}, {1, 1}, 0.8});
    s.edges.push_back({{1, 1}, {1, 0}, 0.6});
    s.edges.push_back({{1, 0}, {2, 0}, 0.4});
    s.edges.push_back({{2, 0}, {1, 1}, -0.2});
    // ordered same-group pairs: (A,B) and (B,A); no intra edges for C
    CHECK(mean_intra_score(s) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(count_positive_inter_edges(s) == 1);
    CHECK(count_positive_inter_edges(s, 0.5) == 0);
}
