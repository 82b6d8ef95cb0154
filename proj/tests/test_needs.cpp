#include "doctest.h"

#include "psi/needs.hpp"

using namespace psi;

namespace {

NeedState make_state() {
    NeedState s;
    s.current = {0.8, 0.8, 0.8, 0.8, 0.8};
    s.set_value = {0.85, 0.8, 0.8, 0.8, 1.0};
    s.leakage = {0.0, 0.005, 0.004, 0.003, 0.002};
    return s;
}

}  // namespace

TEST_CASE("leakage drains every tank by its own rate, floored at zero") {
    NeedState s = make_state();
    apply_leakage(s);
    CHECK(at(s.current, NeedId::PainAvoidance) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(at(s.current, NeedId::Energy) == doctest::Approx(0.795).epsilon(1e-12));
    CHECK(at(s.current, NeedId::Affiliation) == doctest::Approx(0.796).epsilon(1e-12));

    at(s.current, NeedId::Energy) = 0.003;
    apply_leakage(s);
    CHECK(at(s.current, NeedId::Energy) == 0.0);
    apply_leakage(s);
    CHECK(at(s.current, NeedId::Energy) == 0.0);
}

TEST_CASE("signals move the tank and clip to [0, 1]") {
    NeedState s = make_state();
    apply_signal(s, NeedId::Certainty, 0.3);
    CHECK(at(s.current, NeedId::Certainty) == doctest::Approx(1.0).epsilon(1e-12));
    apply_signal(s, NeedId::Certainty, 0.3);
    CHECK(at(s.current, NeedId::Certainty) == 1.0);

    at(s.current, NeedId::PainAvoidance) = 0.1;
    apply_signal(s, NeedId::PainAvoidance, -0.3);
    CHECK(at(s.current, NeedId::PainAvoidance) == 0.0);

    at(s.current, NeedId::Energy) = 0.5;
    apply_signal(s, NeedId::Energy, 0.2);
    CHECK(at(s.current, NeedId::Energy) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("indicator is weighted deficit, zero when satisfied") {
    NeedState s = make_state();
    NeedWeights w;
    CHECK(at(w.w, NeedId::PainAvoidance) == 3.0);
    CHECK(at(w.w, NeedId::Energy) == 2.0);
    CHECK(at(w.w, NeedId::Affiliation) == 1.0);
    CHECK(at(w.w, NeedId::Certainty) == 1.0);
    CHECK(at(w.w, NeedId::Competence) == 1.0);

    at(s.current, NeedId::PainAvoidance) = 0.3;
    at(s.set_value, NeedId::PainAvoidance) = 0.8;
    CHECK(need_indicator(s, w, NeedId::PainAvoidance) ==
          doctest::Approx(1.5).epsilon(1e-12));

    // overfull tank produces no drive
    at(s.current, NeedId::Energy) = 0.9;
    at(s.set_value, NeedId::Energy) = 0.8;
    CHECK(need_indicator(s, w, NeedId::Energy) == 0.0);

    NeedVec all = need_indicators(s, w);
    CHECK(at(all, NeedId::PainAvoidance) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(at(all, NeedId::Energy) == 0.0);
    CHECK(at(all, NeedId::Competence) ==
          doctest::Approx((1.0 - 0.8) * 1.0).epsilon(1e-12));
}

TEST_CASE("need names round-trip") {
    for (NeedId n : kAllNeeds) CHECK(need_from_string(to_string(n)) == n);
    CHECK_THROWS(need_from_string("bogus"));
}
