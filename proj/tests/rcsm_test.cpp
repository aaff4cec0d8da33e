#include "doctest.h"
#include "test_helpers.hpp"

#include <tcsm/rcsm.hpp>

#include <string>
#include <vector>

using namespace tcsm;
using th::TcsmBuilder;
using th::guard1;
using th::sig;

namespace {

Formula at(const char* s) { return Formula::atom(sig(s)); }

// one clock, wait-then-switch: s may idle forever, may move to t once x >= 1
TcsmAutomaton waitSwitch() {
    return TcsmBuilder("W")
        .clock("x")
        .state("s", {}, true)
        .state("t")
        .trans("s", "s", Formula::verum())
        .trans("s", "t", Formula::verum(), guard1("x", BoundRel::Ge, 1))
        .trans("t", "t", Formula::verum())
        .build();
}

const RTransition* edge(const RcsmAutomaton& a, int s, int t) {
    const auto it = a.transitions.find({s, t});
    return it == a.transitions.end() ? nullptr : &it->second;
}

} // namespace

TEST_CASE("region automaton of the wait-then-switch machine") {
    const RcsmAutomaton a = buildRcsm(waitSwitch());
    validateRcsm(a);

    // canonical order: base state first, then region descriptor
    const std::vector<std::string> wantKeys = {
        "s@ints= zero= order= beyond=x",
        "s@ints=x:0 zero= order=(x) beyond=",
        "s@ints=x:0 zero=x order= beyond=",
        "s@ints=x:1 zero=x order= beyond=",
        "t@ints= zero= order= beyond=x",
        "t@ints=x:1 zero=x order= beyond=",
    };
    REQUIRE(a.rstates.size() == wantKeys.size());
    for (size_t i = 0; i < wantKeys.size(); ++i)
        CHECK(a.rstates[i].key() == wantKeys[i]);
    CHECK(a.init == 2); // the all-zero region
    CHECK(a.bounds == ClockBounds{{"x", 1}});
    CHECK(a.baseStates == std::vector<std::string>{"s", "t"});
    CHECK(a.arity() == 1);

    // twelve transitions: ears stay and ride time forward, the switch fires
    // in the two regions its guard admits
    REQUIRE(a.transitions.size() == 12);
    const std::vector<std::tuple<int, int, TransitionKind>> want = {
        {0, 0, TransitionKind::Progress}, {0, 4, TransitionKind::Action},
        {1, 1, TransitionKind::Progress}, {1, 3, TransitionKind::Progress},
        {2, 1, TransitionKind::Progress}, {2, 2, TransitionKind::Progress},
        {3, 0, TransitionKind::Progress}, {3, 3, TransitionKind::Progress},
        {3, 5, TransitionKind::Action},   {4, 4, TransitionKind::Progress},
        {5, 4, TransitionKind::Progress}, {5, 5, TransitionKind::Progress},
    };
    for (const auto& [s, t, kind] : want) {
        const RTransition* e = edge(a, s, t);
        REQUIRE(e != nullptr);
        CHECK(e->kind == kind);
        CHECK(e->trigger.kind() == Formula::Kind::True);
        CHECK(e->resets.empty());
    }

    CHECK(a.rstateIndex(wantKeys[3]) == 3);
    CHECK(a.rstateIndex("nope") == -1);
    CHECK_THROWS_AS(a.requireRState("nope"), UnknownRState);
    CHECK(a.baseStateIndex("t") == 1);
    CHECK(a.baseStateIndex("zz") == -1);

    // successor queries agree with the stored edges (all triggers are 1)
    CHECK(regionSuccessors(a, 2) == std::set<int>{1, 2});
    CHECK(regionSuccessors(a, 3) == std::set<int>{0, 3, 5});
}

TEST_CASE("a guarded ear stops time at its boundary") {
    // the ear only runs below 1, so the region past 1 is never entered and
    // the machine is forced out exactly at x = 1
    const TcsmAutomaton p =
        TcsmBuilder("F")
            .clock("x")
            .state("s", {}, true)
            .state("t")
            .trans("s", "s", Formula::verum(), guard1("x", BoundRel::Lt, 1))
            .trans("s", "t", Formula::verum(), guard1("x", BoundRel::Ge, 1))
            .trans("t", "t", Formula::verum())
            .build();
    const RcsmAutomaton a = buildRcsm(p);
    const std::vector<std::string> keys = [&] {
        std::vector<std::string> k;
        for (const RState& r : a.rstates) k.push_back(r.key());
        return k;
    }();
    CHECK(keys == std::vector<std::string>{
                      "s@ints=x:0 zero= order=(x) beyond=",
                      "s@ints=x:0 zero=x order= beyond=",
                      "s@ints=x:1 zero=x order= beyond=",
                      "t@ints= zero= order= beyond=x",
                      "t@ints=x:1 zero=x order= beyond=",
                  });
    // at x = 1 the only move is the action
    const int atOne = a.requireRState("s@ints=x:1 zero=x order= beyond=");
    int outgoing = 0;
    for (const auto& [e, t] : a.transitions)
        if (e.first == atOne) {
            ++outgoing;
            CHECK(t.kind == TransitionKind::Action);
        }
    CHECK(outgoing == 1);
}

TEST_CASE("an ear that resets its clock pins the region") {
    const TcsmAutomaton p = TcsmBuilder("R")
                                .clock("x")
                                .state("s", {}, true)
                                .trans("s", "s", Formula::verum(),
                                       ClockConstraint::always(), {"x"})
                                .build();
    const RcsmAutomaton a = buildRcsm(p, {.checkCompleteness = false});
    REQUIRE(a.rstates.size() == 1);
    CHECK(a.rstates[0].key() == "s@ints=x:0 zero=x order= beyond=");
    REQUIRE(a.transitions.size() == 1);
    const RTransition* e = edge(a, 0, 0);
    REQUIRE(e != nullptr);
    CHECK(e->kind == TransitionKind::Progress);
    CHECK(e->resets == ClockSet{"x"});
}

TEST_CASE("triggers reduce against outputs of unreachable states too") {
    // t emits a and is unreachable; still, a is generated vocabulary, so the
    // ear's trigger a reduces to 0 and s ends up with no moves at all
    const TcsmAutomaton p = TcsmBuilder("U")
                                .state("s", {}, true)
                                .state("t", {sig("a")})
                                .trans("s", "s", at("a"))
                                .trans("t", "t", Formula::verum())
                                .build();
    const RcsmAutomaton a = buildRcsm(p, {.checkCompleteness = false});
    CHECK(a.outAlpha == SignalSet{sig("a")});
    REQUIRE(a.rstates.size() == 1);
    CHECK(a.rstates[0].state == "s");
    CHECK(a.outs[0].empty());
    CHECK(a.transitions.empty());
    // an rstate with no moves can neither act nor let time pass
    CHECK(zeroTimeTraps(a) == std::vector<std::vector<int>>{{0}});
}

TEST_CASE("external triggers survive and reach their targets") {
    // same shape, but a is nobody's output: the ear keeps its trigger
    const TcsmAutomaton p = TcsmBuilder("E")
                                .state("s", {}, true)
                                .state("t")
                                .trans("s", "s", at("a"))
                                .trans("s", "t", -at("a"))
                                .trans("t", "t", Formula::verum())
                                .build();
    const RcsmAutomaton a = buildRcsm(p);
    CHECK(a.outAlpha.empty());
    REQUIRE(a.rstates.size() == 2);
    const RTransition* ear = edge(a, 0, 0);
    REQUIRE(ear != nullptr);
    CHECK(ear->trigger.str() == "a");
    CHECK(zeroTimeTraps(a).empty());
}

TEST_CASE("completeness gate and region budget") {
    const TcsmAutomaton gap =
        TcsmBuilder("G")
            .clock("x")
            .state("s", {}, true)
            .trans("s", "s", Formula::verum(), guard1("x", BoundRel::Lt, 1))
            .build();
    CHECK_THROWS_AS(buildRcsm(gap), IncompleteModel);
    CHECK_NOTHROW(buildRcsm(gap, {.checkCompleteness = false}));

    BuildOptions tiny;
    tiny.maxRegions = 3;
    CHECK_THROWS_AS(buildRcsm(waitSwitch(), tiny), RegionBudgetExceeded);
}

TEST_CASE("bounds overrides refine the region graph") {
    const TcsmAutomaton idle = TcsmBuilder("I")
                                   .clock("x")
                                   .state("s", {}, true)
                                   .trans("s", "s", Formula::verum())
                                   .build();
    CHECK(buildRcsm(idle).rstates.size() == 2); // x:0 — zero and beyond

    BuildOptions wide;
    wide.boundsOverride = ClockBounds{{"x", 2}};
    const RcsmAutomaton a = buildRcsm(idle, wide);
    CHECK(a.bounds == ClockBounds{{"x", 2}});
    CHECK(a.rstates.size() == 6);

    BuildOptions bad;
    bad.boundsOverride = ClockBounds{{"y", 1}};
    CHECK_THROWS_AS(buildRcsm(idle, bad), UnknownClock);
}

TEST_CASE("projection forgets clocks") {
    const ClockBounds joint = {{"x", 1}, {"y", 2}};
    ClockValuation nu;
    nu["x"] = Rat(1, 2);
    nu["y"] = Rat(3, 2);
    const Region r = regionOf(nu, joint);
    const Region px = projectRegion(r, {"x"});
    CHECK(px == regionOf({{"x", Rat(1, 2)}}, {{"x", 1}}));
    const Region py = projectRegion(r, {"y"});
    CHECK(py == regionOf({{"y", Rat(3, 2)}}, {{"y", 2}}));
    CHECK(projectRegion(r, {"x", "y"}) == r);
    validateRegion(projectRegion(r, {}));
    CHECK_THROWS_AS(projectRegion(r, {"w"}), UnknownClock);
}

TEST_CASE("zero-time traps in a composition of trap-free machines") {
    const TcsmAutomaton a = th::trapPartA();
    const TcsmAutomaton b = th::trapPartB();
    CHECK(zeroTimeTraps(buildRcsm(a)).empty());
    CHECK(zeroTimeTraps(buildRcsm(b)).empty());

    const RcsmAutomaton joint = buildRcsm(productTcsm({a, b}));
    REQUIRE(joint.rstates.size() == 3);
    const auto traps = zeroTimeTraps(joint);
    REQUIRE(traps.size() == 1);
    CHECK(traps[0] ==
          std::vector<int>{joint.requireRState("a1.b0@ints= zero= order= beyond="),
                           joint.requireRState("a2.b0@ints= zero= order= beyond=")});

    // the same trap surfaces when the product is taken region-side
    const RcsmAutomaton viaRegions = productRcsm({buildRcsm(a), buildRcsm(b)});
    std::string why;
    CHECK(canonicalCompare(joint, viaRegions, &why));
    CHECK(why.empty());
    CHECK(zeroTimeTraps(viaRegions).size() == 1);
}

TEST_CASE("region products refuse shared vocabulary") {
    const TcsmAutomaton a = TcsmBuilder("A")
                                .clock("x")
                                .state("s", {sig("m")}, true)
                                .trans("s", "s", Formula::verum())
                                .build();
    const TcsmAutomaton sameOut = TcsmBuilder("B")
                                      .state("u", {sig("m")}, true)
                                      .trans("u", "u", Formula::verum())
                                      .build();
    const TcsmAutomaton sameClock = TcsmBuilder("C")
                                        .clock("x")
                                        .state("v", {}, true)
                                        .trans("v", "v", Formula::verum())
                                        .build();
    CHECK_THROWS_AS(productRcsm({buildRcsm(a), buildRcsm(sameOut)}),
                    OverlappingOutputs);
    CHECK_THROWS_AS(productRcsm({buildRcsm(a), buildRcsm(sameClock)}),
                    OverlappingClocks);
}

TEST_CASE("structural comparison explains mismatches") {
    const TcsmAutomaton p = TcsmBuilder("E")
                                .state("s", {}, true)
                                .state("t")
                                .trans("s", "s", at("a"))
                                .trans("s", "t", -at("a"))
                                .trans("t", "t", Formula::verum())
                                .build();
    const RcsmAutomaton a = buildRcsm(p);

    RcsmAutomaton b = buildRcsm(p);
    std::string why;
    CHECK(canonicalCompare(a, b, &why));

    // logically equivalent trigger, different shape: still equal
    b.transitions.at({0, 0}).trigger = at("a") + at("a");
    CHECK(canonicalCompare(a, b, &why));

    // genuinely different trigger
    b.transitions.at({0, 0}).trigger = -at("a");
    CHECK_FALSE(canonicalCompare(a, b, &why));
    CHECK(!why.empty());

    b = buildRcsm(p);
    b.transitions.at({0, 1}).kind = TransitionKind::Progress;
    CHECK_FALSE(canonicalCompare(a, b, &why));

    b = buildRcsm(p);
    b.outs[1] = {};
    CHECK(canonicalCompare(a, b, &why)); // outs were empty anyway
    b.outAlpha.insert(sig("zz"));
    CHECK_THROWS_AS(canonicalCompare(a, b), IncomparableAlphabets);

    b = buildRcsm(p);
    b.transitions.erase({1, 1});
    CHECK_FALSE(canonicalCompare(a, b, &why));
    CHECK_FALSE(canonicalCompare(b, a, &why)); // asymmetry caught both ways

    const RcsmAutomaton wider =
        buildRcsm(waitSwitch(), {.boundsOverride = ClockBounds{{"x", 2}}});
    CHECK_THROWS_AS(canonicalCompare(buildRcsm(waitSwitch()), wider),
                    IncomparableAlphabets);
}

TEST_CASE("built region automata validate, corrupted copies do not") {
    const RcsmAutomaton good = buildRcsm(waitSwitch());
    CHECK_NOTHROW(validateRcsm(good));

    RcsmAutomaton b = good;
    b.init = -1;
    CHECK_THROWS_AS(validateRcsm(b), Error);

    b = good;
    b.outs.pop_back();
    CHECK_THROWS_AS(validateRcsm(b), Error);

    b = good;
    b.rstates[1] = b.rstates[0]; // duplicate key
    CHECK_THROWS_AS(validateRcsm(b), Error);

    b = good;
    b.rstates[0].region.ints["x"] = 7; // past the bound
    CHECK_THROWS_AS(validateRcsm(b), Error);

    b = good;
    b.transitions.insert_or_assign({0, 99}, RTransition{});
    CHECK_THROWS_AS(validateRcsm(b), Error);

    b = good;
    b.outs[0] = {sig("zz")}; // not in the output alphabet
    CHECK_THROWS_AS(validateRcsm(b), Error);

    b = good;
    b.transitions.at({0, 0}).resets = {"q"};
    CHECK_THROWS_AS(validateRcsm(b), Error);
}

TEST_CASE("random machines: region product commutes with composition") {
    std::mt19937 rng(20240813);
    const std::vector<Signal> outsA = {sig("p"), sig("q")};
    const std::vector<Signal> outsB = {sig("u"), sig("v")};
    std::vector<Signal> visible = {sig("p"), sig("q"), sig("u"),
                                   sig("v"), sig("e")};
    BuildOptions lax;
    lax.checkCompleteness = false;
    for (int trial = 0; trial < 5; ++trial) {
        const TcsmAutomaton a =
            th::randomTcsm(rng, "A" + std::to_string(trial), "cx", outsA, visible);
        const TcsmAutomaton b =
            th::randomTcsm(rng, "B" + std::to_string(trial), "cy", outsB, visible);
        const RcsmAutomaton direct = buildRcsm(productTcsm({a, b}), lax);
        const RcsmAutomaton paired =
            productRcsm({buildRcsm(a, lax), buildRcsm(b, lax)}, lax);
        std::string why;
        const bool same = canonicalCompare(direct, paired, &why);
        CHECK(same);
        if (!same) MESSAGE(why);
    }
}
