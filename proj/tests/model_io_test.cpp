#include "doctest.h"
#include "test_helpers.hpp"

#include <tcsm/model_io.hpp>

#include <filesystem>
#include <fstream>

using namespace tcsm;
using th::sig;

namespace {

const char* kSmall = R"(# a small two-state machine
automaton M
  clocks x y
  state s init outputs a b
  state t
  trans s -> s when 1
  trans s -> t when a*b+-c guard x < 2 & y >= 1 reset x y
  trans t -> t when 1
end
)";

TcsmAutomaton parseOne(const std::string& text) {
    const ModelFile m = parseModel(text);
    REQUIRE(m.automata.size() == 1);
    return std::get<TcsmAutomaton>(m.automata[0]);
}

int lineOf(const std::string& text) {
    try {
        parseModel(text);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

std::string tempFile(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.close();
    return path.string();
}

TcsmAutomaton waitSwitch() {
    return th::TcsmBuilder("W")
        .clock("x")
        .state("s", {}, true)
        .state("t")
        .trans("s", "s", Formula::verum())
        .trans("s", "t", Formula::verum(),
               th::guard1("x", BoundRel::Ge, 1))
        .trans("t", "t", Formula::verum())
        .build();
}

} // namespace

TEST_CASE("a timed automaton parses field by field") {
    const TcsmAutomaton p = parseOne(kSmall);
    CHECK(p.name == "M");
    CHECK(p.states == std::vector<std::string>{"s", "t"});
    CHECK(p.clocks == std::vector<Clock>{"x", "y"});
    CHECK(p.init == 0);
    CHECK(p.outs[0] == SignalSet{sig("a"), sig("b")});
    CHECK(p.outs[1].empty());

    const TimedTransition* t = p.transition(0, 1);
    REQUIRE(t != nullptr);
    CHECK(t->trigger.str() == "a*b+-c");
    CHECK(t->guard.str() == "x < 2 & y >= 1");
    CHECK(t->resets == ClockSet{"x", "y"});
    CHECK(p.transition(0, 0)->guard.unconstrained());
    CHECK(p.transition(1, 0) == nullptr);
}

TEST_CASE("serialization reproduces the canonical text") {
    const TcsmAutomaton p = parseOne(kSmall);
    const std::string text = serializeAutomaton(p);
    CHECK(text == "automaton M\n"
                  "  clocks x y\n"
                  "  state s init outputs a b\n"
                  "  state t\n"
                  "  trans s -> s when 1\n"
                  "  trans s -> t when a*b+-c guard x < 2 & y >= 1 reset x y\n"
                  "  trans t -> t when 1\n"
                  "end\n");
    // parsing the canonical text and serializing again is the identity
    CHECK(serializeAutomaton(parseOne(text)) == text);
}

TEST_CASE("guards glue across spaces and triggers of 0 vanish") {
    const TcsmAutomaton p = parseOne("automaton G\n"
                                     "  clocks x\n"
                                     "  state s init\n"
                                     "  state u\n"
                                     "  trans s -> s when 1 guard x<2&x>=1\n"
                                     "  trans s -> u when 0\n"
                                     "  trans u -> u when 1\n"
                                     "end\n");
    REQUIRE(p.transition(0, 0) != nullptr);
    CHECK(p.transition(0, 0)->guard.str() == "x < 2 & x >= 1");
    CHECK(p.transition(0, 1) == nullptr); // void transition dropped
}

TEST_CASE("parse diagnostics carry line numbers") {
    CHECK(lineOf("automaton A\n"
                 "  state s init\n"
                 "  state s\n"
                 "end\n") == 3); // duplicate state
    CHECK(lineOf("automaton A\n"
                 "  state s init\n"
                 "  state t init\n"
                 "end\n") == 3); // second init
    CHECK(lineOf("automaton A\n"
                 "  state s\n"
                 "end\n") == 1); // no init, reported at the block head
    CHECK(lineOf("automaton A\n"
                 "  state s init\n"
                 "  trans s -> zz when 1\n"
                 "end\n") == 3);
    CHECK(lineOf("automaton A\n"
                 "  state s init\n"
                 "  trans s -> s when 1 guard x < 1\n"
                 "end\n") == 3); // clock never declared
    CHECK(lineOf("automaton A\n"
                 "  state s init\n"
                 "  trans s -> s when 1\n"
                 "  trans s -> s when a\n"
                 "end\n") == 4); // one transition per pair
    CHECK(lineOf("automaton A\n"
                 "  state s init\n"
                 "  trans s -> s when a+*b\n"
                 "end\n") == 3); // malformed formula
    CHECK(lineOf("automaton 9name\n"
                 "  state s init\n"
                 "end\n") == 1);
    CHECK(lineOf("automaton A\n"
                 "  state s init\n") > 0); // missing end
    CHECK(lineOf("# nothing here\n") == 0);
    CHECK(lineOf("automaton A\n"
                 "  state s init\n"
                 "  bogus line\n"
                 "end\n") == 3);
    CHECK(lineOf("automaton A\n"
                 "  clocks x\n"
                 "  clocks y\n"
                 "  state s init\n"
                 "  trans s -> s when 1\n"
                 "end\n") == 3); // clocks given twice
}

TEST_CASE("region automata round-trip through text") {
    const RcsmAutomaton a = buildRcsm(waitSwitch());
    const std::string text = serializeAutomaton(a);
    const ModelFile m = parseModel(text);
    REQUIRE(m.automata.size() == 1);
    const RcsmAutomaton b = std::get<RcsmAutomaton>(m.automata[0]);
    CHECK_NOTHROW(validateRcsm(b));
    std::string why;
    CHECK(canonicalCompare(a, b, &why));
    CHECK(why.empty());
    CHECK(serializeAutomaton(b) == text);
    CHECK(b.init == a.init);
    CHECK(b.bounds == a.bounds);
}

TEST_CASE("region automaton text pins bounds, descriptors and resets") {
    const TcsmAutomaton p = th::TcsmBuilder("R")
                                .clock("x")
                                .state("s", {}, true)
                                .trans("s", "s", Formula::verum(),
                                       ClockConstraint::always(), {"x"})
                                .build();
    const std::string text = serializeAutomaton(buildRcsm(p));
    CHECK(text ==
          "automaton R\n"
          "  clocks x:0\n"
          "  state s@ints=x:0 zero=x order= beyond= init\n"
          "  trans s@ints=x:0 zero=x order= beyond= -> "
          "s@ints=x:0 zero=x order= beyond= when 1 reset x\n"
          "end\n");
}

TEST_CASE("region blocks reject guards, bad inits and unreachable states") {
    // a guard has no business in a region automaton
    CHECK(lineOf("automaton R\n"
                 "  clocks x:1\n"
                 "  state s@ints=x:0 zero=x order= beyond= init\n"
                 "  trans s@ints=x:0 zero=x order= beyond= -> "
                 "s@ints=x:0 zero=x order= beyond= when 1 guard x < 1\n"
                 "end\n") == 4);
    // the initial region must be all zero
    CHECK(lineOf("automaton R\n"
                 "  clocks x:1\n"
                 "  state s@ints=x:1 zero=x order= beyond= init\n"
                 "  trans s@ints=x:1 zero=x order= beyond= -> "
                 "s@ints=x:1 zero=x order= beyond= when 1\n"
                 "end\n") == 3);
    // every region state must be reachable
    CHECK(lineOf("automaton R\n"
                 "  clocks x:1\n"
                 "  state s@ints=x:0 zero=x order= beyond= init\n"
                 "  state s@ints=x:1 zero=x order= beyond=\n"
                 "  trans s@ints=x:0 zero=x order= beyond= -> "
                 "s@ints=x:0 zero=x order= beyond= when 1\n"
                 "end\n") == 4);
    // descriptors must parse against the declared bounds
    CHECK(lineOf("automaton R\n"
                 "  clocks x:1\n"
                 "  state s@ints=y:0 zero=y order= beyond= init\n"
                 "end\n") == 3);
}

TEST_CASE("plain automata serialize like clockless timed ones") {
    const CsmAutomaton c = th::CsmBuilder("C")
                               .state("u", {sig("m")}, true)
                               .state("v")
                               .trans("u", "v", Formula::atom(sig("e")))
                               .trans("u", "u", -Formula::atom(sig("e")))
                               .trans("v", "v", Formula::verum())
                               .build();
    const std::string text = serializeAutomaton(c);
    CHECK(text == "automaton C\n"
                  "  state u init outputs m\n"
                  "  state v\n"
                  "  trans u -> u when -e\n"
                  "  trans u -> v when e\n"
                  "  trans v -> v when 1\n"
                  "end\n");
    const CsmAutomaton back = toCsm(parseOne(text));
    CHECK(back.states == c.states);
    CHECK(back.init == c.init);
    CHECK(serializeAutomaton(back) == text);
}

TEST_CASE("model files hold several automata") {
    const ModelFile m = th::bundled("train_gate.tcsm");
    REQUIRE(m.automata.size() == 3);
    CHECK(std::get<TcsmAutomaton>(m.automata[0]).name == "TRAIN");
    CHECK(std::get<TcsmAutomaton>(m.automata[1]).name == "GATE");
    CHECK(std::get<TcsmAutomaton>(m.automata[2]).name == "CONTROLLER");

    const std::string text = serializeModel(m);
    CHECK(text.find("end\n\nautomaton GATE\n") != std::string::npos);
    // serialize-parse-serialize is the identity on bundled models
    CHECK(serializeModel(parseModel(text)) == text);
}

TEST_CASE("loading reports the file and line of the first defect") {
    CHECK_THROWS_AS(loadModel("/nonexistent/nothing.tcsm"), Error);

    const std::string path =
        tempFile("tcsm_io_broken.tcsm", "automaton A\n  state 9bad init\nend\n");
    try {
        loadModel(path);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(path + ":2:") == 0);
    }
}

TEST_CASE("graphviz export shows regions, kinds and errors") {
    const RcsmAutomaton a = buildRcsm(waitSwitch());
    const std::set<int> bad = {a.requireRState("t@ints= zero= order= beyond=x")};
    const std::string dot = exportDot(a, &bad);
    CHECK(dot.find("digraph \"W\" {") == 0);
    CHECK(dot.find("label=\"s\\nints=x:0 zero=x order= beyond=\"") !=
          std::string::npos);
    CHECK(dot.find("peripheries=2") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("fillcolor=red") != std::string::npos);
    CHECK(dot.rfind("}\n") == dot.size() - 2);
    // without an error set, nothing is red
    CHECK(exportDot(a).find("fillcolor") == std::string::npos);
}

TEST_CASE("graphviz export of reachable plain automata") {
    const CsmAutomaton p = th::CsmBuilder("P")
                               .state("s0", {sig("a")}, true)
                               .state("s1")
                               .trans("s0", "s0", Formula::verum())
                               .trans("s0", "s1",
                                      Formula::atom(sig("a")) * Formula::atom(sig("e")))
                               .trans("s1", "s1", Formula::verum())
                               .build();
    const std::string dot = exportDot(reachabilityGraph(p));
    CHECK(dot.find("digraph \"P\" {") == 0);
    CHECK(dot.find("\"s0\" [peripheries=2];") != std::string::npos);
    CHECK(dot.find("\"s0\" -> \"s1\" [label=\"e\"];") != std::string::npos);
}
