#include "doctest.h"
#include "test_helpers.hpp"

#include <tcsm/formula.hpp>

using namespace tcsm;
using th::sig;

namespace {

Formula fa() { return Formula::atom(sig("a")); }
Formula fb() { return Formula::atom(sig("b")); }
Formula fc() { return Formula::atom(sig("c")); }

// all subsets of `atoms`
std::vector<SignalSet> subsets(const std::vector<Signal>& atoms) {
    std::vector<SignalSet> out;
    for (unsigned m = 0; m < (1u << atoms.size()); ++m) {
        SignalSet s;
        for (size_t i = 0; i < atoms.size(); ++i)
            if (m & (1u << i)) s.insert(atoms[i]);
        out.push_back(s);
    }
    return out;
}

} // namespace

TEST_CASE("signal names are interned and validated") {
    CHECK(sig("a") == sig("a"));
    CHECK(sig("a") != sig("b"));
    CHECK(sig("x'") .name() == "x'");
    CHECK(sig("_tick9").name() == "_tick9");
    CHECK_THROWS_AS(Signal::make(""), InvalidSignalName);
    CHECK_THROWS_AS(Signal::make("9a"), InvalidSignalName);
    CHECK_THROWS_AS(Signal::make("a-b"), InvalidSignalName);
    CHECK_THROWS_AS(Signal::make("a b"), InvalidSignalName);
    CHECK_THROWS_AS(Signal::make("'a"), InvalidSignalName);
}

TEST_CASE("factories propagate constants") {
    const Formula T = Formula::verum(), F = Formula::falsum();
    CHECK((-T).kind() == Formula::Kind::False);
    CHECK((-F).kind() == Formula::Kind::True);
    CHECK((-(-fa())).structurallyEquals(fa()));
    CHECK((F * fa()).kind() == Formula::Kind::False);
    CHECK((fa() * F).kind() == Formula::Kind::False);
    CHECK((T * fa()).structurallyEquals(fa()));
    CHECK((fa() * T).structurallyEquals(fa()));
    CHECK((T + fa()).kind() == Formula::Kind::True);
    CHECK((fa() + T).kind() == Formula::Kind::True);
    CHECK((F + fa()).structurallyEquals(fa()));
    CHECK((fa() + F).structurallyEquals(fa()));
    // no further normalization: a*b keeps its shape and order
    CHECK_FALSE((fa() * fb()).structurallyEquals(fb() * fa()));
    CHECK(Formula().kind() == Formula::Kind::False);
}

TEST_CASE("accessors expose the tree") {
    const Formula w = fa() * fb() + -fc();
    REQUIRE(w.kind() == Formula::Kind::Or);
    REQUIRE(w.left().kind() == Formula::Kind::And);
    CHECK(w.left().left().atomSignal() == sig("a"));
    CHECK(w.left().right().atomSignal() == sig("b"));
    REQUIRE(w.right().kind() == Formula::Kind::Not);
    CHECK(w.right().child().atomSignal() == sig("c"));
    CHECK(w.signals() == SignalSet{sig("a"), sig("b"), sig("c")});
}

TEST_CASE("printing uses minimal parentheses") {
    CHECK((fa() * fb() + -fc()).str() == "a*b+-c");
    CHECK(((fa() + fb()) * fc()).str() == "(a+b)*c");
    CHECK((-(fa() * fb())).str() == "-(a*b)");
    CHECK((-(fa() + fb())).str() == "-(a+b)");
    CHECK((fa() * -fb()).str() == "a*-b");
    CHECK(Formula::verum().str() == "1");
    CHECK(Formula::falsum().str() == "0");
}

TEST_CASE("parsing agrees with printing") {
    for (const char* text : {"a*b+-c+d", "(a+b)*c", "-(a*b)", "a*-b", "0",
                             "1", "-a*-b", "a+b*c", "x'*_y9"}) {
        const Formula w = Formula::parse(text);
        CHECK(w.str() == text);
        CHECK(Formula::parse(w.str()).structurallyEquals(w));
    }
    // precedence: - binds over *, * over +
    const Formula w = Formula::parse("-a*b+c");
    REQUIRE(w.kind() == Formula::Kind::Or);
    CHECK(w.left().structurallyEquals(-fa() * fb()));
    // redundant parentheses vanish
    CHECK(Formula::parse("((a))*(b)").str() == "a*b");
    // constants propagate while parsing
    CHECK(Formula::parse("a*0").kind() == Formula::Kind::False);
    CHECK(Formula::parse("a+1").kind() == Formula::Kind::True);
}

TEST_CASE("parse rejects malformed input") {
    for (const char* text : {"", "a+", "*a", "(a", "a)", "a b", "a**b",
                             "2", "a-b", "()"}) {
        CHECK_THROWS_AS(Formula::parse(text), ParseError);
    }
}

TEST_CASE("evaluation matches the truth table") {
    const std::vector<Signal> atoms = {sig("a"), sig("b"), sig("c")};
    const Formula w = fa() * fb() + -fc();
    for (const SignalSet& p : subsets(atoms)) {
        const bool expect =
            (p.count(sig("a")) && p.count(sig("b"))) || !p.count(sig("c"));
        CHECK(evalFormula(w, p) == expect);
    }
    CHECK(evalFormula(Formula::verum(), {}));
    CHECK_FALSE(evalFormula(Formula::falsum(), {}));
    // occurrence of a signal the formula ignores changes nothing
    CHECK(evalFormula(fa(), SignalSet{sig("a"), sig("zz")}));
}

TEST_CASE("reduction rewrites generated atoms only") {
    const SignalSet outAlpha = {sig("a"), sig("c"), sig("d")};

    // the running example: reducing a*b+-c+d by {a,c} leaves exactly b
    const Formula w = Formula::parse("a*b+-c+d");
    const Formula r = reduceFormula(w, {sig("a"), sig("c")}, outAlpha);
    CHECK(r.structurallyEquals(fb()));

    // atoms outside the output alphabet survive untouched
    CHECK(reduceFormula(fb(), {}, outAlpha).structurallyEquals(fb()));
    // generated-and-present: swallowed by truth
    CHECK(reduceFormula(fa(), {sig("a")}, outAlpha).kind() ==
          Formula::Kind::True);
    // generated-but-absent: collapses to falsity
    CHECK(reduceFormula(fa(), {}, outAlpha).kind() == Formula::Kind::False);
    CHECK(reduceFormula(-fa(), {}, outAlpha).kind() == Formula::Kind::True);
}

TEST_CASE("reduction law over every valuation") {
    // eval(w reduced by X, P) == eval(w, (P minus OUT) union X) for every P:
    // the reduced formula no longer reacts to generated signals.
    std::mt19937 rng(20240811);
    const std::vector<Signal> atoms = {sig("a"), sig("b"), sig("c"),
                                       sig("d"), sig("e")};
    const SignalSet outAlpha = {sig("a"), sig("b"), sig("c")};
    for (int i = 0; i < 200; ++i) {
        const Formula w = th::randomFormula(rng, atoms, 3);
        SignalSet x;
        for (const Signal& s : outAlpha)
            if (th::chance(rng, 1, 2)) x.insert(s);
        const Formula r = reduceFormula(w, x, outAlpha);
        for (const SignalSet& p : subsets(atoms)) {
            SignalSet q;
            for (const Signal& s : p)
                if (!outAlpha.count(s)) q.insert(s);
            q.insert(x.begin(), x.end());
            CHECK(evalFormula(r, p) == evalFormula(w, q));
        }
        // and the reduced formula mentions no generated signal
        for (const Signal& s : r.signals()) CHECK_FALSE(outAlpha.count(s));
    }
}

TEST_CASE("output formulas characterize exact output sets") {
    const SignalSet outAlpha = {sig("a"), sig("b"), sig("c")};
    const std::vector<Signal> all = {sig("a"), sig("b"), sig("c"), sig("z")};
    for (const SignalSet& outS : subsets({sig("a"), sig("b"), sig("c")})) {
        const Formula alpha = outputFormula(outS, outAlpha);
        for (const SignalSet& p : subsets(all)) {
            SignalSet inter;
            for (const Signal& s : p)
                if (outAlpha.count(s)) inter.insert(s);
            CHECK(evalFormula(alpha, p) == (inter == outS));
        }
    }
    CHECK(outputFormula({sig("a")}, outAlpha).str() == "a*-b*-c");
    CHECK_THROWS_AS(outputFormula({sig("z")}, outAlpha), OutSetNotInAlphabet);
}

TEST_CASE("satisfiability decisions") {
    CHECK(isUnsatisfiable(fa() * -fa()));
    CHECK_FALSE(isUnsatisfiable(fa() * fb()));
    CHECK(isTautology(fa() + -fa()));
    CHECK_FALSE(isTautology(fa() + fb()));
    CHECK(isTautology(Formula::verum()));
    CHECK(isUnsatisfiable(Formula::falsum()));

    const auto m = findSatisfying(fa() * -fb());
    REQUIRE(m.has_value());
    CHECK(evalFormula(fa() * -fb(), *m));
    CHECK_FALSE(findSatisfying(fa() * -fa()).has_value());

    Formula wide = Formula::falsum();
    for (int i = 0; i < 25; ++i)
        wide = wide + Formula::atom(sig("s" + std::to_string(i)));
    CHECK_THROWS_AS(isUnsatisfiable(wide), AtomCapExceeded);
    CHECK_THROWS_AS(isTautology(wide, 10), AtomCapExceeded);
    CHECK_FALSE(isUnsatisfiable(wide, 25));
}

TEST_CASE("signal set rendering") {
    CHECK(signalSetStr({}) == "{}");
    CHECK(signalSetStr({sig("b"), sig("a")}) == "{a, b}");
}
