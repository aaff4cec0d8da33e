#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>

#include "tcsm/errors.hpp"

namespace tcsm {

// An interned signal name. Two Signal values with the same name share one
// string instance, so copies are cheap and comparisons are by name.
class Signal {
public:
    // Interns `name` and returns a handle. Names must match
    // [A-Za-z_][A-Za-z0-9_']*.
    static Signal make(const std::string& name);

    const std::string& name() const { return *name_; }

    bool operator==(const Signal& o) const { return name_ == o.name_; }
    bool operator!=(const Signal& o) const { return name_ != o.name_; }
    bool operator<(const Signal& o) const { return *name_ < *o.name_; }

private:
    explicit Signal(const std::string* n) : name_(n) {}
    const std::string* name_;
};

using SignalSet = std::set<Signal>;

// Immutable Boolean formula over signal occurrences. Nodes are shared, so
// copying a Formula is cheap. The factory functions propagate constants:
// negation flips constants and cancels double negation, conjunction and
// disjunction absorb their units and zeroes. No other normalization is
// applied; the tree otherwise keeps the shape it was built with.
class Formula {
public:
    enum class Kind { False, True, Atom, Not, And, Or };

    Formula() : Formula(falsum()) {}

    static Formula falsum();
    static Formula verum();
    static Formula atom(Signal s);
    static Formula negation(Formula f);
    static Formula conjunction(Formula a, Formula b);
    static Formula disjunction(Formula a, Formula b);

    Kind kind() const;
    // Requires kind() == Atom.
    Signal atomSignal() const;
    // Requires kind() == Not.
    Formula child() const;
    // Require kind() == And or Or.
    Formula left() const;
    Formula right() const;

    // The set of signals occurring in the formula.
    SignalSet signals() const;

    bool structurallyEquals(const Formula& o) const;

    // Concrete syntax: '+' disjunction, '*' conjunction, '-' negation,
    // '0'/'1' constants, parentheses only where precedence demands them.
    std::string str() const;
    static Formula parse(const std::string& text);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline Formula operator-(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator*(Formula a, Formula b) {
    return Formula::conjunction(std::move(a), std::move(b));
}
inline Formula operator+(Formula a, Formula b) {
    return Formula::disjunction(std::move(a), std::move(b));
}

// "{a, b}" rendering of a signal set.
std::string signalSetStr(const SignalSet& s);

// Evaluates `w` under the occurrence set `present`: an atom is true iff its
// signal is in `present`.
bool evalFormula(const Formula& w, const SignalSet& present);

// Reduction of `w` by the occurrence set `xSet` relative to `outAlphabet`:
// atoms in `xSet` become true, atoms in `outAlphabet` but not in `xSet`
// become false, all other atoms stay. Constants propagate through the
// rebuilt tree.
Formula reduceFormula(const Formula& w, const SignalSet& xSet,
                      const SignalSet& outAlphabet);

// The characteristic formula of emitting exactly `outS` out of
// `outAlphabet`: a conjunction asserting every signal of `outS` and denying
// every other signal of `outAlphabet`. Throws OutSetNotInAlphabet if
// outS is not a subset of outAlphabet.
Formula outputFormula(const SignalSet& outS, const SignalSet& outAlphabet);

// Exhaustive satisfiability tests over the formula's own atoms. Throws
// AtomCapExceeded when the formula mentions more than `atomCap` signals.
bool isUnsatisfiable(const Formula& w, int atomCap = 24);
bool isTautology(const Formula& w, int atomCap = 24);

// First satisfying occurrence set in subset-enumeration order, if any.
std::optional<SignalSet> findSatisfying(const Formula& w, int atomCap = 24);

} // namespace tcsm
