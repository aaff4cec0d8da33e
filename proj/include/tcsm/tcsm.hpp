#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tcsm/clock.hpp"
#include "tcsm/csm.hpp"
#include "tcsm/formula.hpp"

namespace tcsm {

// One timed transition: fires when its trigger holds, provided the guard
// admits the current clock values; the listed clocks restart from zero.
struct TimedTransition {
    Formula trigger = Formula::falsum();
    ClockConstraint guard; // unconstrained == no timing restriction
    ClockSet resets;
};

struct TcsmAutomaton {
    std::string name;
    std::vector<std::string> states;
    std::vector<Clock> clocks; // declaration order
    std::vector<SignalSet> outs;
    // At most one transition per (src,dst) pair.
    std::map<std::pair<int, int>, TimedTransition> transitions;
    int init = -1;

    int stateIndex(const std::string& s) const;
    int requireState(const std::string& s) const;
    const TimedTransition* transition(int s, int t) const;
    SignalSet outAlphabet() const;
    ClockSet clockSet() const;
    // Largest constant each clock is compared against (0 if never compared).
    ClockBounds guardBounds() const;
    int arity() const;
};

void validateTcsm(const TcsmAutomaton& p);

struct TimedCompletenessViolation {
    std::string state;
    std::string regionKey;
    SignalSet witness; // signal set no transition accepts there
};

// A state must have some enabled transition for every input, in every clock
// region its guards distinguish.
std::vector<TimedCompletenessViolation> checkTimedComplete(
    const TcsmAutomaton& p, int atomCap = 24);

TcsmAutomaton productTcsm(const std::vector<TcsmAutomaton>& components);

// Only valid for automata without clocks; guards/resets must be trivial.
CsmAutomaton toCsm(const TcsmAutomaton& p);

} // namespace tcsm
