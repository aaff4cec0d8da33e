#pragma once

#include <set>
#include <string>
#include <vector>

#include "tcsm/rcsm.hpp"

namespace tcsm {

// Adds `s` to the output set of `state`, making that state observable to a
// test automaton watching for `s`.
void attachSignal(TcsmAutomaton& p, const std::string& state, Signal s);

struct SafetyVerdict {
    bool holds = false;
    RcsmAutomaton product; // product of system and test
    // Product rstate indices from the initial state to the first error
    // state on a shortest path; empty when the property holds.
    std::vector<int> witness;
    long long explored = 0; // product rstates constructed
};

// Indices of product rstates whose test component — the last `testArity`
// dot-parts of the base name — is one of `errorStates`.
std::set<int> errorRStates(const RcsmAutomaton& product, int testArity,
                           const std::set<std::string>& errorStates);

// Safety check by observer composition: builds the region product of system
// and test and searches it for a reachable error state of the test. The
// witness is a shortest path, tie-broken by exploring transitions in
// ascending index order. Throws UnknownErrorState if `errorStates` names a
// state the test automaton does not have.
SafetyVerdict checkSafety(const RcsmAutomaton& system,
                          const RcsmAutomaton& test,
                          const std::set<std::string>& errorStates,
                          const BuildOptions& opts = {});

// "(part,part)@regiondescriptor" rendering of one rstate.
std::string rstateLabel(const RcsmAutomaton& a, int i);

// One "STEP k: ... --kind[trigger/resets]--> ..." line per witness step.
std::vector<std::string> renderWitness(const SafetyVerdict& v);

// Signals mentioned by triggers that the automaton does not emit itself.
SignalSet externalSignals(const RcsmAutomaton& a);

// Successor rstates enabled when exactly the signals of `external` are
// supplied from outside. Throws NonExternalSignal if `external` strays
// outside externalSignals(a).
std::set<int> simulateStep(const RcsmAutomaton& a, int rs,
                           const SignalSet& external);

} // namespace tcsm
