#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcsm/formula.hpp"

namespace tcsm {

// A concurrent state machine: states generate signal sets, transitions are
// triggered by formulas over signal occurrences. Absent entries of `form`
// are void transitions (trigger 0). State tuples arising from products are
// flattened into dot-joined names, so `arity` counts the dot parts.
struct CsmAutomaton {
    std::string name;
    std::vector<std::string> states; // declaration order
    std::vector<SignalSet> outs;     // per state
    std::map<std::pair<int, int>, Formula> form;
    int init = -1;

    int stateIndex(const std::string& s) const;
    int requireState(const std::string& s) const; // throws UnknownState
    Formula formula(int s, int t) const;          // stored or 0

    SignalSet outAlphabet() const;      // union of state outputs
    SignalSet inputAlphabet() const;    // signals mentioned by triggers
    SignalSet externalAlphabet() const; // inputs minus outputs
    SignalSet totalAlphabet() const;

    int arity() const;
};

// Throws if the automaton is structurally broken (bad init, dangling
// transition endpoints, output/state size mismatch).
void validateCsm(const CsmAutomaton& p);

struct CompletenessViolation {
    std::string state;
    SignalSet witness; // occurrence set under which no trigger fires
};

// Transition-completeness: for every state the disjunction of outgoing
// triggers must be a tautology. Returns one violation per failing state.
std::vector<CompletenessViolation> checkComplete(const CsmAutomaton& p,
                                                 int atomCap = 24);

// States reachable from `s` in one step: target t qualifies iff the trigger
// conjoined with the source's output formula is satisfiable.
std::set<int> successorsOf(const CsmAutomaton& p, int s);
std::set<int> successorsOf(const CsmAutomaton& p, const std::string& s);

// Synchronous product. Output alphabets must be pairwise disjoint; the full
// Cartesian state set is retained and composite triggers are conjunctions,
// so a pair lacking a transition in any component stays void.
CsmAutomaton productCsm(const std::vector<CsmAutomaton>& components);

// The automaton restricted to states reachable through satisfiable
// transitions, with each trigger reduced by its source's output set.
struct ReachabilityGraph {
    CsmAutomaton automaton;
};

ReachabilityGraph reachabilityGraph(const CsmAutomaton& p);

} // namespace tcsm
