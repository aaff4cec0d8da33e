#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcsm/clock.hpp"
#include "tcsm/tcsm.hpp"

namespace tcsm {

// Progress transitions let time flow (the source keeps control of the
// step); action transitions switch the base state in zero time.
enum class TransitionKind { Progress, Action };

struct RState {
    std::string state; // base state name (dot-joined when composite)
    Region region;

    std::string key() const { return state + "@" + region.key(); }
    bool operator==(const RState&) const = default;
};

struct RTransition {
    Formula trigger = Formula::falsum(); // reduced to external signals
    ClockSet resets;
    TransitionKind kind = TransitionKind::Progress;
};

// The region automaton of a timed machine: states are (base state, clock
// region) pairs reachable from the initial all-zero configuration.
struct RcsmAutomaton {
    std::string name;
    std::vector<Clock> clocks; // declaration order
    ClockBounds bounds;
    std::vector<std::string> baseStates; // full base state list
    std::vector<RState> rstates;         // canonical order, see buildRcsm
    std::vector<SignalSet> outs;         // per rstate
    std::map<std::pair<int, int>, RTransition> transitions;
    int init = -1;
    // The output alphabet of the machine this automaton was built from.
    // Kept explicitly: outputs of unreachable base states still shape the
    // trigger reductions, so the union over `outs` may undershoot it.
    SignalSet outAlpha;

    int rstateIndex(const std::string& key) const;
    int requireRState(const std::string& key) const; // throws UnknownRState
    int baseStateIndex(const std::string& s) const;
    ClockSet clockSet() const;
    int arity() const;
};

void validateRcsm(const RcsmAutomaton& a);

struct BuildOptions {
    bool checkCompleteness = true;
    // Cap on constructed rstates; exceeding it throws RegionBudgetExceeded.
    long long maxRegions = 1'000'000;
    // Extra per-clock ceilings merged (by max) into the guard-derived ones.
    std::optional<ClockBounds> boundsOverride;
    int atomCap = 24;
};

// Region automaton construction. From each reachable (s, R):
//   - an ear (self-loop) whose guard agrees with R yields progress moves
//     to (s, R[λ:=0]) and, when different from R, to the λ-reset of R's
//     time successor — the machine may stay within R or ride time forward;
//   - every other transition whose guard agrees with R yields an action
//     move to (target, R[λ:=0]).
// Triggers are reduced by the source's outputs against the machine's full
// output alphabet; transitions whose reduced trigger is unsatisfiable are
// dropped and do not make their target reachable. States are ordered by
// (base state declaration index, region descriptor).
RcsmAutomaton buildRcsm(const TcsmAutomaton& p, const BuildOptions& opts = {});

// Successors of rstate `i` through satisfiable transitions (the trigger
// conjoined with the source's output formula).
std::set<int> regionSuccessors(const RcsmAutomaton& a, int i);

// Terminal strongly connected components none of whose internal transitions
// is a progress move: once entered, the system can neither leave nor let
// time pass. Each trap is reported as its ascending rstate index list;
// traps are ordered by their smallest member.
std::vector<std::vector<int>> zeroTimeTraps(const RcsmAutomaton& a);

// The region over the `keep` clocks obtained by forgetting all others.
Region projectRegion(const Region& r, const ClockSet& keep);

// Synchronous product of region automata sharing no outputs and no clocks.
// A product move selects one outgoing transition per component from the
// component rstate matching the projected region; all-progress selections
// keep the base tuple (staying in the region or riding time forward, as in
// buildRcsm), any action makes the joint move an action. Reset sets union,
// triggers conjoin and are reduced by the joint source's outputs against
// the joint output alphabet.
RcsmAutomaton productRcsm(const std::vector<RcsmAutomaton>& components,
                          const BuildOptions& opts = {});

// Structural equality up to trigger logic: same clocks, bounds and output
// alphabet (else IncomparableAlphabets), same rstate keys, outputs and
// initial key, and for each transition pair the same kind and resets with
// logically equivalent triggers. On mismatch, stores a reason in *whyNot.
bool canonicalCompare(const RcsmAutomaton& a, const RcsmAutomaton& b,
                      std::string* whyNot = nullptr);

} // namespace tcsm
