#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tcsm/csm.hpp"
#include "tcsm/rcsm.hpp"
#include "tcsm/tcsm.hpp"

namespace tcsm {

// A model file holds one or more automata. Timed automata use plain state
// names; region automata carry a region descriptor on every state and
// annotate clocks with their bounds.
struct ModelFile {
    std::string name; // source label for diagnostics
    std::vector<std::variant<TcsmAutomaton, RcsmAutomaton>> automata;
};

ModelFile parseModel(const std::string& text,
                     const std::string& sourceName = "<input>");

// Reads and parses `path`. Parse diagnostics are prefixed "path:line:".
ModelFile loadModel(const std::string& path);

// Text forms that parseModel reads back. Reparsing a serialized automaton
// and serializing again reproduces the bytes exactly.
std::string serializeAutomaton(const CsmAutomaton& p);
std::string serializeAutomaton(const TcsmAutomaton& p);
std::string serializeAutomaton(const RcsmAutomaton& a);
std::string serializeModel(const ModelFile& m);

// Graphviz rendering: nodes show "STATE\nregion", the initial state gets a
// double border, progress edges are dashed, action edges solid, and the
// rstates in `errorStates` (when given) are filled red.
std::string exportDot(const RcsmAutomaton& a,
                      const std::set<int>* errorStates = nullptr);
std::string exportDot(const ReachabilityGraph& g);

} // namespace tcsm
