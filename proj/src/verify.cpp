#include "tcsm/verify.hpp"

#include <algorithm>
#include <deque>

namespace tcsm {

namespace {

std::vector<std::string> dotParts(const std::string& name) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

void attachSignal(TcsmAutomaton& p, const std::string& state, Signal s) {
    int i = p.requireState(state);
    p.outs[static_cast<size_t>(i)].insert(s);
}

std::set<int> errorRStates(const RcsmAutomaton& product, int testArity,
                           const std::set<std::string>& errorStates) {
    std::set<int> bad;
    for (size_t i = 0; i < product.rstates.size(); ++i) {
        std::vector<std::string> parts = dotParts(product.rstates[i].state);
        if (static_cast<int>(parts.size()) < testArity) continue;
        std::string tail;
        for (size_t j = parts.size() - static_cast<size_t>(testArity);
             j < parts.size(); ++j) {
            if (!tail.empty()) tail += '.';
            tail += parts[j];
        }
        if (errorStates.count(tail)) bad.insert(static_cast<int>(i));
    }
    return bad;
}

SafetyVerdict checkSafety(const RcsmAutomaton& system,
                          const RcsmAutomaton& test,
                          const std::set<std::string>& errorStates,
                          const BuildOptions& opts) {
    for (const std::string& e : errorStates)
        if (test.baseStateIndex(e) < 0)
            throw UnknownErrorState("test automaton '" + test.name +
                                    "' has no state '" + e + "'");

    SafetyVerdict v;
    v.product = productRcsm({system, test}, opts);
    v.explored = static_cast<long long>(v.product.rstates.size());
    std::set<int> bad = errorRStates(v.product, test.arity(), errorStates);
    if (bad.empty()) {
        v.holds = true;
        return v;
    }

    size_t n = v.product.rstates.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [pair, t] : v.product.transitions) {
        (void)t;
        adj[static_cast<size_t>(pair.first)].push_back(pair.second);
    }
    std::vector<int> parent(n, -2);
    parent[static_cast<size_t>(v.product.init)] = -1;
    int found = bad.count(v.product.init) ? v.product.init : -1;
    std::deque<int> queue{v.product.init};
    while (found < 0 && !queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : adj[static_cast<size_t>(u)]) {
            if (parent[static_cast<size_t>(w)] != -2) continue;
            parent[static_cast<size_t>(w)] = u;
            if (bad.count(w)) {
                found = w;
                break;
            }
            queue.push_back(w);
        }
    }
    if (found < 0)
        throw Error("internal: error state listed but not reachable in '" +
                    v.product.name + "'");
    for (int u = found; u != -1; u = parent[static_cast<size_t>(u)])
        v.witness.push_back(u);
    std::reverse(v.witness.begin(), v.witness.end());
    return v;
}

std::string rstateLabel(const RcsmAutomaton& a, int i) {
    const RState& rs = a.rstates[static_cast<size_t>(i)];
    std::string label = "(";
    bool first = true;
    for (const std::string& part : dotParts(rs.state)) {
        if (!first) label += ',';
        label += part;
        first = false;
    }
    return label + ")@" + rs.region.key();
}

std::vector<std::string> renderWitness(const SafetyVerdict& v) {
    std::vector<std::string> lines;
    for (size_t k = 1; k < v.witness.size(); ++k) {
        int a = v.witness[k - 1], b = v.witness[k];
        const RTransition& t = v.product.transitions.at({a, b});
        std::string resets;
        for (const Clock& x : t.resets) {
            if (!resets.empty()) resets += ',';
            resets += x;
        }
        lines.push_back(
            "STEP " + std::to_string(k) + ": " + rstateLabel(v.product, a) +
            " --" +
            (t.kind == TransitionKind::Action ? "action" : "progress") + "[" +
            t.trigger.str() + "/" + resets + "]--> " +
            rstateLabel(v.product, b));
    }
    return lines;
}

SignalSet externalSignals(const RcsmAutomaton& a) {
    SignalSet ext;
    for (const auto& [pair, t] : a.transitions) {
        (void)pair;
        for (const Signal& s : t.trigger.signals())
            if (!a.outAlpha.count(s)) ext.insert(s);
    }
    return ext;
}

std::set<int> simulateStep(const RcsmAutomaton& a, int rs,
                           const SignalSet& external) {
    if (rs < 0 || rs >= static_cast<int>(a.rstates.size()))
        throw UnknownRState("region state index out of range in '" + a.name +
                            "'");
    SignalSet allowed = externalSignals(a);
    for (const Signal& s : external)
        if (!allowed.count(s))
            throw NonExternalSignal("signal '" + s.name() +
                                    "' is not an external input of '" + a.name +
                                    "'");
    SignalSet present = external;
    const SignalSet& own = a.outs[static_cast<size_t>(rs)];
    present.insert(own.begin(), own.end());
    std::set<int> succ;
    for (const auto& [pair, t] : a.transitions)
        if (pair.first == rs && evalFormula(t.trigger, present))
            succ.insert(pair.second);
    return succ;
}

} // namespace tcsm
