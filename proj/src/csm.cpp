#include "tcsm/csm.hpp"

#include <algorithm>
#include <deque>

namespace tcsm {

int CsmAutomaton::stateIndex(const std::string& s) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == s) return static_cast<int>(i);
    return -1;
}

int CsmAutomaton::requireState(const std::string& s) const {
    int i = stateIndex(s);
    if (i < 0)
        throw UnknownState("automaton '" + name + "' has no state '" + s + "'");
    return i;
}

Formula CsmAutomaton::formula(int s, int t) const {
    auto it = form.find({s, t});
    return it == form.end() ? Formula::falsum() : it->second;
}

SignalSet CsmAutomaton::outAlphabet() const {
    SignalSet out;
    for (const SignalSet& o : outs) out.insert(o.begin(), o.end());
    return out;
}

SignalSet CsmAutomaton::inputAlphabet() const {
    SignalSet in;
    for (const auto& [pair, f] : form) {
        (void)pair;
        SignalSet s = f.signals();
        in.insert(s.begin(), s.end());
    }
    return in;
}

SignalSet CsmAutomaton::externalAlphabet() const {
    SignalSet ext = inputAlphabet();
    for (const Signal& s : outAlphabet()) ext.erase(s);
    return ext;
}

SignalSet CsmAutomaton::totalAlphabet() const {
    SignalSet all = outAlphabet();
    SignalSet in = inputAlphabet();
    all.insert(in.begin(), in.end());
    return all;
}

int CsmAutomaton::arity() const {
    if (states.empty()) return 0;
    return static_cast<int>(std::count(states[0].begin(), states[0].end(), '.')) + 1;
}

void validateCsm(const CsmAutomaton& p) {
    int n = static_cast<int>(p.states.size());
    if (n == 0) throw Error("automaton '" + p.name + "' has no states");
    if (p.init < 0 || p.init >= n)
        throw Error("automaton '" + p.name + "' lacks an initial state");
    if (p.outs.size() != p.states.size())
        throw Error("automaton '" + p.name + "' output table size mismatch");
    for (const auto& [pair, f] : p.form) {
        (void)f;
        if (pair.first < 0 || pair.first >= n || pair.second < 0 ||
            pair.second >= n)
            throw Error("automaton '" + p.name +
                        "' has a transition with a dangling endpoint");
    }
}

std::vector<CompletenessViolation> checkComplete(const CsmAutomaton& p,
                                                 int atomCap) {
    validateCsm(p);
    std::vector<CompletenessViolation> violations;
    for (size_t s = 0; s < p.states.size(); ++s) {
        Formula dis = Formula::falsum();
        for (const auto& [pair, f] : p.form)
            if (pair.first == static_cast<int>(s))
                dis = Formula::disjunction(dis, f);
        if (auto w = findSatisfying(Formula::negation(dis), atomCap))
            violations.push_back({p.states[s], *w});
    }
    return violations;
}

std::set<int> successorsOf(const CsmAutomaton& p, int s) {
    if (s < 0 || s >= static_cast<int>(p.states.size()))
        throw UnknownState("state index out of range in '" + p.name + "'");
    Formula alpha = outputFormula(p.outs[static_cast<size_t>(s)], p.outAlphabet());
    std::set<int> succ;
    for (const auto& [pair, f] : p.form) {
        if (pair.first != s) continue;
        if (!isUnsatisfiable(Formula::conjunction(f, alpha)))
            succ.insert(pair.second);
    }
    return succ;
}

std::set<int> successorsOf(const CsmAutomaton& p, const std::string& s) {
    return successorsOf(p, p.requireState(s));
}

CsmAutomaton productCsm(const std::vector<CsmAutomaton>& components) {
    if (components.empty())
        throw Error("product of zero automata");
    for (const CsmAutomaton& c : components) validateCsm(c);
    for (size_t i = 0; i < components.size(); ++i) {
        for (size_t j = i + 1; j < components.size(); ++j) {
            SignalSet a = components[i].outAlphabet();
            for (const Signal& s : components[j].outAlphabet()) {
                if (a.count(s))
                    throw OverlappingOutputs(
                        "signal '" + s.name() + "' is an output of both '" +
                        components[i].name + "' and '" + components[j].name + "'");
            }
        }
    }

    CsmAutomaton prod;
    {
        std::string n;
        for (const CsmAutomaton& c : components) {
            if (!n.empty()) n += '_';
            n += c.name;
        }
        prod.name = n;
    }

    size_t k = components.size();
    std::vector<size_t> sizes(k);
    size_t total = 1;
    for (size_t i = 0; i < k; ++i) {
        sizes[i] = components[i].states.size();
        total *= sizes[i];
    }
    // Tuple (i_1..i_k) maps to a row-major index with component 1 most
    // significant, which is exactly lexicographic tuple order.
    std::vector<int> tuple(k, 0);
    for (size_t row = 0; row < total; ++row) {
        std::string name;
        SignalSet out;
        for (size_t i = 0; i < k; ++i) {
            if (i) name += '.';
            name += components[i].states[static_cast<size_t>(tuple[i])];
            const SignalSet& o = components[i].outs[static_cast<size_t>(tuple[i])];
            out.insert(o.begin(), o.end());
        }
        prod.states.push_back(name);
        prod.outs.push_back(out);
        for (size_t i = k; i-- > 0;) {
            if (++tuple[i] < static_cast<int>(sizes[i])) break;
            tuple[i] = 0;
        }
    }
    {
        size_t row = 0;
        for (size_t i = 0; i < k; ++i)
            row = row * sizes[i] + static_cast<size_t>(components[i].init);
        prod.init = static_cast<int>(row);
    }

    auto decode = [&](size_t row) {
        std::vector<int> t(k);
        for (size_t i = k; i-- > 0;) {
            t[i] = static_cast<int>(row % sizes[i]);
            row /= sizes[i];
        }
        return t;
    };
    for (size_t a = 0; a < total; ++a) {
        std::vector<int> src = decode(a);
        for (size_t b = 0; b < total; ++b) {
            std::vector<int> dst = decode(b);
            Formula f = Formula::verum();
            bool viable = true;
            for (size_t i = 0; i < k && viable; ++i) {
                auto it = components[i].form.find({src[i], dst[i]});
                if (it == components[i].form.end()) {
                    viable = false;
                    break;
                }
                f = Formula::conjunction(f, it->second);
            }
            if (viable && f.kind() != Formula::Kind::False)
                prod.form[{static_cast<int>(a), static_cast<int>(b)}] = f;
        }
    }
    return prod;
}

ReachabilityGraph reachabilityGraph(const CsmAutomaton& p) {
    validateCsm(p);
    std::set<int> reachable{p.init};
    std::deque<int> frontier{p.init};
    while (!frontier.empty()) {
        int s = frontier.front();
        frontier.pop_front();
        for (int t : successorsOf(p, s))
            if (reachable.insert(t).second) frontier.push_back(t);
    }

    CsmAutomaton g;
    g.name = p.name;
    SignalSet outAlpha = p.outAlphabet();
    std::map<int, int> remap;
    for (size_t s = 0; s < p.states.size(); ++s) {
        if (!reachable.count(static_cast<int>(s))) continue;
        remap[static_cast<int>(s)] = static_cast<int>(g.states.size());
        g.states.push_back(p.states[s]);
        g.outs.push_back(p.outs[s]);
    }
    g.init = remap.at(p.init);
    for (int s : reachable) {
        std::set<int> succ = successorsOf(p, s);
        for (const auto& [pair, f] : p.form) {
            if (pair.first != s || !succ.count(pair.second)) continue;
            Formula reduced =
                reduceFormula(f, p.outs[static_cast<size_t>(s)], outAlpha);
            if (reduced.kind() == Formula::Kind::False) continue;
            g.form[{remap.at(s), remap.at(pair.second)}] = reduced;
        }
    }
    return ReachabilityGraph{std::move(g)};
}

} // namespace tcsm
