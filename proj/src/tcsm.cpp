#include "tcsm/tcsm.hpp"

#include <algorithm>

namespace tcsm {

int TcsmAutomaton::stateIndex(const std::string& s) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == s) return static_cast<int>(i);
    return -1;
}

int TcsmAutomaton::requireState(const std::string& s) const {
    int i = stateIndex(s);
    if (i < 0)
        throw UnknownState("automaton '" + name + "' has no state '" + s + "'");
    return i;
}

const TimedTransition* TcsmAutomaton::transition(int s, int t) const {
    auto it = transitions.find({s, t});
    return it == transitions.end() ? nullptr : &it->second;
}

SignalSet TcsmAutomaton::outAlphabet() const {
    SignalSet out;
    for (const SignalSet& o : outs) out.insert(o.begin(), o.end());
    return out;
}

ClockSet TcsmAutomaton::clockSet() const {
    return ClockSet(clocks.begin(), clocks.end());
}

ClockBounds TcsmAutomaton::guardBounds() const {
    ClockBounds bounds;
    for (const Clock& x : clocks) bounds[x] = 0;
    for (const auto& [pair, t] : transitions) {
        (void)pair;
        for (const SimpleBound& b : t.guard.conjuncts())
            bounds[b.clock] = std::max(bounds[b.clock], b.constant);
    }
    return bounds;
}

int TcsmAutomaton::arity() const {
    if (states.empty()) return 0;
    return static_cast<int>(std::count(states[0].begin(), states[0].end(), '.')) + 1;
}

void validateTcsm(const TcsmAutomaton& p) {
    int n = static_cast<int>(p.states.size());
    if (n == 0) throw Error("automaton '" + p.name + "' has no states");
    if (p.init < 0 || p.init >= n)
        throw Error("automaton '" + p.name + "' lacks an initial state");
    if (p.outs.size() != p.states.size())
        throw Error("automaton '" + p.name + "' output table size mismatch");
    ClockSet declared = p.clockSet();
    if (declared.size() != p.clocks.size())
        throw Error("automaton '" + p.name + "' declares a clock twice");
    for (const auto& [pair, t] : p.transitions) {
        if (pair.first < 0 || pair.first >= n || pair.second < 0 ||
            pair.second >= n)
            throw Error("automaton '" + p.name +
                        "' has a transition with a dangling endpoint");
        for (const Clock& x : t.guard.clocks())
            if (!declared.count(x))
                throw UnknownClock("guard in '" + p.name +
                                   "' mentions undeclared clock '" + x + "'");
        for (const Clock& x : t.resets)
            if (!declared.count(x))
                throw UnknownClock("reset in '" + p.name +
                                   "' mentions undeclared clock '" + x + "'");
    }
}

std::vector<TimedCompletenessViolation> checkTimedComplete(
    const TcsmAutomaton& p, int atomCap) {
    validateTcsm(p);
    std::vector<TimedCompletenessViolation> violations;
    std::vector<Region> regions = enumerateRegions(p.guardBounds());
    for (size_t s = 0; s < p.states.size(); ++s) {
        for (const Region& r : regions) {
            Formula dis = Formula::falsum();
            for (const auto& [pair, t] : p.transitions) {
                if (pair.first != static_cast<int>(s)) continue;
                if (constraintAgrees(t.guard, r))
                    dis = Formula::disjunction(dis, t.trigger);
            }
            if (auto w = findSatisfying(Formula::negation(dis), atomCap))
                violations.push_back({p.states[s], r.key(), *w});
        }
    }
    return violations;
}

TcsmAutomaton productTcsm(const std::vector<TcsmAutomaton>& components) {
    if (components.empty())
        throw Error("product of zero automata");
    for (const TcsmAutomaton& c : components) validateTcsm(c);
    for (size_t i = 0; i < components.size(); ++i) {
        for (size_t j = i + 1; j < components.size(); ++j) {
            SignalSet a = components[i].outAlphabet();
            for (const Signal& s : components[j].outAlphabet())
                if (a.count(s))
                    throw OverlappingOutputs(
                        "signal '" + s.name() + "' is an output of both '" +
                        components[i].name + "' and '" + components[j].name + "'");
            ClockSet ci = components[i].clockSet();
            for (const Clock& x : components[j].clocks)
                if (ci.count(x))
                    throw OverlappingClocks(
                        "clock '" + x + "' is declared by both '" +
                        components[i].name + "' and '" + components[j].name + "'");
        }
    }

    TcsmAutomaton prod;
    {
        std::string n;
        for (const TcsmAutomaton& c : components) {
            if (!n.empty()) n += '_';
            n += c.name;
        }
        prod.name = n;
    }
    for (const TcsmAutomaton& c : components)
        prod.clocks.insert(prod.clocks.end(), c.clocks.begin(), c.clocks.end());

    size_t k = components.size();
    std::vector<size_t> sizes(k);
    size_t total = 1;
    for (size_t i = 0; i < k; ++i) {
        sizes[i] = components[i].states.size();
        total *= sizes[i];
    }
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
            TimedTransition joint;
            joint.trigger = Formula::verum();
            joint.guard = ClockConstraint::always();
            bool viable = true;
            for (size_t i = 0; i < k; ++i) {
                const TimedTransition* t = components[i].transition(src[i], dst[i]);
                if (!t) {
                    viable = false;
                    break;
                }
                joint.trigger = Formula::conjunction(joint.trigger, t->trigger);
                joint.guard = joint.guard.conjoin(t->guard);
                joint.resets.insert(t->resets.begin(), t->resets.end());
            }
            if (viable && joint.trigger.kind() != Formula::Kind::False)
                prod.transitions[{static_cast<int>(a), static_cast<int>(b)}] =
                    std::move(joint);
        }
    }
    return prod;
}

CsmAutomaton toCsm(const TcsmAutomaton& p) {
    validateTcsm(p);
    if (!p.clocks.empty())
        throw Error("automaton '" + p.name +
                    "' declares clocks; it has no plain-state form");
    CsmAutomaton q;
    q.name = p.name;
    q.states = p.states;
    q.outs = p.outs;
    q.init = p.init;
    for (const auto& [pair, t] : p.transitions) {
        if (!t.guard.conjuncts().empty() || !t.resets.empty())
            throw Error("automaton '" + p.name +
                        "' uses guards or resets; it has no plain-state form");
        q.form[pair] = t.trigger;
    }
    return q;
}

} // namespace tcsm
