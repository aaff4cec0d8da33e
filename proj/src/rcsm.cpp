#include "tcsm/rcsm.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace tcsm {

int RcsmAutomaton::rstateIndex(const std::string& key) const {
    for (size_t i = 0; i < rstates.size(); ++i)
        if (rstates[i].key() == key) return static_cast<int>(i);
    return -1;
}

int RcsmAutomaton::requireRState(const std::string& key) const {
    int i = rstateIndex(key);
    if (i < 0)
        throw UnknownRState("automaton '" + name + "' has no region state '" +
                            key + "'");
    return i;
}

int RcsmAutomaton::baseStateIndex(const std::string& s) const {
    for (size_t i = 0; i < baseStates.size(); ++i)
        if (baseStates[i] == s) return static_cast<int>(i);
    return -1;
}

ClockSet RcsmAutomaton::clockSet() const {
    return ClockSet(clocks.begin(), clocks.end());
}

int RcsmAutomaton::arity() const {
    if (baseStates.empty()) return 0;
    return static_cast<int>(
               std::count(baseStates[0].begin(), baseStates[0].end(), '.')) +
           1;
}

void validateRcsm(const RcsmAutomaton& a) {
    int n = static_cast<int>(a.rstates.size());
    if (n == 0) throw Error("automaton '" + a.name + "' has no region states");
    if (a.init < 0 || a.init >= n)
        throw Error("automaton '" + a.name + "' lacks an initial region state");
    if (a.outs.size() != a.rstates.size())
        throw Error("automaton '" + a.name + "' output table size mismatch");
    ClockSet declared = a.clockSet();
    if (declared.size() != a.clocks.size())
        throw Error("automaton '" + a.name + "' declares a clock twice");
    {
        ClockSet bounded;
        for (const auto& [x, c] : a.bounds) {
            (void)c;
            bounded.insert(x);
        }
        if (bounded != declared)
            throw Error("automaton '" + a.name +
                        "' clock bounds do not cover exactly its clocks");
    }
    std::set<std::string> keys;
    for (const RState& rs : a.rstates) {
        if (a.baseStateIndex(rs.state) < 0)
            throw Error("automaton '" + a.name + "' region state '" + rs.key() +
                        "' names an unknown base state");
        if (rs.region.bounds != a.bounds)
            throw Error("automaton '" + a.name + "' region state '" + rs.key() +
                        "' carries foreign clock bounds");
        validateRegion(rs.region);
        if (!keys.insert(rs.key()).second)
            throw Error("automaton '" + a.name + "' repeats region state '" +
                        rs.key() + "'");
    }
    for (const SignalSet& o : a.outs)
        for (const Signal& s : o)
            if (!a.outAlpha.count(s))
                throw Error("automaton '" + a.name + "' emits '" + s.name() +
                            "' outside its output alphabet");
    for (const auto& [pair, t] : a.transitions) {
        if (pair.first < 0 || pair.first >= n || pair.second < 0 ||
            pair.second >= n)
            throw Error("automaton '" + a.name +
                        "' has a transition with a dangling endpoint");
        for (const Clock& x : t.resets)
            if (!declared.count(x))
                throw UnknownClock("reset in '" + a.name +
                                   "' mentions undeclared clock '" + x + "'");
    }
}

namespace {

// Inserts src->dst, merging with an already recorded transition. Merges may
// only differ in trigger (joined by disjunction); diverging kinds or resets
// indicate a construction bug.
void addRTransition(std::map<std::pair<int, int>, RTransition>& trans, int src,
                    int dst, const Formula& trigger, const ClockSet& resets,
                    TransitionKind kind) {
    auto [it, inserted] =
        trans.try_emplace({src, dst}, RTransition{trigger, resets, kind});
    if (inserted) return;
    RTransition& have = it->second;
    if (have.kind != kind)
        throw Error("internal: region transition rebuilt with a different kind");
    if (have.resets != resets)
        throw Error(
            "internal: region transition rebuilt with different resets");
    if (!have.trigger.structurallyEquals(trigger))
        have.trigger = Formula::disjunction(have.trigger, trigger);
}

} // namespace

RcsmAutomaton buildRcsm(const TcsmAutomaton& p, const BuildOptions& opts) {
    validateTcsm(p);
    if (opts.checkCompleteness) {
        std::vector<TimedCompletenessViolation> bad =
            checkTimedComplete(p, opts.atomCap);
        if (!bad.empty())
            throw IncompleteModel(
                "automaton '" + p.name + "' is not transition-complete: state '" +
                bad[0].state + "' in region " + bad[0].regionKey +
                " accepts no transition under " + signalSetStr(bad[0].witness));
    }

    ClockBounds bounds = p.guardBounds();
    if (opts.boundsOverride) {
        for (const auto& [x, c] : *opts.boundsOverride) {
            auto it = bounds.find(x);
            if (it == bounds.end())
                throw UnknownClock("bounds override names undeclared clock '" +
                                   x + "'");
            it->second = std::max(it->second, c);
        }
    }

    SignalSet outAlpha = p.outAlphabet();

    std::vector<RState> built;
    std::vector<int> baseOf;
    std::map<std::string, int> index;
    std::deque<int> frontier;
    std::map<std::pair<int, int>, RTransition> trans;

    auto intern = [&](int base, const Region& r) {
        RState rs{p.states[static_cast<size_t>(base)], r};
        std::string k = rs.key();
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        if (static_cast<long long>(built.size()) >= opts.maxRegions)
            throw RegionBudgetExceeded(
                "automaton '" + p.name + "' exceeds the region budget of " +
                std::to_string(opts.maxRegions) + " region states");
        int i = static_cast<int>(built.size());
        built.push_back(std::move(rs));
        baseOf.push_back(base);
        index.emplace(std::move(k), i);
        frontier.push_back(i);
        return i;
    };

    intern(p.init, zeroRegion(bounds));
    while (!frontier.empty()) {
        int cur = frontier.front();
        frontier.pop_front();
        int s = baseOf[static_cast<size_t>(cur)];
        Region R = built[static_cast<size_t>(cur)].region; // copy: built grows

        if (const TimedTransition* ear = p.transition(s, s);
            ear && constraintAgrees(ear->guard, R)) {
            Formula trig =
                reduceFormula(ear->trigger, p.outs[static_cast<size_t>(s)], outAlpha);
            if (!isUnsatisfiable(trig, opts.atomCap)) {
                // Stay within the region while time flows inside it.
                Region stay = resetRegion(R, ear->resets);
                addRTransition(trans, cur, intern(s, stay), trig, ear->resets,
                               TransitionKind::Progress);
                // Ride time across the region border.
                Region advance = resetRegion(timeSuccessor(R), ear->resets);
                if (!(advance == R))
                    addRTransition(trans, cur, intern(s, advance), trig,
                                   ear->resets, TransitionKind::Progress);
            }
        }
        for (const auto& [pair, t] : p.transitions) {
            if (pair.first != s || pair.second == s) continue;
            if (!constraintAgrees(t.guard, R)) continue;
            Formula trig =
                reduceFormula(t.trigger, p.outs[static_cast<size_t>(s)], outAlpha);
            if (isUnsatisfiable(trig, opts.atomCap)) continue;
            addRTransition(trans, cur, intern(pair.second, resetRegion(R, t.resets)),
                           trig, t.resets, TransitionKind::Action);
        }
    }

    // Canonical order: base state declaration index, then region descriptor.
    std::vector<int> order(built.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        size_t ux = static_cast<size_t>(x), uy = static_cast<size_t>(y);
        if (baseOf[ux] != baseOf[uy]) return baseOf[ux] < baseOf[uy];
        return built[ux].region.key() < built[uy].region.key();
    });
    std::vector<int> pos(built.size());
    for (size_t i = 0; i < order.size(); ++i)
        pos[static_cast<size_t>(order[i])] = static_cast<int>(i);

    RcsmAutomaton a;
    a.name = p.name;
    a.clocks = p.clocks;
    a.bounds = bounds;
    a.baseStates = p.states;
    a.outAlpha = outAlpha;
    for (int idx : order) {
        a.rstates.push_back(built[static_cast<size_t>(idx)]);
        a.outs.push_back(p.outs[static_cast<size_t>(baseOf[static_cast<size_t>(idx)])]);
    }
    a.init = pos[0];
    for (const auto& [pair, t] : trans)
        a.transitions[{pos[static_cast<size_t>(pair.first)],
                       pos[static_cast<size_t>(pair.second)]}] = t;
    return a;
}

std::set<int> regionSuccessors(const RcsmAutomaton& a, int i) {
    if (i < 0 || i >= static_cast<int>(a.rstates.size()))
        throw UnknownRState("region state index out of range in '" + a.name +
                            "'");
    Formula alpha = outputFormula(a.outs[static_cast<size_t>(i)], a.outAlpha);
    std::set<int> succ;
    for (const auto& [pair, t] : a.transitions) {
        if (pair.first != i) continue;
        if (!isUnsatisfiable(Formula::conjunction(t.trigger, alpha)))
            succ.insert(pair.second);
    }
    return succ;
}

std::vector<std::vector<int>> zeroTimeTraps(const RcsmAutomaton& a) {
    validateRcsm(a);
    size_t n = a.rstates.size();
    std::vector<std::vector<int>> adj(n);
    for (const auto& [pair, t] : a.transitions) {
        (void)t;
        adj[static_cast<size_t>(pair.first)].push_back(pair.second);
    }

    // Tarjan, iterative. Map iteration above makes adjacency ascending, so
    // component discovery order is deterministic.
    std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stk;
    std::vector<bool> onstk(n, false);
    int counter = 0, ncomp = 0;
    for (size_t root = 0; root < n; ++root) {
        if (num[root] != -1) continue;
        std::vector<std::pair<int, size_t>> dfs{{static_cast<int>(root), 0}};
        while (!dfs.empty()) {
            int u = dfs.back().first;
            size_t ui = static_cast<size_t>(u);
            if (num[ui] == -1) {
                num[ui] = low[ui] = counter++;
                stk.push_back(u);
                onstk[ui] = true;
            }
            if (dfs.back().second < adj[ui].size()) {
                int v = adj[ui][dfs.back().second++];
                size_t vi = static_cast<size_t>(v);
                if (num[vi] == -1)
                    dfs.push_back({v, 0});
                else if (onstk[vi])
                    low[ui] = std::min(low[ui], num[vi]);
            } else {
                if (low[ui] == num[ui]) {
                    while (true) {
                        int w = stk.back();
                        stk.pop_back();
                        onstk[static_cast<size_t>(w)] = false;
                        comp[static_cast<size_t>(w)] = ncomp;
                        if (w == u) break;
                    }
                    ++ncomp;
                }
                dfs.pop_back();
                if (!dfs.empty()) {
                    size_t pi = static_cast<size_t>(dfs.back().first);
                    low[pi] = std::min(low[pi], low[ui]);
                }
            }
        }
    }

    std::vector<std::vector<int>> members(static_cast<size_t>(ncomp));
    for (size_t i = 0; i < n; ++i)
        members[static_cast<size_t>(comp[i])].push_back(static_cast<int>(i));
    std::vector<bool> terminal(static_cast<size_t>(ncomp), true);
    std::vector<bool> allAction(static_cast<size_t>(ncomp), true);
    for (const auto& [pair, t] : a.transitions) {
        size_t c = static_cast<size_t>(comp[static_cast<size_t>(pair.first)]);
        if (comp[static_cast<size_t>(pair.second)] != static_cast<int>(c))
            terminal[c] = false;
        else if (t.kind != TransitionKind::Action)
            allAction[c] = false;
    }

    std::vector<std::vector<int>> traps;
    for (size_t c = 0; c < static_cast<size_t>(ncomp); ++c)
        if (terminal[c] && allAction[c]) traps.push_back(members[c]);
    std::sort(traps.begin(), traps.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) {
                  return x.front() < y.front();
              });
    return traps;
}

Region projectRegion(const Region& r, const ClockSet& keep) {
    for (const Clock& x : keep)
        if (!r.bounds.count(x))
            throw UnknownClock("projection keeps clock '" + x +
                               "' that the region does not know");
    Region q;
    for (const auto& [x, c] : r.bounds)
        if (keep.count(x)) q.bounds[x] = c;
    for (const auto& [x, i] : r.ints)
        if (keep.count(x)) q.ints[x] = i;
    for (const Clock& x : r.beyond)
        if (keep.count(x)) q.beyond.insert(x);
    for (const Clock& x : r.zero)
        if (keep.count(x)) q.zero.insert(x);
    for (const ClockSet& cls : r.fracs) {
        ClockSet kept;
        for (const Clock& x : cls)
            if (keep.count(x)) kept.insert(x);
        if (!kept.empty()) q.fracs.push_back(std::move(kept));
    }
    return q;
}

RcsmAutomaton productRcsm(const std::vector<RcsmAutomaton>& components,
                          const BuildOptions& opts) {
    if (components.empty()) throw Error("product of zero automata");
    for (const RcsmAutomaton& c : components) validateRcsm(c);
    size_t k = components.size();
    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            for (const Signal& s : components[j].outAlpha)
                if (components[i].outAlpha.count(s))
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

    RcsmAutomaton prod;
    for (const RcsmAutomaton& c : components) {
        if (!prod.name.empty()) prod.name += '_';
        prod.name += c.name;
        prod.clocks.insert(prod.clocks.end(), c.clocks.begin(), c.clocks.end());
        prod.bounds.insert(c.bounds.begin(), c.bounds.end());
        prod.outAlpha.insert(c.outAlpha.begin(), c.outAlpha.end());
    }

    std::vector<size_t> sizes(k);
    size_t total = 1;
    for (size_t i = 0; i < k; ++i) {
        sizes[i] = components[i].baseStates.size();
        total *= sizes[i];
    }
    {
        std::vector<int> tuple(k, 0);
        for (size_t row = 0; row < total; ++row) {
            std::string name;
            for (size_t i = 0; i < k; ++i) {
                if (i) name += '.';
                name += components[i].baseStates[static_cast<size_t>(tuple[i])];
            }
            prod.baseStates.push_back(name);
            for (size_t i = k; i-- > 0;) {
                if (++tuple[i] < static_cast<int>(sizes[i])) break;
                tuple[i] = 0;
            }
        }
    }
    auto rowOf = [&](const std::vector<int>& tuple) {
        size_t row = 0;
        for (size_t i = 0; i < k; ++i)
            row = row * sizes[i] + static_cast<size_t>(tuple[i]);
        return row;
    };

    std::vector<std::map<std::string, int>> rsIndex(k);
    std::vector<ClockSet> compClocks(k);
    // Outgoing component transitions per component rstate, ascending target.
    std::vector<std::vector<std::vector<std::pair<int, const RTransition*>>>>
        outgoing(k);
    for (size_t i = 0; i < k; ++i) {
        compClocks[i] = components[i].clockSet();
        for (size_t j = 0; j < components[i].rstates.size(); ++j)
            rsIndex[i][components[i].rstates[j].key()] = static_cast<int>(j);
        outgoing[i].resize(components[i].rstates.size());
        for (const auto& [pair, t] : components[i].transitions)
            outgoing[i][static_cast<size_t>(pair.first)].push_back(
                {pair.second, &t});
    }

    struct NodeInfo {
        std::vector<int> tuple;   // component base state indices
        std::vector<int> compRs;  // component rstate indices
    };
    std::vector<RState> built;
    std::vector<SignalSet> builtOuts;
    std::vector<NodeInfo> info;
    std::map<std::string, int> index;
    std::deque<int> frontier;
    std::map<std::pair<int, int>, RTransition> trans;

    auto intern = [&](const std::vector<int>& tuple, const Region& R) {
        RState rs{prod.baseStates[rowOf(tuple)], R};
        std::string key = rs.key();
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (static_cast<long long>(built.size()) >= opts.maxRegions)
            throw RegionBudgetExceeded(
                "product '" + prod.name + "' exceeds the region budget of " +
                std::to_string(opts.maxRegions) + " region states");
        NodeInfo ni{tuple, std::vector<int>(k)};
        SignalSet out;
        for (size_t i = 0; i < k; ++i) {
            const std::string& base =
                components[i].baseStates[static_cast<size_t>(tuple[i])];
            std::string compKey =
                base + "@" + projectRegion(R, compClocks[i]).key();
            auto hit = rsIndex[i].find(compKey);
            if (hit == rsIndex[i].end())
                throw Error("internal: component '" + components[i].name +
                            "' lacks region state '" + compKey +
                            "' required by the product");
            ni.compRs[i] = hit->second;
            const SignalSet& o =
                components[i].outs[static_cast<size_t>(hit->second)];
            out.insert(o.begin(), o.end());
        }
        int idx = static_cast<int>(built.size());
        built.push_back(std::move(rs));
        builtOuts.push_back(std::move(out));
        info.push_back(std::move(ni));
        index.emplace(std::move(key), idx);
        frontier.push_back(idx);
        return idx;
    };

    {
        std::vector<int> initTuple(k);
        for (size_t i = 0; i < k; ++i) {
            const RState& irs =
                components[i].rstates[static_cast<size_t>(components[i].init)];
            initTuple[i] = components[i].baseStateIndex(irs.state);
        }
        intern(initTuple, zeroRegion(prod.bounds));
    }

    while (!frontier.empty()) {
        int cur = frontier.front();
        frontier.pop_front();
        // Copies: `built`/`info` grow while we expand.
        Region R = built[static_cast<size_t>(cur)].region;
        SignalSet srcOut = builtOuts[static_cast<size_t>(cur)];
        NodeInfo ni = info[static_cast<size_t>(cur)];

        bool anyEmpty = false;
        for (size_t i = 0; i < k; ++i)
            if (outgoing[i][static_cast<size_t>(ni.compRs[i])].empty())
                anyEmpty = true;
        if (anyEmpty) continue;

        std::vector<size_t> sel(k, 0);
        while (true) {
            Formula trig = Formula::verum();
            ClockSet resets;
            bool allProgress = true;
            for (size_t i = 0; i < k; ++i) {
                const auto& [dst, t] =
                    outgoing[i][static_cast<size_t>(ni.compRs[i])][sel[i]];
                (void)dst;
                trig = Formula::conjunction(trig, t->trigger);
                resets.insert(t->resets.begin(), t->resets.end());
                if (t->kind != TransitionKind::Progress) allProgress = false;
            }
            trig = reduceFormula(trig, srcOut, prod.outAlpha);
            if (!isUnsatisfiable(trig, opts.atomCap)) {
                if (allProgress) {
                    Region stay = resetRegion(R, resets);
                    addRTransition(trans, cur, intern(ni.tuple, stay), trig,
                                   resets, TransitionKind::Progress);
                    Region advance = resetRegion(timeSuccessor(R), resets);
                    if (!(advance == R))
                        addRTransition(trans, cur, intern(ni.tuple, advance),
                                       trig, resets, TransitionKind::Progress);
                } else {
                    std::vector<int> moved = ni.tuple;
                    for (size_t i = 0; i < k; ++i) {
                        const auto& [dst, t] =
                            outgoing[i][static_cast<size_t>(ni.compRs[i])][sel[i]];
                        if (t->kind != TransitionKind::Action) continue;
                        const RState& target =
                            components[i].rstates[static_cast<size_t>(dst)];
                        moved[i] = components[i].baseStateIndex(target.state);
                    }
                    addRTransition(trans, cur,
                                   intern(moved, resetRegion(R, resets)), trig,
                                   resets, TransitionKind::Action);
                }
            }
            size_t pos = k;
            while (pos-- > 0) {
                if (++sel[pos] <
                    outgoing[pos][static_cast<size_t>(ni.compRs[pos])].size())
                    break;
                sel[pos] = 0;
                if (pos == 0) {
                    pos = k; // signal exhaustion
                    break;
                }
            }
            if (pos == k) break;
        }
    }

    // Canonical order: base tuple (row-major), then region descriptor.
    std::vector<int> order(built.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        size_t ux = static_cast<size_t>(x), uy = static_cast<size_t>(y);
        size_t rx = rowOf(info[ux].tuple), ry = rowOf(info[uy].tuple);
        if (rx != ry) return rx < ry;
        return built[ux].region.key() < built[uy].region.key();
    });
    std::vector<int> pos(built.size());
    for (size_t i = 0; i < order.size(); ++i)
        pos[static_cast<size_t>(order[i])] = static_cast<int>(i);
    for (int idx : order) {
        prod.rstates.push_back(built[static_cast<size_t>(idx)]);
        prod.outs.push_back(builtOuts[static_cast<size_t>(idx)]);
    }
    prod.init = pos[0];
    for (const auto& [pair, t] : trans)
        prod.transitions[{pos[static_cast<size_t>(pair.first)],
                          pos[static_cast<size_t>(pair.second)]}] = t;
    return prod;
}

bool canonicalCompare(const RcsmAutomaton& a, const RcsmAutomaton& b,
                      std::string* whyNot) {
    auto fail = [&](const std::string& why) {
        if (whyNot) *whyNot = why;
        return false;
    };
    if (a.clockSet() != b.clockSet())
        throw IncomparableAlphabets("'" + a.name + "' and '" + b.name +
                                    "' declare different clocks");
    if (a.bounds != b.bounds)
        throw IncomparableAlphabets("'" + a.name + "' and '" + b.name +
                                    "' use different clock bounds");
    if (a.outAlpha != b.outAlpha)
        throw IncomparableAlphabets("'" + a.name + "' and '" + b.name +
                                    "' have different output alphabets");

    std::map<std::string, int> ka, kb;
    for (size_t i = 0; i < a.rstates.size(); ++i)
        ka[a.rstates[i].key()] = static_cast<int>(i);
    for (size_t i = 0; i < b.rstates.size(); ++i)
        kb[b.rstates[i].key()] = static_cast<int>(i);
    for (const auto& [key, i] : ka) {
        (void)i;
        if (!kb.count(key))
            return fail("only '" + a.name + "' has region state " + key);
    }
    for (const auto& [key, i] : kb) {
        (void)i;
        if (!ka.count(key))
            return fail("only '" + b.name + "' has region state " + key);
    }
    if (a.rstates[static_cast<size_t>(a.init)].key() !=
        b.rstates[static_cast<size_t>(b.init)].key())
        return fail("initial region states differ: " +
                    a.rstates[static_cast<size_t>(a.init)].key() + " vs " +
                    b.rstates[static_cast<size_t>(b.init)].key());
    for (const auto& [key, i] : ka) {
        if (a.outs[static_cast<size_t>(i)] !=
            b.outs[static_cast<size_t>(kb.at(key))])
            return fail("outputs differ at " + key);
    }

    using Edge = std::pair<std::string, std::string>;
    std::map<Edge, const RTransition*> ta, tb;
    for (const auto& [pair, t] : a.transitions)
        ta[{a.rstates[static_cast<size_t>(pair.first)].key(),
            a.rstates[static_cast<size_t>(pair.second)].key()}] = &t;
    for (const auto& [pair, t] : b.transitions)
        tb[{b.rstates[static_cast<size_t>(pair.first)].key(),
            b.rstates[static_cast<size_t>(pair.second)].key()}] = &t;
    for (const auto& [e, t] : ta) {
        (void)t;
        if (!tb.count(e))
            return fail("only '" + a.name + "' has transition " + e.first +
                        " -> " + e.second);
    }
    for (const auto& [e, t] : tb) {
        (void)t;
        if (!ta.count(e))
            return fail("only '" + b.name + "' has transition " + e.first +
                        " -> " + e.second);
    }
    for (const auto& [e, x] : ta) {
        const RTransition* y = tb.at(e);
        if (x->kind != y->kind)
            return fail("kinds differ on " + e.first + " -> " + e.second);
        if (x->resets != y->resets)
            return fail("resets differ on " + e.first + " -> " + e.second);
        Formula odd = Formula::disjunction(
            Formula::conjunction(x->trigger, Formula::negation(y->trigger)),
            Formula::conjunction(Formula::negation(x->trigger), y->trigger));
        if (!isUnsatisfiable(odd))
            return fail("triggers differ on " + e.first + " -> " + e.second +
                        ": " + x->trigger.str() + " vs " + y->trigger.str());
    }
    return true;
}

} // namespace tcsm
