#include "tcsm/model_io.hpp"

#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>

namespace tcsm {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError(line, msg);
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::string cur;
    for (char c : line) {
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                toks.push_back(cur);
                cur.clear();
            }
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) toks.push_back(cur);
    return toks;
}

bool isNameChar(char c, bool first) {
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return true;
    if (first) return false;
    return std::isdigit(static_cast<unsigned char>(c)) || c == '\'';
}

// Simple names: signals and clocks.
bool isValidName(const std::string& s) {
    if (s.empty()) return false;
    for (size_t i = 0; i < s.size(); ++i)
        if (!isNameChar(s[i], i == 0)) return false;
    return true;
}

// State names additionally allow dots, joining composite state tuples.
bool isValidStateName(const std::string& s) {
    if (s.empty() || s.front() == '.' || s.back() == '.') return false;
    bool first = true;
    for (char c : s) {
        if (c == '.') {
            first = true;
            continue;
        }
        if (!isNameChar(c, first)) return false;
        first = false;
    }
    return true;
}

long long parseNat(const std::string& s, int line, const std::string& what) {
    if (s.empty()) fail(line, what + " expects a natural number");
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(line, what + " expects a natural number, got '" + s + "'");
    try {
        return std::stoll(s);
    } catch (const std::out_of_range&) {
        fail(line, what + " constant '" + s + "' is out of range");
    }
}

Signal makeSignal(const std::string& s, int line) {
    try {
        return Signal::make(s);
    } catch (const InvalidSignalName& e) {
        fail(line, e.what());
    }
}

// "x<=2&y<1" or "true"; tokens of a guard clause are glued before parsing,
// so "x <= 2 & y < 1" arrives here in the glued form too.
ClockConstraint parseGuardText(const std::string& text, int line) {
    if (text == "true") return ClockConstraint::always();
    std::vector<SimpleBound> bounds;
    size_t pos = 0;
    while (true) {
        size_t amp = text.find('&', pos);
        std::string part = text.substr(
            pos, amp == std::string::npos ? std::string::npos : amp - pos);
        size_t i = 0;
        while (i < part.size() && isNameChar(part[i], i == 0)) ++i;
        std::string clock = part.substr(0, i);
        if (clock.empty())
            fail(line, "guard conjunct '" + part + "' names no clock");
        BoundRel rel;
        if (part.compare(i, 2, "<=") == 0) {
            rel = BoundRel::Le;
            i += 2;
        } else if (part.compare(i, 2, ">=") == 0) {
            rel = BoundRel::Ge;
            i += 2;
        } else if (i < part.size() && part[i] == '<') {
            rel = BoundRel::Lt;
            i += 1;
        } else if (i < part.size() && part[i] == '>') {
            rel = BoundRel::Gt;
            i += 1;
        } else {
            fail(line, "guard conjunct '" + part +
                           "' needs one of < <= > >= after the clock");
        }
        long long c = parseNat(part.substr(i), line, "guard");
        bounds.push_back({clock, rel, c});
        if (amp == std::string::npos) break;
        pos = amp + 1;
    }
    return ClockConstraint(std::move(bounds));
}

struct StateRef {
    std::string name;
    std::string descriptor;
    bool hasDescriptor = false;
};

StateRef readStateRef(const std::vector<std::string>& toks, size_t& i,
                      int line) {
    if (i >= toks.size()) fail(line, "expected a state name");
    const std::string& t = toks[i++];
    size_t at = t.find('@');
    if (at == std::string::npos) return {t, "", false};
    StateRef ref{t.substr(0, at), t.substr(at + 1), true};
    // A region descriptor is four whitespace-free fields; the first rides
    // on the state token, the rest follow as three tokens of their own.
    for (int k = 0; k < 3; ++k) {
        if (i >= toks.size())
            fail(line,
                 "region descriptor needs the four fields ints= zero= order= "
                 "beyond=");
        ref.descriptor += ' ';
        ref.descriptor += toks[i++];
    }
    if (ref.name.empty()) fail(line, "state name before '@' is empty");
    return ref;
}

struct RawState {
    StateRef ref;
    bool init = false;
    std::vector<std::string> outputs;
    int line = 0;
};

struct RawTrans {
    StateRef src, dst;
    std::string formulaText;
    std::string guardText;
    bool hasGuard = false;
    std::vector<std::string> resets;
    int line = 0;
};

struct RawBlock {
    std::string name;
    int nameLine = 0;
    std::vector<std::pair<std::string, int>> clockToks;
    bool hasClocksLine = false;
    int clocksLine = 0;
    std::vector<std::string> outalpha;
    bool hasOutalpha = false;
    int outalphaLine = 0;
    std::vector<RawState> states;
    std::vector<RawTrans> trans;
};

bool isRegionBlock(const RawBlock& b) {
    if (b.hasOutalpha) return true;
    for (const auto& [tok, line] : b.clockToks) {
        (void)line;
        if (tok.find(':') != std::string::npos) return true;
    }
    for (const RawState& s : b.states)
        if (s.ref.hasDescriptor) return true;
    for (const RawTrans& t : b.trans)
        if (t.src.hasDescriptor || t.dst.hasDescriptor) return true;
    return false;
}

Formula parseTrigger(const std::string& text, int line) {
    try {
        return Formula::parse(text);
    } catch (const ParseError& pe) {
        fail(line, pe.what());
    }
}

TcsmAutomaton buildTcsmBlock(const RawBlock& b) {
    TcsmAutomaton p;
    p.name = b.name;
    for (const auto& [tok, line] : b.clockToks) {
        if (!isValidName(tok)) fail(line, "invalid clock name '" + tok + "'");
        for (const Clock& x : p.clocks)
            if (x == tok) fail(line, "duplicate clock '" + tok + "'");
        p.clocks.push_back(tok);
    }
    if (b.states.empty())
        fail(b.nameLine, "automaton '" + b.name + "' declares no states");
    int init = -1;
    for (const RawState& rs : b.states) {
        if (!isValidStateName(rs.ref.name))
            fail(rs.line, "invalid state name '" + rs.ref.name + "'");
        if (p.stateIndex(rs.ref.name) >= 0)
            fail(rs.line, "duplicate state '" + rs.ref.name + "'");
        p.states.push_back(rs.ref.name);
        SignalSet out;
        for (const std::string& o : rs.outputs) out.insert(makeSignal(o, rs.line));
        p.outs.push_back(out);
        if (rs.init) {
            if (init >= 0)
                fail(rs.line, "automaton '" + b.name +
                                  "' marks a second initial state");
            init = static_cast<int>(p.states.size()) - 1;
        }
    }
    if (init < 0)
        fail(b.nameLine, "automaton '" + b.name + "' marks no initial state");
    p.init = init;
    ClockSet declared(p.clocks.begin(), p.clocks.end());
    for (const RawTrans& rt : b.trans) {
        int s = p.stateIndex(rt.src.name);
        if (s < 0) fail(rt.line, "unknown state '" + rt.src.name + "'");
        int t = p.stateIndex(rt.dst.name);
        if (t < 0) fail(rt.line, "unknown state '" + rt.dst.name + "'");
        if (p.transitions.count({s, t}))
            fail(rt.line, "duplicate transition " + rt.src.name + " -> " +
                              rt.dst.name);
        Formula f = parseTrigger(rt.formulaText, rt.line);
        TimedTransition tt;
        if (rt.hasGuard) tt.guard = parseGuardText(rt.guardText, rt.line);
        for (const Clock& x : tt.guard.clocks())
            if (!declared.count(x))
                fail(rt.line, "unknown clock '" + x + "' in guard");
        for (const std::string& x : rt.resets) {
            if (!declared.count(x))
                fail(rt.line, "unknown clock '" + x + "' in reset");
            tt.resets.insert(x);
        }
        if (f.kind() == Formula::Kind::False) continue; // void transition
        tt.trigger = f;
        p.transitions[{s, t}] = std::move(tt);
    }
    validateTcsm(p);
    return p;
}

RcsmAutomaton buildRcsmBlock(const RawBlock& b) {
    RcsmAutomaton a;
    a.name = b.name;
    for (const auto& [tok, line] : b.clockToks) {
        size_t colon = tok.find(':');
        if (colon == std::string::npos)
            fail(line, "region automata annotate every clock with its bound, "
                       "like x:2");
        std::string name = tok.substr(0, colon);
        if (!isValidName(name)) fail(line, "invalid clock name '" + name + "'");
        for (const Clock& x : a.clocks)
            if (x == name) fail(line, "duplicate clock '" + name + "'");
        a.clocks.push_back(name);
        a.bounds[name] = parseNat(tok.substr(colon + 1), line, "clock bound");
    }
    if (b.states.empty())
        fail(b.nameLine, "automaton '" + b.name + "' declares no states");

    auto regionFor = [&](const StateRef& ref, int line) {
        if (!ref.hasDescriptor)
            fail(line, "region automata suffix every state with a region "
                       "descriptor, like name@ints= zero= order= beyond=");
        try {
            return parseRegionDescriptor(ref.descriptor, a.bounds);
        } catch (const Error& e) {
            fail(line, e.what());
        }
    };

    int init = -1;
    std::map<std::string, int> byKey;
    std::vector<int> stateLines;
    for (const RawState& rs : b.states) {
        if (!isValidStateName(rs.ref.name))
            fail(rs.line, "invalid state name '" + rs.ref.name + "'");
        RState st{rs.ref.name, regionFor(rs.ref, rs.line)};
        std::string key = st.key();
        if (byKey.count(key)) fail(rs.line, "duplicate region state " + key);
        byKey[key] = static_cast<int>(a.rstates.size());
        a.rstates.push_back(std::move(st));
        stateLines.push_back(rs.line);
        SignalSet out;
        for (const std::string& o : rs.outputs) out.insert(makeSignal(o, rs.line));
        a.outs.push_back(out);
        if (a.baseStateIndex(rs.ref.name) < 0)
            a.baseStates.push_back(rs.ref.name);
        if (rs.init) {
            if (init >= 0)
                fail(rs.line, "automaton '" + b.name +
                                  "' marks a second initial state");
            init = static_cast<int>(a.rstates.size()) - 1;
        }
    }
    if (init < 0)
        fail(b.nameLine, "automaton '" + b.name + "' marks no initial state");
    a.init = init;
    if (!(a.rstates[static_cast<size_t>(init)].region == zeroRegion(a.bounds)))
        fail(stateLines[static_cast<size_t>(init)],
             "the initial region state must sit in the all-zero region");

    for (const std::string& o : b.outalpha)
        a.outAlpha.insert(makeSignal(o, b.outalphaLine));
    for (const SignalSet& o : a.outs) a.outAlpha.insert(o.begin(), o.end());

    ClockSet declared = a.clockSet();
    for (const RawTrans& rt : b.trans) {
        if (rt.hasGuard)
            fail(rt.line, "region automata have no guards; timing is part of "
                          "the region states");
        std::string srcKey =
            rt.src.name + "@" + regionFor(rt.src, rt.line).key();
        auto si = byKey.find(srcKey);
        if (si == byKey.end())
            fail(rt.line, "unknown region state " + srcKey);
        std::string dstKey =
            rt.dst.name + "@" + regionFor(rt.dst, rt.line).key();
        auto di = byKey.find(dstKey);
        if (di == byKey.end())
            fail(rt.line, "unknown region state " + dstKey);
        if (a.transitions.count({si->second, di->second}))
            fail(rt.line, "duplicate transition " + srcKey + " -> " + dstKey);
        Formula f = parseTrigger(rt.formulaText, rt.line);
        RTransition t;
        t.kind = rt.src.name == rt.dst.name ? TransitionKind::Progress
                                            : TransitionKind::Action;
        for (const std::string& x : rt.resets) {
            if (!declared.count(x))
                fail(rt.line, "unknown clock '" + x + "' in reset");
            t.resets.insert(x);
        }
        if (f.kind() == Formula::Kind::False) continue; // void transition
        t.trigger = f;
        a.transitions[{si->second, di->second}] = std::move(t);
    }

    // Every listed region state must be reachable from the initial one.
    std::set<int> reached{a.init};
    std::deque<int> frontier{a.init};
    while (!frontier.empty()) {
        int u = frontier.front();
        frontier.pop_front();
        for (const auto& [pair, t] : a.transitions) {
            (void)t;
            if (pair.first == u && reached.insert(pair.second).second)
                frontier.push_back(pair.second);
        }
    }
    for (size_t i = 0; i < a.rstates.size(); ++i)
        if (!reached.count(static_cast<int>(i)))
            fail(stateLines[i], "region state " + a.rstates[i].key() +
                                    " is unreachable from the initial state");
    validateRcsm(a);
    return a;
}

} // namespace

ModelFile parseModel(const std::string& text, const std::string& sourceName) {
    std::vector<RawBlock> blocks;
    RawBlock* cur = nullptr;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::vector<std::string> toks = tokenize(line);
        if (toks.empty()) continue;
        if (!cur) {
            if (toks[0] != "automaton" || toks.size() != 2)
                fail(lineNo, "expected 'automaton NAME'");
            if (toks[1].find('@') != std::string::npos ||
                !isValidStateName(toks[1]))
                fail(lineNo, "invalid automaton name '" + toks[1] + "'");
            blocks.emplace_back();
            cur = &blocks.back();
            cur->name = toks[1];
            cur->nameLine = lineNo;
            continue;
        }
        const std::string& kw = toks[0];
        if (kw == "end") {
            if (toks.size() != 1) fail(lineNo, "'end' stands alone");
            cur = nullptr;
        } else if (kw == "clocks") {
            if (cur->hasClocksLine) fail(lineNo, "duplicate clocks line");
            if (toks.size() == 1) fail(lineNo, "clocks line lists no clocks");
            cur->hasClocksLine = true;
            cur->clocksLine = lineNo;
            for (size_t i = 1; i < toks.size(); ++i)
                cur->clockToks.push_back({toks[i], lineNo});
        } else if (kw == "outalpha") {
            if (cur->hasOutalpha) fail(lineNo, "duplicate outalpha line");
            if (toks.size() == 1)
                fail(lineNo, "outalpha line lists no signals");
            cur->hasOutalpha = true;
            cur->outalphaLine = lineNo;
            for (size_t i = 1; i < toks.size(); ++i)
                cur->outalpha.push_back(toks[i]);
        } else if (kw == "state") {
            size_t p = 1;
            RawState rs;
            rs.ref = readStateRef(toks, p, lineNo);
            rs.line = lineNo;
            if (p < toks.size() && toks[p] == "init") {
                rs.init = true;
                ++p;
            }
            if (p < toks.size() && toks[p] == "outputs") {
                ++p;
                if (p >= toks.size())
                    fail(lineNo, "'outputs' lists no signals");
                while (p < toks.size()) rs.outputs.push_back(toks[p++]);
            }
            if (p != toks.size())
                fail(lineNo, "unexpected token '" + toks[p] +
                                 "' on a state line");
            cur->states.push_back(std::move(rs));
        } else if (kw == "trans") {
            size_t p = 1;
            RawTrans rt;
            rt.line = lineNo;
            rt.src = readStateRef(toks, p, lineNo);
            if (p >= toks.size() || toks[p] != "->")
                fail(lineNo, "expected '->' after the source state");
            ++p;
            rt.dst = readStateRef(toks, p, lineNo);
            if (p >= toks.size() || toks[p] != "when")
                fail(lineNo, "expected 'when' after the target state");
            ++p;
            while (p < toks.size() && toks[p] != "guard" && toks[p] != "reset")
                rt.formulaText += toks[p++];
            if (rt.formulaText.empty())
                fail(lineNo, "'when' needs a trigger formula");
            if (p < toks.size() && toks[p] == "guard") {
                ++p;
                while (p < toks.size() && toks[p] != "reset")
                    rt.guardText += toks[p++];
                if (rt.guardText.empty())
                    fail(lineNo, "'guard' needs a clock constraint");
                rt.hasGuard = true;
            }
            if (p < toks.size() && toks[p] == "reset") {
                ++p;
                if (p >= toks.size()) fail(lineNo, "'reset' lists no clocks");
                while (p < toks.size()) rt.resets.push_back(toks[p++]);
            }
            cur->trans.push_back(std::move(rt));
        } else {
            fail(lineNo, "unexpected keyword '" + kw + "'");
        }
    }
    if (cur)
        fail(lineNo, "missing 'end' for automaton '" + cur->name + "'");
    if (blocks.empty()) fail(0, "input declares no automata");

    ModelFile m;
    m.name = sourceName;
    for (const RawBlock& b : blocks) {
        if (isRegionBlock(b))
            m.automata.emplace_back(buildRcsmBlock(b));
        else
            m.automata.emplace_back(buildTcsmBlock(b));
    }
    return m;
}

ModelFile loadModel(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << f.rdbuf();
    try {
        return parseModel(buf.str(), path);
    } catch (const ParseError& pe) {
        throw ParseError(pe.line, path + ":" + std::to_string(pe.line) + ": " +
                                      pe.what());
    }
}

namespace {

std::string stateLine(const std::string& name, bool init, const SignalSet& out,
                      const std::string& descriptor) {
    std::string s = "  state " + name;
    if (!descriptor.empty()) s += "@" + descriptor;
    if (init) s += " init";
    if (!out.empty()) {
        s += " outputs";
        for (const Signal& sig : out) s += " " + sig.name();
    }
    return s + "\n";
}

} // namespace

std::string serializeAutomaton(const CsmAutomaton& p) {
    std::string s = "automaton " + p.name + "\n";
    for (size_t i = 0; i < p.states.size(); ++i)
        s += stateLine(p.states[i], static_cast<int>(i) == p.init, p.outs[i],
                       "");
    for (const auto& [pair, f] : p.form) {
        s += "  trans " + p.states[static_cast<size_t>(pair.first)] + " -> " +
             p.states[static_cast<size_t>(pair.second)] + " when " + f.str() +
             "\n";
    }
    return s + "end\n";
}

std::string serializeAutomaton(const TcsmAutomaton& p) {
    std::string s = "automaton " + p.name + "\n";
    if (!p.clocks.empty()) {
        s += "  clocks";
        for (const Clock& x : p.clocks) s += " " + x;
        s += "\n";
    }
    for (size_t i = 0; i < p.states.size(); ++i)
        s += stateLine(p.states[i], static_cast<int>(i) == p.init, p.outs[i],
                       "");
    for (const auto& [pair, t] : p.transitions) {
        s += "  trans " + p.states[static_cast<size_t>(pair.first)] + " -> " +
             p.states[static_cast<size_t>(pair.second)] + " when " +
             t.trigger.str();
        if (!t.guard.unconstrained()) s += " guard " + t.guard.str();
        if (!t.resets.empty()) {
            s += " reset";
            for (const Clock& x : t.resets) s += " " + x;
        }
        s += "\n";
    }
    return s + "end\n";
}

std::string serializeAutomaton(const RcsmAutomaton& a) {
    std::string s = "automaton " + a.name + "\n";
    if (!a.clocks.empty()) {
        s += "  clocks";
        for (const Clock& x : a.clocks)
            s += " " + x + ":" + std::to_string(a.bounds.at(x));
        s += "\n";
    }
    if (!a.outAlpha.empty()) {
        s += "  outalpha";
        for (const Signal& sig : a.outAlpha) s += " " + sig.name();
        s += "\n";
    }
    for (size_t i = 0; i < a.rstates.size(); ++i)
        s += stateLine(a.rstates[i].state, static_cast<int>(i) == a.init,
                       a.outs[i], a.rstates[i].region.key());
    for (const auto& [pair, t] : a.transitions) {
        s += "  trans " + a.rstates[static_cast<size_t>(pair.first)].key() +
             " -> " + a.rstates[static_cast<size_t>(pair.second)].key() +
             " when " + t.trigger.str();
        if (!t.resets.empty()) {
            s += " reset";
            for (const Clock& x : t.resets) s += " " + x;
        }
        s += "\n";
    }
    return s + "end\n";
}

std::string serializeModel(const ModelFile& m) {
    std::string s;
    for (const auto& v : m.automata) {
        if (!s.empty()) s += "\n";
        s += std::visit([](const auto& a) { return serializeAutomaton(a); },
                        v);
    }
    return s;
}

std::string exportDot(const RcsmAutomaton& a,
                      const std::set<int>* errorStates) {
    std::string s = "digraph \"" + a.name + "\" {\n";
    s += "  rankdir=LR;\n";
    s += "  node [shape=ellipse];\n";
    for (size_t i = 0; i < a.rstates.size(); ++i) {
        const RState& rs = a.rstates[i];
        s += "  \"" + rs.key() + "\" [label=\"" + rs.state + "\\n" +
             rs.region.key() + "\"";
        if (static_cast<int>(i) == a.init) s += ", peripheries=2";
        if (errorStates && errorStates->count(static_cast<int>(i)))
            s += ", style=filled, fillcolor=red";
        s += "];\n";
    }
    for (const auto& [pair, t] : a.transitions) {
        std::string resets;
        for (const Clock& x : t.resets) {
            if (!resets.empty()) resets += ',';
            resets += x;
        }
        s += "  \"" + a.rstates[static_cast<size_t>(pair.first)].key() +
             "\" -> \"" + a.rstates[static_cast<size_t>(pair.second)].key() +
             "\" [label=\"" + t.trigger.str() + "/" + resets + "\"";
        if (t.kind == TransitionKind::Progress) s += ", style=dashed";
        s += "];\n";
    }
    return s + "}\n";
}

std::string exportDot(const ReachabilityGraph& g) {
    const CsmAutomaton& p = g.automaton;
    std::string s = "digraph \"" + p.name + "\" {\n";
    s += "  rankdir=LR;\n";
    s += "  node [shape=ellipse];\n";
    for (size_t i = 0; i < p.states.size(); ++i) {
        s += "  \"" + p.states[i] + "\"";
        if (static_cast<int>(i) == p.init) s += " [peripheries=2]";
        s += ";\n";
    }
    for (const auto& [pair, f] : p.form) {
        s += "  \"" + p.states[static_cast<size_t>(pair.first)] + "\" -> \"" +
             p.states[static_cast<size_t>(pair.second)] + "\" [label=\"" +
             f.str() + "\"];\n";
    }
    return s + "}\n";
}

} // namespace tcsm
