#include "tcsm/formula.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <vector>

namespace tcsm {

namespace {

bool validSignalName(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
        return false;
    for (char c : name.substr(1)) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'')
            return false;
    }
    return true;
}

} // namespace

Signal Signal::make(const std::string& name) {
    if (!validSignalName(name))
        throw InvalidSignalName("invalid signal name: '" + name + "'");
    static std::mutex mu;
    static std::set<std::string> pool; // node-based, addresses are stable
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = pool.insert(name);
    (void)inserted;
    return Signal(&*it);
}

struct Formula::Node {
    Kind kind;
    std::optional<Signal> sig; // Atom only
    std::shared_ptr<const Node> l, r; // Not uses l
};

Formula Formula::falsum() {
    static const auto n = std::make_shared<const Node>(Node{Kind::False, {}, nullptr, nullptr});
    return Formula(n);
}

Formula Formula::verum() {
    static const auto n = std::make_shared<const Node>(Node{Kind::True, {}, nullptr, nullptr});
    return Formula(n);
}

Formula Formula::atom(Signal s) {
    return Formula(std::make_shared<const Node>(Node{Kind::Atom, s, nullptr, nullptr}));
}

Formula Formula::negation(Formula f) {
    switch (f.kind()) {
    case Kind::True: return falsum();
    case Kind::False: return verum();
    case Kind::Not: return Formula(f.node_->l);
    default:
        return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, f.node_, nullptr}));
    }
}

Formula Formula::conjunction(Formula a, Formula b) {
    if (a.kind() == Kind::False || b.kind() == Kind::False) return falsum();
    if (a.kind() == Kind::True) return b;
    if (b.kind() == Kind::True) return a;
    return Formula(std::make_shared<const Node>(Node{Kind::And, {}, a.node_, b.node_}));
}

Formula Formula::disjunction(Formula a, Formula b) {
    if (a.kind() == Kind::True || b.kind() == Kind::True) return verum();
    if (a.kind() == Kind::False) return b;
    if (b.kind() == Kind::False) return a;
    return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, a.node_, b.node_}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

Signal Formula::atomSignal() const { return *node_->sig; }

Formula Formula::child() const { return Formula(node_->l); }
Formula Formula::left() const { return Formula(node_->l); }
Formula Formula::right() const { return Formula(node_->r); }

namespace {

void collectSignals(const Formula& f, SignalSet& out) {
    switch (f.kind()) {
    case Formula::Kind::Atom:
        out.insert(f.atomSignal());
        break;
    case Formula::Kind::Not:
        collectSignals(f.child(), out);
        break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
        collectSignals(f.left(), out);
        collectSignals(f.right(), out);
        break;
    default:
        break;
    }
}

} // namespace

SignalSet Formula::signals() const {
    SignalSet s;
    collectSignals(*this, s);
    return s;
}

bool Formula::structurallyEquals(const Formula& o) const {
    if (node_ == o.node_) return true;
    if (kind() != o.kind()) return false;
    switch (kind()) {
    case Kind::False:
    case Kind::True:
        return true;
    case Kind::Atom:
        return atomSignal() == o.atomSignal();
    case Kind::Not:
        return child().structurallyEquals(o.child());
    case Kind::And:
    case Kind::Or:
        return left().structurallyEquals(o.left()) &&
               right().structurallyEquals(o.right());
    }
    return false;
}

namespace {

// Precedence: disjunction 1, conjunction 2, negation 3, leaves 4.
int precedence(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::Or: return 1;
    case Formula::Kind::And: return 2;
    case Formula::Kind::Not: return 3;
    default: return 4;
    }
}

void print(const Formula& f, int parent, std::string& out) {
    int prec = precedence(f.kind());
    bool wrap = prec < parent;
    if (wrap) out += '(';
    switch (f.kind()) {
    case Formula::Kind::False: out += '0'; break;
    case Formula::Kind::True: out += '1'; break;
    case Formula::Kind::Atom: out += f.atomSignal().name(); break;
    case Formula::Kind::Not:
        out += '-';
        print(f.child(), 3, out);
        break;
    case Formula::Kind::And:
        print(f.left(), 2, out);
        out += '*';
        print(f.right(), 2, out);
        break;
    case Formula::Kind::Or:
        print(f.left(), 1, out);
        out += '+';
        print(f.right(), 1, out);
        break;
    }
    if (wrap) out += ')';
}

} // namespace

std::string Formula::str() const {
    std::string out;
    print(*this, 0, out);
    return out;
}

namespace {

// Recursive-descent parser for the concrete syntax. Whitespace between
// tokens is ignored; conjunction must be written explicitly with '*'.
class FormulaParser {
public:
    explicit FormulaParser(const std::string& s) : s_(s) {}

    Formula run() {
        Formula f = expr();
        skipWs();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return f;
    }

private:
    Formula expr() {
        Formula f = term();
        while (peek() == '+') {
            ++pos_;
            f = Formula::disjunction(f, term());
        }
        return f;
    }

    Formula term() {
        Formula f = factor();
        while (peek() == '*') {
            ++pos_;
            f = Formula::conjunction(f, factor());
        }
        return f;
    }

    Formula factor() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return Formula::negation(factor());
        }
        if (c == '(') {
            ++pos_;
            Formula f = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return f;
        }
        if (c == '0') { ++pos_; return Formula::falsum(); }
        if (c == '1') { ++pos_; return Formula::verum(); }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                    s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            return Formula::atom(Signal::make(s_.substr(start, pos_ - start)));
        }
        if (c == '\0') fail("unexpected end of formula");
        fail("unexpected '" + std::string(1, c) + "'");
        return Formula::falsum(); // unreachable
    }

    char peek() {
        skipWs();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void skipWs() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(0, "formula '" + s_ + "': " + msg +
                                " at offset " + std::to_string(pos_));
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

Formula Formula::parse(const std::string& text) {
    return FormulaParser(text).run();
}

std::string signalSetStr(const SignalSet& s) {
    std::string out = "{";
    for (const Signal& x : s) {
        if (out.size() > 1) out += ", ";
        out += x.name();
    }
    return out + "}";
}

bool evalFormula(const Formula& w, const SignalSet& present) {
    switch (w.kind()) {
    case Formula::Kind::False: return false;
    case Formula::Kind::True: return true;
    case Formula::Kind::Atom: return present.count(w.atomSignal()) != 0;
    case Formula::Kind::Not: return !evalFormula(w.child(), present);
    case Formula::Kind::And:
        return evalFormula(w.left(), present) && evalFormula(w.right(), present);
    case Formula::Kind::Or:
        return evalFormula(w.left(), present) || evalFormula(w.right(), present);
    }
    return false;
}

Formula reduceFormula(const Formula& w, const SignalSet& xSet,
                      const SignalSet& outAlphabet) {
    switch (w.kind()) {
    case Formula::Kind::False:
    case Formula::Kind::True:
        return w;
    case Formula::Kind::Atom: {
        Signal s = w.atomSignal();
        if (xSet.count(s)) return Formula::verum();
        if (outAlphabet.count(s)) return Formula::falsum();
        return w;
    }
    case Formula::Kind::Not:
        return Formula::negation(reduceFormula(w.child(), xSet, outAlphabet));
    case Formula::Kind::And:
        return Formula::conjunction(reduceFormula(w.left(), xSet, outAlphabet),
                                    reduceFormula(w.right(), xSet, outAlphabet));
    case Formula::Kind::Or:
        return Formula::disjunction(reduceFormula(w.left(), xSet, outAlphabet),
                                    reduceFormula(w.right(), xSet, outAlphabet));
    }
    return w;
}

Formula outputFormula(const SignalSet& outS, const SignalSet& outAlphabet) {
    for (const Signal& s : outS) {
        if (!outAlphabet.count(s))
            throw OutSetNotInAlphabet("output set member '" + s.name() +
                                      "' is not in the output alphabet");
    }
    Formula f = Formula::verum();
    for (const Signal& s : outAlphabet) {
        Formula lit = outS.count(s) ? Formula::atom(s)
                                    : Formula::negation(Formula::atom(s));
        f = Formula::conjunction(f, lit);
    }
    return f;
}

namespace {

bool evalMask(const Formula& w, const std::map<Signal, int>& index,
              unsigned long mask) {
    switch (w.kind()) {
    case Formula::Kind::False: return false;
    case Formula::Kind::True: return true;
    case Formula::Kind::Atom:
        return (mask >> index.at(w.atomSignal())) & 1u;
    case Formula::Kind::Not: return !evalMask(w.child(), index, mask);
    case Formula::Kind::And:
        return evalMask(w.left(), index, mask) && evalMask(w.right(), index, mask);
    case Formula::Kind::Or:
        return evalMask(w.left(), index, mask) || evalMask(w.right(), index, mask);
    }
    return false;
}

std::map<Signal, int> atomIndex(const Formula& w, int atomCap) {
    SignalSet sig = w.signals();
    if (static_cast<int>(sig.size()) > atomCap)
        throw AtomCapExceeded("formula mentions " + std::to_string(sig.size()) +
                              " signals, cap is " + std::to_string(atomCap));
    std::map<Signal, int> index;
    int i = 0;
    for (const Signal& s : sig) index.emplace(s, i++);
    return index;
}

} // namespace

bool isUnsatisfiable(const Formula& w, int atomCap) {
    auto index = atomIndex(w, atomCap);
    unsigned long count = 1ul << index.size();
    for (unsigned long mask = 0; mask < count; ++mask)
        if (evalMask(w, index, mask)) return false;
    return true;
}

bool isTautology(const Formula& w, int atomCap) {
    return isUnsatisfiable(Formula::negation(w), atomCap);
}

std::optional<SignalSet> findSatisfying(const Formula& w, int atomCap) {
    auto index = atomIndex(w, atomCap);
    unsigned long count = 1ul << index.size();
    for (unsigned long mask = 0; mask < count; ++mask) {
        if (evalMask(w, index, mask)) {
            SignalSet set;
            for (const auto& [sig, bit] : index)
                if ((mask >> bit) & 1u) set.insert(sig);
            return set;
        }
    }
    return std::nullopt;
}

} // namespace tcsm
