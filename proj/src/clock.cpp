#include "tcsm/clock.hpp"

#include <algorithm>
#include <sstream>

namespace tcsm {

namespace {

std::string joinClocks(const ClockSet& cs) {
    std::string out;
    for (const Clock& c : cs) {
        if (!out.empty()) out += ',';
        out += c;
    }
    return out;
}

long long floorRat(const Rat& v) {
    // Values are nonnegative throughout, so truncation is flooring.
    return v.numerator() / v.denominator();
}

} // namespace

ClockConstraint::ClockConstraint(std::vector<SimpleBound> conjuncts)
    : conjuncts_(std::move(conjuncts)) {
    std::sort(conjuncts_.begin(), conjuncts_.end());
    conjuncts_.erase(std::unique(conjuncts_.begin(), conjuncts_.end()),
                     conjuncts_.end());
}

ClockConstraint ClockConstraint::conjoin(const ClockConstraint& other) const {
    std::vector<SimpleBound> all = conjuncts_;
    all.insert(all.end(), other.conjuncts_.begin(), other.conjuncts_.end());
    return ClockConstraint(std::move(all));
}

ClockSet ClockConstraint::clocks() const {
    ClockSet cs;
    for (const SimpleBound& b : conjuncts_) cs.insert(b.clock);
    return cs;
}

std::string ClockConstraint::str() const {
    if (conjuncts_.empty()) return "true";
    std::string out;
    for (const SimpleBound& b : conjuncts_) {
        if (!out.empty()) out += " & ";
        out += b.clock;
        switch (b.rel) {
        case BoundRel::Lt: out += " < "; break;
        case BoundRel::Le: out += " <= "; break;
        case BoundRel::Gt: out += " > "; break;
        case BoundRel::Ge: out += " >= "; break;
        }
        out += std::to_string(b.constant);
    }
    return out;
}

bool evalConstraint(const ClockConstraint& pi, const ClockValuation& nu) {
    for (const SimpleBound& b : pi.conjuncts()) {
        auto it = nu.find(b.clock);
        if (it == nu.end())
            throw UnknownClock("constraint mentions clock '" + b.clock +
                               "' absent from the valuation");
        Rat v = it->second;
        Rat c(b.constant);
        bool ok = false;
        switch (b.rel) {
        case BoundRel::Lt: ok = v < c; break;
        case BoundRel::Le: ok = v <= c; break;
        case BoundRel::Gt: ok = v > c; break;
        case BoundRel::Ge: ok = v >= c; break;
        }
        if (!ok) return false;
    }
    return true;
}

ClockValuation valuationTransform(const ClockValuation& nu, const Rat& delta,
                                  const ClockSet& resets) {
    if (delta < Rat(0))
        throw NegativeDelta("time advance must be nonnegative");
    for (const Clock& c : resets) {
        if (!nu.count(c))
            throw UnknownClock("reset of clock '" + c +
                               "' absent from the valuation");
    }
    ClockValuation out;
    for (const auto& [c, v] : nu)
        out[c] = resets.count(c) ? Rat(0) : v + delta;
    return out;
}

ClockSet Region::clocks() const {
    ClockSet cs;
    for (const auto& [c, b] : bounds) {
        (void)b;
        cs.insert(c);
    }
    return cs;
}

std::string Region::key() const {
    std::string out = "ints=";
    bool first = true;
    for (const auto& [c, i] : ints) {
        if (!first) out += ',';
        first = false;
        out += c + ':' + std::to_string(i);
    }
    out += " zero=" + joinClocks(zero);
    out += " order=";
    for (const ClockSet& cls : fracs) out += '(' + joinClocks(cls) + ')';
    out += " beyond=" + joinClocks(beyond);
    return out;
}

void validateRegion(const Region& r) {
    ClockSet all = r.clocks();
    ClockSet seen;
    auto claim = [&](const Clock& c) {
        if (!all.count(c))
            throw Error("region names unknown clock '" + c + "'");
        if (!seen.insert(c).second)
            throw Error("clock '" + c + "' placed twice in region");
    };
    for (const Clock& c : r.beyond) claim(c);
    for (const Clock& c : r.zero) claim(c);
    for (const ClockSet& cls : r.fracs) {
        if (cls.empty()) throw Error("region has an empty fractional class");
        for (const Clock& c : cls) claim(c);
    }
    if (seen != all) throw Error("region does not place every clock");
    for (const auto& [c, i] : r.ints) {
        if (r.beyond.count(c))
            throw Error("beyond clock '" + c + "' has an integral part");
        if (i < 0 || i > r.bounds.at(c))
            throw Error("integral part of '" + c + "' out of range");
    }
    for (const Clock& c : all) {
        if (!r.beyond.count(c) && !r.ints.count(c))
            throw Error("clock '" + c + "' lacks an integral part");
    }
    for (const ClockSet& cls : r.fracs)
        for (const Clock& c : cls)
            if (r.ints.at(c) >= r.bounds.at(c))
                throw Error("fractional clock '" + c + "' at its bound");
}

Region regionOf(const ClockValuation& nu, const ClockBounds& bounds) {
    if (nu.size() != bounds.size())
        throw UnknownClock("valuation and bounds disagree on the clock set");
    Region r;
    r.bounds = bounds;
    std::map<Rat, ClockSet> byFrac;
    for (const auto& [c, v] : nu) {
        auto it = bounds.find(c);
        if (it == bounds.end())
            throw UnknownClock("valuation clock '" + c + "' has no bound");
        if (v < Rat(0)) throw Error("negative clock value for '" + c + "'");
        if (v > Rat(it->second)) {
            r.beyond.insert(c);
            continue;
        }
        long long i = floorRat(v);
        r.ints[c] = i;
        Rat frac = v - Rat(i);
        if (frac == Rat(0))
            r.zero.insert(c);
        else
            byFrac[frac].insert(c);
    }
    for (auto it = byFrac.rbegin(); it != byFrac.rend(); ++it)
        r.fracs.push_back(it->second);
    return r;
}

Region zeroRegion(const ClockBounds& bounds) {
    Region r;
    r.bounds = bounds;
    for (const auto& [c, b] : bounds) {
        (void)b;
        r.ints[c] = 0;
        r.zero.insert(c);
    }
    return r;
}

ClockValuation representative(const Region& r) {
    ClockValuation nu;
    long long m = static_cast<long long>(r.fracs.size());
    for (const Clock& c : r.zero) nu[c] = Rat(r.ints.at(c));
    for (long long k = 0; k < m; ++k) {
        Rat frac(m - k, m + 1); // class 0 is the greatest fractional part
        for (const Clock& c : r.fracs[static_cast<size_t>(k)])
            nu[c] = Rat(r.ints.at(c)) + frac;
    }
    for (const Clock& c : r.beyond) nu[c] = Rat(r.bounds.at(c) + 1);
    return nu;
}

Region timeSuccessor(const Region& r) {
    if (r.beyond.size() == r.bounds.size()) return r;
    Region s = r;
    if (!r.zero.empty()) {
        // Clocks on an integer boundary start growing fractions; those
        // already at their bound cross it instead.
        ClockSet newClass;
        for (const Clock& c : r.zero) {
            if (s.ints.at(c) == s.bounds.at(c)) {
                s.beyond.insert(c);
                s.ints.erase(c);
            } else {
                newClass.insert(c);
            }
        }
        s.zero.clear();
        if (!newClass.empty()) s.fracs.push_back(newClass); // smallest fraction
    } else {
        // The greatest fractional class reaches the next integer.
        ClockSet g = s.fracs.front();
        s.fracs.erase(s.fracs.begin());
        for (const Clock& c : g) {
            s.ints.at(c) += 1;
            s.zero.insert(c);
        }
    }
    return s;
}

Region resetRegion(const Region& r, const ClockSet& lambda) {
    Region s = r;
    for (const Clock& c : lambda) {
        if (!s.bounds.count(c))
            throw UnknownClock("reset of unknown clock '" + c + "'");
        s.beyond.erase(c);
        s.zero.erase(c);
        for (ClockSet& cls : s.fracs) cls.erase(c);
        s.ints[c] = 0;
        s.zero.insert(c);
    }
    std::erase_if(s.fracs, [](const ClockSet& cls) { return cls.empty(); });
    return s;
}

bool constraintAgrees(const ClockConstraint& pi, const Region& r) {
    for (const SimpleBound& b : pi.conjuncts()) {
        if (!r.bounds.count(b.clock))
            throw UnknownClock("constraint mentions clock '" + b.clock +
                               "' absent from the region");
        if (b.constant > r.bounds.at(b.clock))
            throw ConstantExceedsBound(
                "constant " + std::to_string(b.constant) + " for clock '" +
                b.clock + "' exceeds its bound " +
                std::to_string(r.bounds.at(b.clock)));
        bool beyond = r.beyond.count(b.clock) != 0;
        long long i = beyond ? 0 : r.ints.at(b.clock);
        bool onInt = r.zero.count(b.clock) != 0;
        bool ok = false;
        switch (b.rel) {
        case BoundRel::Lt: ok = !beyond && i < b.constant; break;
        case BoundRel::Le:
            ok = !beyond && (i < b.constant || (i == b.constant && onInt));
            break;
        case BoundRel::Gt:
            ok = beyond || i > b.constant || (i == b.constant && !onInt);
            break;
        case BoundRel::Ge: ok = beyond || i >= b.constant; break;
        }
        if (!ok) return false;
    }
    return true;
}

std::pair<Region, ClockBounds> natExtend(const Region& r, NatOp op,
                                         const Clock& x, long long n) {
    if (!r.bounds.count(x))
        throw UnknownClock("extension of unknown clock '" + x + "'");
    if (n < 0) throw Error("natural operand expected");
    Region s = r;
    if (op == NatOp::Assign) {
        s.bounds[x] = std::max(s.bounds.at(x), n);
        s.beyond.erase(x);
        s.zero.erase(x);
        for (ClockSet& cls : s.fracs) cls.erase(x);
        std::erase_if(s.fracs, [](const ClockSet& cls) { return cls.empty(); });
        s.ints[x] = n;
        s.zero.insert(x);
    } else {
        s.bounds[x] = s.bounds.at(x) + n;
        if (!s.beyond.count(x)) s.ints.at(x) += n;
    }
    return {s, s.bounds};
}

namespace {

void buildPartitions(const std::vector<Clock>& items,
                     std::vector<std::vector<ClockSet>>& out) {
    // Ordered set partitions of `items`: each item goes into one of the
    // classes used so far or opens a new class in any position relative to
    // the existing order. Generated recursively item by item.
    std::vector<std::vector<ClockSet>> acc = {{}};
    for (const Clock& item : items) {
        std::vector<std::vector<ClockSet>> next;
        for (const auto& part : acc) {
            for (size_t i = 0; i < part.size(); ++i) {
                auto p = part;
                p[i].insert(item);
                next.push_back(std::move(p));
            }
            for (size_t i = 0; i <= part.size(); ++i) {
                auto p = part;
                p.insert(p.begin() + static_cast<long>(i), ClockSet{item});
                next.push_back(std::move(p));
            }
        }
        acc = std::move(next);
    }
    out = std::move(acc);
}

} // namespace

std::vector<Region> enumerateRegions(const ClockBounds& bounds) {
    std::vector<Clock> clocks;
    for (const auto& [c, b] : bounds) {
        (void)b;
        clocks.push_back(c);
    }
    size_t n = clocks.size();
    std::vector<Region> out;

    for (unsigned long beyondMask = 0; beyondMask < (1ul << n); ++beyondMask) {
        std::vector<Clock> inside;
        ClockSet beyond;
        for (size_t i = 0; i < n; ++i) {
            if ((beyondMask >> i) & 1u)
                beyond.insert(clocks[i]);
            else
                inside.push_back(clocks[i]);
        }
        // Integral part assignments for inside clocks.
        std::vector<long long> digits(inside.size(), 0);
        while (true) {
            for (unsigned long zeroMask = 0; zeroMask < (1ul << inside.size());
                 ++zeroMask) {
                ClockSet zero;
                std::vector<Clock> fracClocks;
                bool valid = true;
                for (size_t i = 0; i < inside.size(); ++i) {
                    if ((zeroMask >> i) & 1u) {
                        zero.insert(inside[i]);
                    } else {
                        // A positive fraction above the bound would be beyond.
                        if (digits[i] >= bounds.at(inside[i])) {
                            valid = false;
                            break;
                        }
                        fracClocks.push_back(inside[i]);
                    }
                }
                if (!valid) continue;
                std::vector<std::vector<ClockSet>> partitions;
                if (fracClocks.empty()) {
                    partitions.push_back({});
                } else {
                    buildPartitions(fracClocks, partitions);
                }
                for (const auto& part : partitions) {
                    Region r;
                    r.bounds = bounds;
                    r.beyond = beyond;
                    r.zero = zero;
                    r.fracs = part;
                    for (size_t i = 0; i < inside.size(); ++i)
                        r.ints[inside[i]] = digits[i];
                    out.push_back(std::move(r));
                }
            }
            // Advance the mixed-radix integral-part counter.
            size_t pos = 0;
            while (pos < inside.size()) {
                if (digits[pos] < bounds.at(inside[pos])) {
                    ++digits[pos];
                    break;
                }
                digits[pos] = 0;
                ++pos;
            }
            if (pos == inside.size()) break;
        }
    }
    std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) {
        return a.key() < b.key();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

std::vector<std::string> splitList(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace

Region parseRegionDescriptor(const std::string& text, const ClockBounds& bounds) {
    // Expected shape: ints=... zero=... order=... beyond=...
    std::istringstream in(text);
    std::string intsField, zeroField, orderField, beyondField;
    in >> intsField >> zeroField >> orderField >> beyondField;
    std::string extra;
    if (in >> extra)
        throw Error("malformed region descriptor '" + text + "'");
    auto strip = [&](const std::string& field, const std::string& prefix) {
        if (field.rfind(prefix, 0) != 0)
            throw Error("malformed region descriptor '" + text +
                        "': expected " + prefix);
        return field.substr(prefix.size());
    };
    Region r;
    r.bounds = bounds;
    for (const std::string& item : splitList(strip(intsField, "ints="), ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw Error("malformed integral part '" + item + "'");
        const std::string clock = item.substr(0, colon);
        r.ints[clock] = std::stoll(item.substr(colon + 1));
    }
    for (const std::string& c : splitList(strip(zeroField, "zero="), ','))
        r.zero.insert(c);
    std::string order = strip(orderField, "order=");
    size_t pos = 0;
    while (pos < order.size()) {
        if (order[pos] != '(')
            throw Error("malformed fractional order in '" + text + "'");
        size_t close = order.find(')', pos);
        if (close == std::string::npos)
            throw Error("malformed fractional order in '" + text + "'");
        ClockSet cls;
        for (const std::string& c :
             splitList(order.substr(pos + 1, close - pos - 1), ','))
            cls.insert(c);
        if (cls.empty())
            throw Error("empty fractional class in '" + text + "'");
        r.fracs.push_back(std::move(cls));
        pos = close + 1;
    }
    for (const std::string& c : splitList(strip(beyondField, "beyond="), ','))
        r.beyond.insert(c);
    validateRegion(r);
    return r;
}

} // namespace tcsm
