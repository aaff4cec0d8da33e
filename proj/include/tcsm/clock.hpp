#pragma once

#include <boost/rational.hpp>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tcsm/errors.hpp"

namespace tcsm {

using Clock = std::string;
using ClockSet = std::set<Clock>;

// Exact rational clock values. Region construction is only correct with
// exact arithmetic; floating point would misclassify boundary valuations.
using Rat = boost::rational<long long>;

using ClockValuation = std::map<Clock, Rat>;

// Per-clock ceiling beyond which exact values are indistinguishable.
using ClockBounds = std::map<Clock, long long>;

enum class BoundRel { Lt, Le, Gt, Ge };

struct SimpleBound {
    Clock clock;
    BoundRel rel;
    long long constant; // natural
    auto operator<=>(const SimpleBound&) const = default;
};

// A conjunction of simple bounds over clocks. An empty conjunction is the
// trivially true constraint (written "true" in model files).
class ClockConstraint {
public:
    ClockConstraint() = default;
    explicit ClockConstraint(std::vector<SimpleBound> conjuncts);

    static ClockConstraint always() { return ClockConstraint(); }

    bool unconstrained() const { return conjuncts_.empty(); }
    const std::vector<SimpleBound>& conjuncts() const { return conjuncts_; }

    ClockConstraint conjoin(const ClockConstraint& other) const;
    ClockSet clocks() const;
    std::string str() const;

    bool operator==(const ClockConstraint&) const = default;

private:
    std::vector<SimpleBound> conjuncts_; // sorted, deduplicated
};

bool evalConstraint(const ClockConstraint& pi, const ClockValuation& nu);

// Advances every clock by `delta`, then zeroes the clocks in `resets`.
ClockValuation valuationTransform(const ClockValuation& nu, const Rat& delta,
                                  const ClockSet& resets);

// A clock region: one equivalence class of valuations that no constraint
// with constants within `bounds` can tell apart. Clocks past their bound
// live in `beyond`; every other clock has an integral part in `ints` and
// sits either in `zero` (fractional part zero) or in exactly one class of
// `fracs`, which orders the distinct fractional parts from greatest to
// smallest.
struct Region {
    ClockBounds bounds;
    std::map<Clock, long long> ints;
    ClockSet beyond;
    ClockSet zero;
    std::vector<ClockSet> fracs;

    ClockSet clocks() const;

    // Canonical descriptor, e.g. "ints=x:1,y:0 zero=y order=(x) beyond=".
    // Clocks are listed lexicographically within each field; `order` lists
    // the fractional classes greatest first.
    std::string key() const;

    bool operator==(const Region&) const = default;
};

// Checks the Region representation invariants, throwing Error on violation.
void validateRegion(const Region& r);

Region regionOf(const ClockValuation& nu, const ClockBounds& bounds);

// The region with every clock at zero.
Region zeroRegion(const ClockBounds& bounds);

// A canonical member of the region: zero clocks at their integer, the k-th
// fractional class (greatest first, m classes total) at fraction
// (m-k+1)/(m+1), beyond clocks at bound+1.
ClockValuation representative(const Region& r);

// The region entered next when time flows. The region of beyond-only
// clocks is its own successor.
Region timeSuccessor(const Region& r);

Region resetRegion(const Region& r, const ClockSet& lambda);

// Whether the constraint holds on all of the region (equivalently, on any
// point of it; regions never straddle a constraint boundary whose constant
// respects the region's bounds). Constants above a clock's bound throw
// ConstantExceedsBound.
bool constraintAgrees(const ClockConstraint& pi, const Region& r);

enum class NatOp { Assign, Increment };

// Region image of assigning a natural to a clock or incrementing it by a
// natural, together with the enlarged bounds under which the image is exact.
std::pair<Region, ClockBounds> natExtend(const Region& r, NatOp op,
                                         const Clock& x, long long n);

// All canonical regions over the given bounds, ordered by descriptor.
std::vector<Region> enumerateRegions(const ClockBounds& bounds);

// Inverse of Region::key for a known bounds map (used by the model reader).
Region parseRegionDescriptor(const std::string& text, const ClockBounds& bounds);

} // namespace tcsm
