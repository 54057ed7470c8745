#pragma once

// Core domain types for attribute implications annotated by relative time
// points: interned attribute symbols, timed attributes y@i, finite sets of
// timed attributes with the time-shift algebra, implications A => B, and
// theories (ordered lists of implications).

#include <algorithm>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tai {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shifting a time point out of the signed 64-bit range is a checked error,
// never a wraparound: the hardness-instance generator produces large targets
// and silent overflow would corrupt entailment answers.
struct IntegerOverflow : Error {
    IntegerOverflow() : Error("time shift overflows the 64-bit time range") {}
};

// l(S)/u(S) are defined only for non-empty sets; callers must branch.
struct EmptySetError : Error {
    explicit EmptySetError(const std::string& what) : Error(what) {}
};

// Attribute symbols are interned: equality is identity on the interned id.
// Ordering, however, is lexicographic on the symbol text so that canonical
// forms do not depend on interning order.
class Attr {
  public:
    Attr() : id_(0) {}

    static Attr intern(std::string_view name) {
        Registry& r = registry();
        std::lock_guard<std::mutex> lock(r.mutex);
        auto it = r.ids.find(std::string(name));
        if (it != r.ids.end()) return Attr(it->second);
        std::uint32_t id = static_cast<std::uint32_t>(r.names.size());
        r.names.emplace_back(name);
        r.ids.emplace(r.names.back(), id);
        return Attr(id);
    }

    const std::string& name() const { return registry().names[id_]; }
    std::uint32_t id() const { return id_; }

    friend bool operator==(Attr a, Attr b) { return a.id_ == b.id_; }
    friend bool operator!=(Attr a, Attr b) { return a.id_ != b.id_; }
    friend bool operator<(Attr a, Attr b) {
        return a.id_ != b.id_ && a.name() < b.name();
    }

  private:
    explicit Attr(std::uint32_t id) : id_(id) {}

    struct Registry {
        std::mutex mutex;
        std::deque<std::string> names{"_"};  // id 0 = placeholder symbol
        std::unordered_map<std::string, std::uint32_t> ids{{"_", 0}};
    };
    static Registry& registry() {
        static Registry r;
        return r;
    }

    std::uint32_t id_;
};

using Time = std::int64_t;

inline Time checkedAdd(Time a, Time b) {
    Time out;
    if (__builtin_add_overflow(a, b, &out)) throw IntegerOverflow();
    return out;
}

inline Time checkedMul(Time a, Time b) {
    Time out;
    if (__builtin_mul_overflow(a, b, &out)) throw IntegerOverflow();
    return out;
}

// One attribute observed at a relative time point: y@i.
struct TimedAttribute {
    Attr attr;
    Time time = 0;

    TimedAttribute() = default;
    TimedAttribute(Attr a, Time t) : attr(a), time(t) {}
    TimedAttribute(std::string_view name, Time t) : attr(Attr::intern(name)), time(t) {}

    TimedAttribute shifted(Time j) const { return {attr, checkedAdd(time, j)}; }

    friend bool operator==(const TimedAttribute& a, const TimedAttribute& b) {
        return a.attr == b.attr && a.time == b.time;
    }
    friend bool operator!=(const TimedAttribute& a, const TimedAttribute& b) {
        return !(a == b);
    }
    // Canonical order: attribute name lexicographic, then time ascending.
    friend bool operator<(const TimedAttribute& a, const TimedAttribute& b) {
        if (a.attr != b.attr) return a.attr < b.attr;
        return a.time < b.time;
    }
};

struct TimedAttributeHash {
    std::size_t operator()(const TimedAttribute& a) const {
        std::size_t h = std::hash<std::uint32_t>()(a.attr.id());
        std::size_t t = std::hash<std::int64_t>()(a.time);
        return h ^ (t + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
};

// Finite set of timed attributes kept in canonical sorted order. Immutable
// value semantics: every operation returns a new set.
class AttributeSet {
  public:
    AttributeSet() = default;
    AttributeSet(std::initializer_list<TimedAttribute> init)
        : elems_(init) { normalize(); }
    explicit AttributeSet(std::vector<TimedAttribute> elems)
        : elems_(std::move(elems)) { normalize(); }

    bool empty() const { return elems_.empty(); }
    std::size_t size() const { return elems_.size(); }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }
    const std::vector<TimedAttribute>& elements() const { return elems_; }

    bool contains(const TimedAttribute& a) const {
        return std::binary_search(elems_.begin(), elems_.end(), a);
    }

    bool isSubsetOf(const AttributeSet& other) const {
        return std::includes(other.elems_.begin(), other.elems_.end(),
                             elems_.begin(), elems_.end());
    }

    AttributeSet unionWith(const AttributeSet& other) const {
        std::vector<TimedAttribute> out;
        out.reserve(elems_.size() + other.elems_.size());
        std::set_union(elems_.begin(), elems_.end(),
                       other.elems_.begin(), other.elems_.end(),
                       std::back_inserter(out));
        return AttributeSet(Sorted{}, std::move(out));
    }

    AttributeSet intersect(const AttributeSet& other) const {
        std::vector<TimedAttribute> out;
        std::set_intersection(elems_.begin(), elems_.end(),
                              other.elems_.begin(), other.elems_.end(),
                              std::back_inserter(out));
        return AttributeSet(Sorted{}, std::move(out));
    }

    AttributeSet difference(const AttributeSet& other) const {
        std::vector<TimedAttribute> out;
        std::set_difference(elems_.begin(), elems_.end(),
                            other.elems_.begin(), other.elems_.end(),
                            std::back_inserter(out));
        return AttributeSet(Sorted{}, std::move(out));
    }

    // Time shift S+j (uniform shift preserves the canonical order).
    AttributeSet shifted(Time j) const {
        std::vector<TimedAttribute> out;
        out.reserve(elems_.size());
        for (const TimedAttribute& a : elems_) out.push_back(a.shifted(j));
        return AttributeSet(Sorted{}, std::move(out));
    }

    // l(S): lowest time point. Defined only for non-empty S.
    Time lower() const {
        requireNonEmpty("l(S) undefined for the empty set");
        Time lo = elems_.front().time;
        for (const TimedAttribute& a : elems_) lo = std::min(lo, a.time);
        return lo;
    }

    // u(S): greatest time point. Defined only for non-empty S.
    Time upper() const {
        requireNonEmpty("u(S) undefined for the empty set");
        Time hi = elems_.front().time;
        for (const TimedAttribute& a : elems_) hi = std::max(hi, a.time);
        return hi;
    }

    friend bool operator==(const AttributeSet& a, const AttributeSet& b) {
        return a.elems_ == b.elems_;
    }
    friend bool operator!=(const AttributeSet& a, const AttributeSet& b) {
        return !(a == b);
    }
    friend bool operator<(const AttributeSet& a, const AttributeSet& b) {
        return std::lexicographical_compare(a.elems_.begin(), a.elems_.end(),
                                            b.elems_.begin(), b.elems_.end());
    }

  private:
    struct Sorted {};
    AttributeSet(Sorted, std::vector<TimedAttribute> elems)
        : elems_(std::move(elems)) {}

    void normalize() {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    void requireNonEmpty(const char* what) const {
        if (elems_.empty()) throw EmptySetError(what);
    }

    std::vector<TimedAttribute> elems_;
};

// A => B. Both sides may be empty except where a predictive formula is
// required.
struct Implication {
    AttributeSet antecedent;
    AttributeSet consequent;

    Implication() = default;
    Implication(AttributeSet a, AttributeSet c)
        : antecedent(std::move(a)), consequent(std::move(c)) {}

    Implication shifted(Time j) const {
        return {antecedent.shifted(j), consequent.shifted(j)};
    }

    friend bool operator==(const Implication& a, const Implication& b) {
        return a.antecedent == b.antecedent && a.consequent == b.consequent;
    }
    friend bool operator!=(const Implication& a, const Implication& b) {
        return !(a == b);
    }
    friend bool operator<(const Implication& a, const Implication& b) {
        if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
        return a.consequent < b.consequent;
    }
};

// Order-preserving list of formulas; duplicates permitted in storage.
using Theory = std::vector<Implication>;

inline AttributeSet shiftSet(const AttributeSet& s, Time j) { return s.shifted(j); }

struct Bounds {
    Time l;
    Time u;
};

inline Bounds bounds(const AttributeSet& s) { return {s.lower(), s.upper()}; }

// A => B is predictive iff A and B are non-empty and u(A) <= l(B).
inline bool isPredictive(const Implication& f) {
    return !f.antecedent.empty() && !f.consequent.empty() &&
           f.antecedent.upper() <= f.consequent.lower();
}

// Width u(A u B) - l(A u B) of a formula; 0 for the all-empty formula.
inline Time formulaSpan(const Implication& f) {
    AttributeSet both = f.antecedent.unionWith(f.consequent);
    if (both.empty()) return 0;
    return both.upper() - both.lower();
}

// Theories compare as equal when they contain the same formulas regardless of
// order and duplication.
inline bool equalAsSets(const Theory& a, const Theory& b) {
    std::vector<Implication> x(a.begin(), a.end());
    std::vector<Implication> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    std::sort(y.begin(), y.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
    return x == y;
}

}  // namespace tai
