#pragma once

// Temporal closure computation and entailment decisions: PseudoLinClosure
// for predictive theories (count/list bookkeeping generalized with time
// shifts) and bounded fixpoint iteration for general theories.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tai/core.hpp"
#include "tai/grounding.hpp"
#include "tai/semantics.hpp"

namespace tai {

struct MaxTooSmall : Error {
    MaxTooSmall(Time max, Time ua)
        : Error("Max = " + std::to_string(max) + " is smaller than u(A) = " +
                std::to_string(ua)) {}
};

// One rule application: formula #formula of the theory fired at shift i,
// contributing `added` (possibly empty when every atom was already present).
struct Firing {
    std::size_t formula;
    Time shift;
    AttributeSet added;
};

// Replaying `firings` from the seed reproduces `finalSet`; each firing's
// shifted antecedent is contained in the set state at firing time.
struct ClosureTrace {
    AttributeSet finalSet;
    std::vector<Firing> firings;
};

namespace detail {

// Pending-update order: ascending time, attribute name as tiebreak. This is
// what makes closure traces sweep the window left to right.
struct TimeOrder {
    bool operator()(const TimedAttribute& x, const TimedAttribute& y) const {
        if (x.time != y.time) return x.time < y.time;
        return x.attr < y.attr;
    }
};

}  // namespace detail

// PseudoLinClosure(Sigma, A, Max). Returns M with M inside [A]_Sigma and
// M n T = [A]_Sigma n T for the window T = { y@i | l(A) <= i <= Max }.
//
// count[E=>F, i] starts at |E| for every shift i in [l(A)-l(E), Max-l(F)]
// and tracks how many atoms of E+i have not been updated yet; list[y@i]
// holds the <E=>F, j> records whose shifted antecedent contains y@i. Each
// window atom is updated at most once, which makes the run pseudo-linear in
// the window size. Pending updates are processed in canonical atom order so
// traces are deterministic (ascending time; firings at a shift follow theory
// order via the list construction).
inline ClosureTrace pseudoLinClosure(const Theory& sigma, const AttributeSet& a,
                                     Time max) {
    requirePredictive(sigma);
    if (a.empty()) throw EmptySetError("pseudoLinClosure: A must be non-empty");
    if (max < a.upper()) throw MaxTooSmall(max, a.upper());

    const Time la = a.lower();
    struct Slot {
        Time lo = 0;                      // first initialized shift
        std::vector<std::size_t> count;   // count[i - lo]
    };
    std::vector<Slot> slots(sigma.size());
    std::unordered_map<TimedAttribute, std::vector<std::pair<std::size_t, Time>>,
                       TimedAttributeHash>
        list;

    for (std::size_t k = 0; k < sigma.size(); ++k) {
        const Implication& f = sigma[k];
        Time lo = la - f.antecedent.lower();
        Time hi = max - f.consequent.lower();
        if (lo > hi) continue;
        slots[k].lo = lo;
        slots[k].count.assign(static_cast<std::size_t>(hi - lo + 1),
                              f.antecedent.size());
        for (Time i = lo; i <= hi; ++i)
            for (const TimedAttribute& yj : f.antecedent)
                list[yj.shifted(i)].emplace_back(k, i);
    }

    ClosureTrace trace;
    std::unordered_set<TimedAttribute, TimedAttributeHash> m(a.begin(), a.end());
    std::set<TimedAttribute, detail::TimeOrder> update(a.begin(), a.end());

    while (!update.empty()) {
        TimedAttribute yi = *update.begin();
        update.erase(update.begin());
        auto it = list.find(yi);
        if (it == list.end()) continue;
        for (const auto& [k, j] : it->second) {
            std::size_t& cnt = slots[k].count[static_cast<std::size_t>(j - slots[k].lo)];
            if (--cnt != 0) continue;
            std::vector<TimedAttribute> fresh;
            for (const TimedAttribute& y : sigma[k].consequent) {
                TimedAttribute shifted = y.shifted(j);
                if (m.insert(shifted).second) {
                    fresh.push_back(shifted);
                    update.insert(shifted);
                }
            }
            trace.firings.push_back({k, j, AttributeSet(std::move(fresh))});
        }
    }
    trace.finalSet = AttributeSet(std::vector<TimedAttribute>(m.begin(), m.end()));
    return trace;
}

enum class EntailStatus { Entailed, NotEntailed, Unknown };

inline const char* toString(EntailStatus s) {
    switch (s) {
        case EntailStatus::Entailed: return "ENTAILED";
        case EntailStatus::NotEntailed: return "NOT_ENTAILED";
        default: return "UNKNOWN";
    }
}

// Limits a decision ran under; NotEntailed/Unknown are only meaningful
// relative to these.
struct Budget {
    std::optional<Time> max;                     // predictive window top
    std::optional<std::pair<Time, Time>> window; // general [lo, hi]
    std::optional<std::size_t> maxRounds;
};

// For general theories a windowed fixpoint refutes soundly only when it is a
// genuine (unwindowed) model of the theory; both facts are recorded.
struct SaturationCertificate {
    bool saturated = false;
    bool fixpointIsModel = false;
};

struct EntailmentVerdict {
    EntailStatus status = EntailStatus::Unknown;
    ClosureTrace witness;
    Budget budget;
    std::optional<SaturationCertificate> certificate;
};

// Decidable: Sigma |- A => B iff B is inside pseudoLinClosure(Sigma, A, u(B)).
inline EntailmentVerdict decidePredictiveEntailment(const Theory& sigma,
                                                    const Implication& f) {
    requirePredictive(sigma);
    if (!isPredictive(f))
        throw NotPredictive(static_cast<std::size_t>(-1));
    EntailmentVerdict v;
    Time max = f.consequent.upper();
    v.budget.max = max;
    v.witness = pseudoLinClosure(sigma, f.antecedent, max);
    v.status = f.consequent.isSubsetOf(v.witness.finalSet)
                   ? EntailStatus::Entailed
                   : EntailStatus::NotEntailed;
    return v;
}

// Windowed iteration of M^{n+1} = M^n u U{ F+i | E=>F in Sigma, E+i in M^n },
// keeping only atoms inside [lo, hi]. One round sweeps shifts in ascending
// order and, per shift, formulas in theory order, applying each firing
// immediately. saturated = a full round added nothing before maxRounds.
inline std::pair<ClosureTrace, bool> boundedClosure(const Theory& sigma,
                                                    const AttributeSet& a, Time lo,
                                                    Time hi, std::size_t maxRounds) {
    if (lo > hi) throw Error("boundedClosure: window is empty (lo > hi)");
    if (!a.empty() && (a.lower() < lo || a.upper() > hi))
        throw Error("boundedClosure: seed has time points outside the window");

    // Shift range per formula: antecedent must fit the current set (inside
    // the window) or, for empty antecedents, the conclusion must touch it.
    struct Range {
        Time lo, hi;
        bool empty;
    };
    std::vector<Range> ranges(sigma.size());
    Time sweepLo = 0, sweepHi = -1;
    bool any = false;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        const Implication& f = sigma[k];
        Range r{0, -1, true};
        if (!f.antecedent.empty()) {
            r = {lo - f.antecedent.lower(), hi - f.antecedent.upper(), false};
        } else if (!f.consequent.empty()) {
            r = {lo - f.consequent.upper(), hi - f.consequent.lower(), false};
        }
        if (!r.empty && r.lo <= r.hi) {
            if (!any) {
                sweepLo = r.lo;
                sweepHi = r.hi;
                any = true;
            } else {
                sweepLo = std::min(sweepLo, r.lo);
                sweepHi = std::max(sweepHi, r.hi);
            }
            ranges[k] = r;
        } else {
            ranges[k].empty = true;
        }
    }

    ClosureTrace trace;
    AttributeSet cur = a;
    bool saturated = false;
    for (std::size_t round = 0; round < maxRounds && !saturated; ++round) {
        bool changed = false;
        if (any) {
            for (Time i = sweepLo; i <= sweepHi; ++i) {
                for (std::size_t k = 0; k < sigma.size(); ++k) {
                    const Range& r = ranges[k];
                    if (r.empty || i < r.lo || i > r.hi) continue;
                    const Implication& f = sigma[k];
                    if (!f.antecedent.shifted(i).isSubsetOf(cur)) continue;
                    std::vector<TimedAttribute> fresh;
                    for (const TimedAttribute& y : f.consequent) {
                        TimedAttribute s = y.shifted(i);
                        if (s.time >= lo && s.time <= hi && !cur.contains(s))
                            fresh.push_back(s);
                    }
                    if (fresh.empty()) continue;
                    AttributeSet added(std::move(fresh));
                    cur = cur.unionWith(added);
                    trace.firings.push_back({k, i, std::move(added)});
                    changed = true;
                }
            }
        }
        if (!changed) saturated = true;
    }
    trace.finalSet = cur;
    return {std::move(trace), saturated};
}

// Sound semi-decision for arbitrary theories. Entailed when the windowed
// closure reaches B (always sound: the windowed closure under-approximates
// the syntactic closure). NotEntailed only with a certificate: the window
// fixpoint must verify as a genuine model of Sigma, which subsumes any
// span/slack condition (out-of-window feedback would falsify some formula).
// Otherwise Unknown, making the budget gap explicit.
inline EntailmentVerdict decideGeneralEntailment(const Theory& sigma,
                                                 const Implication& f, Time lo,
                                                 Time hi, std::size_t maxRounds) {
    for (const AttributeSet* side : {&f.antecedent, &f.consequent})
        if (!side->empty() && (side->lower() < lo || side->upper() > hi))
            throw Error("decideGeneralEntailment: window must contain the query");

    EntailmentVerdict v;
    v.budget.window = {lo, hi};
    v.budget.maxRounds = maxRounds;

    auto [trace, saturated] = boundedClosure(sigma, f.antecedent, lo, hi, maxRounds);
    v.witness = std::move(trace);
    SaturationCertificate cert;
    cert.saturated = saturated;
    if (f.consequent.isSubsetOf(v.witness.finalSet)) {
        v.status = EntailStatus::Entailed;
        v.certificate = cert;
        return v;
    }
    if (saturated && isModelOf(v.witness.finalSet, sigma)) {
        cert.fixpointIsModel = true;
        v.status = EntailStatus::NotEntailed;
    } else {
        v.status = EntailStatus::Unknown;
    }
    v.certificate = cert;
    return v;
}

struct GeneralBudget {
    Time lo = 0;
    Time hi = 0;
    std::size_t maxRounds = 1;
};

// Default window: every time point of the query and theory, padded by
// k * (largest formula span); default rounds: 10 * |Sigma| * window width.
inline GeneralBudget defaultGeneralBudget(const Theory& sigma, const Implication& f,
                                          Time k = 4) {
    bool any = false;
    Time lo = 0, hi = 0, span = 0;
    auto visit = [&](const Implication& g) {
        for (const AttributeSet* side : {&g.antecedent, &g.consequent}) {
            if (side->empty()) continue;
            if (!any) {
                lo = side->lower();
                hi = side->upper();
                any = true;
            } else {
                lo = std::min(lo, side->lower());
                hi = std::max(hi, side->upper());
            }
        }
    };
    visit(f);
    for (const Implication& g : sigma) {
        visit(g);
        span = std::max(span, formulaSpan(g));
    }
    GeneralBudget b;
    Time pad = checkedMul(k, span);
    b.lo = checkedAdd(lo, -pad);
    b.hi = checkedAdd(hi, pad);
    Time width = b.hi - b.lo + 1;
    std::size_t rounds = 10 * sigma.size() * static_cast<std::size_t>(width);
    b.maxRounds = rounds == 0 ? 1 : rounds;
    return b;
}

inline EntailmentVerdict decideGeneralEntailment(const Theory& sigma,
                                                 const Implication& f) {
    GeneralBudget b = defaultGeneralBudget(sigma, f);
    return decideGeneralEntailment(sigma, f, b.lo, b.hi, b.maxRounds);
}

}  // namespace tai
