#pragma once

// Finite instantiations of shift-closed theories and the classical
// (shift-free) closure used as the grounded-entailment oracle.

#include <cstddef>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tai/core.hpp"

namespace tai {

struct NotPredictive : Error {
    std::size_t index;
    explicit NotPredictive(std::size_t index_)
        : Error("formula #" + std::to_string(index_ + 1) + " is not predictive"),
          index(index_) {}
};

inline void requirePredictive(const Theory& sigma) {
    for (std::size_t k = 0; k < sigma.size(); ++k)
        if (!isPredictive(sigma[k])) throw NotPredictive(k);
}

// One shifted instance E+i => F+i remembers where it came from, so grounded
// derivations can be lifted back into shift-annotated proofs.
struct Provenance {
    std::size_t sourceIndex;
    Time shift;
};

struct GroundedTheory {
    Theory formulas;
    std::vector<Provenance> provenance;
};

// All instances E+i => F+i of a predictive theory with shifts in
// [l(A) - l(E), u(B) - l(F)]; that finite slice decides A => B.
inline GroundedTheory groundPredictive(const Theory& sigma, const AttributeSet& a,
                                       const AttributeSet& b) {
    requirePredictive(sigma);
    if (a.empty()) throw EmptySetError("groundPredictive: A must be non-empty");
    if (b.empty()) throw EmptySetError("groundPredictive: B must be non-empty");
    GroundedTheory out;
    Time la = a.lower(), ub = b.upper();
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        const Implication& f = sigma[k];
        Time lo = la - f.antecedent.lower();
        Time hi = ub - f.consequent.lower();
        for (Time i = lo; i <= hi; ++i) {
            out.formulas.push_back(f.shifted(i));
            out.provenance.push_back({k, i});
        }
    }
    return out;
}

// All instances with every time point of both sides inside [lo, hi]. A
// formula with no atoms at all would fit at every shift; it contributes its
// unshifted copy only.
inline GroundedTheory groundWindow(const Theory& sigma, Time lo, Time hi) {
    if (lo > hi) throw Error("groundWindow: window is empty (lo > hi)");
    GroundedTheory out;
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        const Implication& f = sigma[k];
        AttributeSet both = f.antecedent.unionWith(f.consequent);
        if (both.empty()) {
            out.formulas.push_back(f);
            out.provenance.push_back({k, 0});
            continue;
        }
        Time from = lo - both.lower();
        Time to = hi - both.upper();
        for (Time i = from; i <= to; ++i) {
            out.formulas.push_back(f.shifted(i));
            out.provenance.push_back({k, i});
        }
    }
    return out;
}

// Least superset of A closed under the rules of Gamma applied without
// shifting. Count/list bookkeeping in the LinClosure style: each formula
// keeps a count of antecedent atoms not yet seen; each atom lists the
// formulas waiting on it. Every atom is processed at most once.
inline AttributeSet classicalClosure(const Theory& gamma, const AttributeSet& a) {
    std::vector<std::size_t> count(gamma.size());
    std::unordered_map<TimedAttribute, std::vector<std::size_t>, TimedAttributeHash> list;
    std::deque<TimedAttribute> update;
    std::unordered_set<TimedAttribute, TimedAttributeHash> closure;

    for (const TimedAttribute& x : a) {
        if (closure.insert(x).second) update.push_back(x);
    }
    auto fire = [&](const AttributeSet& cons) {
        for (const TimedAttribute& y : cons)
            if (closure.insert(y).second) update.push_back(y);
    };
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        count[k] = gamma[k].antecedent.size();
        if (count[k] == 0) {
            fire(gamma[k].consequent);
            continue;
        }
        for (const TimedAttribute& x : gamma[k].antecedent) list[x].push_back(k);
    }
    while (!update.empty()) {
        TimedAttribute x = update.front();
        update.pop_front();
        auto it = list.find(x);
        if (it == list.end()) continue;
        for (std::size_t k : it->second)
            if (--count[k] == 0) fire(gamma[k].consequent);
    }
    return AttributeSet(std::vector<TimedAttribute>(closure.begin(), closure.end()));
}

// Quadratic fixpoint iteration; kept as the in-repo oracle anchoring the
// count/list implementation.
inline AttributeSet naiveClassicalClosure(const Theory& gamma, const AttributeSet& a) {
    AttributeSet cur = a;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Implication& f : gamma) {
            if (f.antecedent.isSubsetOf(cur) && !f.consequent.isSubsetOf(cur)) {
                cur = cur.unionWith(f.consequent);
                changed = true;
            }
        }
    }
    return cur;
}

}  // namespace tai
