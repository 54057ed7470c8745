#pragma once

// Hardness-instance generation from unbounded subset sum, an independent
// dynamic-programming oracle, and export of entailment instances to
// linear-temporal-logic text with past operators.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tai/core.hpp"

namespace tai {

struct CapExceeded : Error {
    CapExceeded(Time target, Time cap)
        : Error("subset-sum target " + std::to_string(target) +
                " exceeds the cap " + std::to_string(cap)) {}
};

// Unbounded subset sum: do non-negative c_i exist with sum(c_i * values[i])
// equal to target?
struct SubsetSumInstance {
    std::vector<Time> values;
    Time target = 0;
};

namespace detail {

inline void validate(const SubsetSumInstance& inst) {
    for (Time v : inst.values)
        if (v < 0) throw Error("subset-sum values must be non-negative");
    if (inst.target < 0) throw Error("subset-sum target must be non-negative");
}

}  // namespace detail

// Sigma = { {y@0} => {y@j_i} }, query {y@0} => {y@z}; entailment of the
// query decides the instance. Zero values yield the tautology {y@0}=>{y@0}
// and duplicates are kept, so the map stays total and order-faithful.
inline std::pair<Theory, Implication> genSubsetSumTheory(
    const SubsetSumInstance& inst) {
    detail::validate(inst);
    Attr y = Attr::intern("y");
    Theory sigma;
    for (Time v : inst.values)
        sigma.push_back({AttributeSet{{y, 0}}, AttributeSet{{y, v}}});
    Implication query{AttributeSet{{y, 0}}, AttributeSet{{y, inst.target}}};
    return {std::move(sigma), std::move(query)};
}

// Independent oracle: reachability over 0..target, pseudo-polynomial.
inline bool solveSubsetSumDP(const SubsetSumInstance& inst,
                             Time cap = 1'000'000) {
    detail::validate(inst);
    if (inst.target > cap) throw CapExceeded(inst.target, cap);
    std::vector<bool> reach(static_cast<std::size_t>(inst.target) + 1, false);
    reach[0] = true;
    for (Time s = 1; s <= inst.target; ++s)
        for (Time v : inst.values)
            if (v > 0 && v <= s && reach[static_cast<std::size_t>(s - v)]) {
                reach[static_cast<std::size_t>(s)] = true;
                break;
            }
    return reach[static_cast<std::size_t>(inst.target)];
}

// ---------------------------------------------------------------------------
// LTL export

// text is the exported document; the counts record every emitted temporal
// operator, and the max chain depths equal the largest absolute time values
// encoded (X for future, Y for past).
struct LTLDocument {
    std::string text;
    std::size_t countG = 0;
    std::size_t countX = 0;
    std::size_t countY = 0;
    Time maxXChain = 0;
    Time maxYChain = 0;
};

namespace detail {

inline void renderAtom(const TimedAttribute& a, LTLDocument& doc) {
    Time t = a.time;
    if (t > 0) {
        doc.countX += static_cast<std::size_t>(t);
        doc.maxXChain = std::max(doc.maxXChain, t);
        for (Time k = 0; k < t; ++k) doc.text += "(X ";
    } else if (t < 0) {
        doc.countY += static_cast<std::size_t>(-t);
        doc.maxYChain = std::max(doc.maxYChain, -t);
        for (Time k = 0; k < -t; ++k) doc.text += "(Y ";
    }
    doc.text += a.attr.name();
    for (Time k = 0; k < (t > 0 ? t : -t); ++k) doc.text += ")";
}

inline void renderSet(const AttributeSet& s, LTLDocument& doc) {
    if (s.empty()) {
        doc.text += "true";
        return;
    }
    if (s.size() == 1) {
        renderAtom(*s.begin(), doc);
        return;
    }
    doc.text += "(";
    bool first = true;
    for (const TimedAttribute& a : s) {
        if (!first) doc.text += " & ";
        first = false;
        renderAtom(a, doc);
    }
    doc.text += ")";
}

inline void renderImplication(const Implication& f, LTLDocument& doc) {
    ++doc.countG;
    doc.text += "G (";
    renderSet(f.antecedent, doc);
    doc.text += " -> ";
    renderSet(f.consequent, doc);
    doc.text += ")";
}

}  // namespace detail

// Conjunction of every theory formula's translation with the negated query;
// satisfiable exactly when the theory does not entail the query. Evaluation
// is anchored at time point 0 (each y@i becomes an |i|-deep X or Y chain).
inline LTLDocument exportLTL(const Theory& sigma, const Implication& query) {
    LTLDocument doc;
    for (const Implication& f : sigma) {
        detail::renderImplication(f, doc);
        doc.text += " &\n";
    }
    doc.text += "! (";
    detail::renderImplication(query, doc);
    doc.text += ")\n";
    return doc;
}

}  // namespace tai
