#pragma once

// Validity of implications in finite timed datasets: M |= A => B iff for
// every integer shift i, A+i subset-of M implies B+i subset-of M.

#include <optional>
#include <vector>

#include "tai/core.hpp"

namespace tai {

struct ModelCheckResult {
    bool holds = true;
    // Smallest witnessing shift i with A+i in M and B+i not in M. Absent in
    // one documented case: A = {} with B != {} over finite M is false at
    // EVERY shift, so no single finite witness is reported (witnesses stays
    // empty as well).
    std::optional<Time> counterexampleShift;
    // All witnessing shifts in ascending order (finite when A != {}).
    std::vector<Time> witnesses;
};

// Shifts i at which S+i could possibly embed into M: each element of S pins
// i to |M| candidates, so one pivot element suffices. S must be non-empty.
inline std::vector<Time> embeddingCandidates(const AttributeSet& m,
                                             const AttributeSet& s) {
    const TimedAttribute& pivot = *s.begin();
    std::vector<Time> out;
    for (const TimedAttribute& a : m)
        if (a.attr == pivot.attr) out.push_back(a.time - pivot.time);
    // m is canonically sorted, so candidates from a single attribute are
    // already ascending.
    return out;
}

// Shifts i with S+i subset-of M, ascending. S must be non-empty.
inline std::vector<Time> embeddings(const AttributeSet& m, const AttributeSet& s) {
    std::vector<Time> out;
    for (Time i : embeddingCandidates(m, s))
        if (s.shifted(i).isSubsetOf(m)) out.push_back(i);
    return out;
}

inline ModelCheckResult checkValidity(const AttributeSet& m, const Implication& f) {
    ModelCheckResult r;
    if (f.antecedent.empty()) {
        // {} + i is contained in M for every i; a finite M cannot contain
        // B+i for all i unless B = {}.
        r.holds = f.consequent.empty();
        return r;
    }
    for (Time i : embeddings(m, f.antecedent))
        if (!f.consequent.shifted(i).isSubsetOf(m)) r.witnesses.push_back(i);
    r.holds = r.witnesses.empty();
    if (!r.holds) r.counterexampleShift = r.witnesses.front();
    return r;
}

inline std::vector<std::pair<Implication, ModelCheckResult>>
checkTheoryValidity(const AttributeSet& m, const Theory& sigma) {
    std::vector<std::pair<Implication, ModelCheckResult>> out;
    out.reserve(sigma.size());
    for (const Implication& f : sigma) out.emplace_back(f, checkValidity(m, f));
    return out;
}

inline bool isModelOf(const AttributeSet& m, const Theory& sigma) {
    for (const Implication& f : sigma)
        if (!checkValidity(m, f).holds) return false;
    return true;
}

// Classical shift-free validity: A not in M, or B in M.
inline bool checkPLValidity(const AttributeSet& m, const Implication& f) {
    return !f.antecedent.isSubsetOf(m) || f.consequent.isSubsetOf(m);
}

inline AttributeSet intersectModels(const AttributeSet& m1, const AttributeSet& m2) {
    return m1.intersect(m2);
}

}  // namespace tai
