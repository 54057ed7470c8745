#pragma once

// Proof objects for the Ax/Cut/Shf deduction system and its relatives:
// rule application, proof checking under named rule sets, normalized-proof
// generation from closure traces, rule-set translation, and the
// deduction-theorem witness construction.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tai/closure.hpp"
#include "tai/core.hpp"
#include "tai/textio.hpp"

namespace tai {

struct RuleMismatch : Error {
    explicit RuleMismatch(const std::string& what) : Error(what) {}
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

// ---------------------------------------------------------------------------
// Justifications and proofs

enum class RuleKind {
    Hyp,   // theory hypothesis
    Ax,    // A u B => A
    Ref,   // A => A
    Shf,   // A => B  |-  A+i => B+i
    Cut,   // A => B, B u C => D  |-  A u C => D
    CutI,  // A => B+i, B u C => D  |-  A u (C+i) => D+i
    Sim,   // A => B, B u C => D  |-  A u (C \ B) => D
    SimI,  // A => B+i, B u C => D  |-  A u ((C \ B)+i) => D+i
    Acc,   // A => V, W => X (W inside V)  |-  A => V u X
    Pro,   // A => B  |-  A => B'' for B'' inside B
    Wea,   // A => B  |-  A u C => B
    Add,   // A => B, A => C  |-  A => B u C
    Aug,   // B => C  |-  A u B => A u C
    Tra,   // A => B, B => C  |-  A => C
};

inline const char* toString(RuleKind k) {
    switch (k) {
        case RuleKind::Hyp: return "hyp";
        case RuleKind::Ax: return "ax";
        case RuleKind::Ref: return "ref";
        case RuleKind::Shf: return "shf";
        case RuleKind::Cut: return "cut";
        case RuleKind::CutI: return "cuti";
        case RuleKind::Sim: return "sim";
        case RuleKind::SimI: return "simi";
        case RuleKind::Acc: return "acc";
        case RuleKind::Pro: return "pro";
        case RuleKind::Wea: return "wea";
        case RuleKind::Add: return "add";
        case RuleKind::Aug: return "aug";
        case RuleKind::Tra: return "tra";
    }
    return "?";
}

inline std::optional<RuleKind> ruleKindFromString(std::string_view s) {
    static const std::unordered_map<std::string_view, RuleKind> table = {
        {"hyp", RuleKind::Hyp}, {"ax", RuleKind::Ax},   {"ref", RuleKind::Ref},
        {"shf", RuleKind::Shf}, {"cut", RuleKind::Cut}, {"cuti", RuleKind::CutI},
        {"sim", RuleKind::Sim}, {"simi", RuleKind::SimI}, {"acc", RuleKind::Acc},
        {"pro", RuleKind::Pro}, {"wea", RuleKind::Wea}, {"add", RuleKind::Add},
        {"aug", RuleKind::Aug}, {"tra", RuleKind::Tra},
    };
    auto it = table.find(s);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

inline int premiseCount(RuleKind k) {
    switch (k) {
        case RuleKind::Hyp:
        case RuleKind::Ax:
        case RuleKind::Ref:
            return 0;
        case RuleKind::Shf:
        case RuleKind::Pro:
        case RuleKind::Wea:
        case RuleKind::Aug:
            return 1;
        default:
            return 2;
    }
}

inline bool hasShiftParameter(RuleKind k) {
    return k == RuleKind::Shf || k == RuleKind::CutI || k == RuleKind::SimI;
}

// premise1/premise2 are 0-based indices of earlier steps; index is the
// 0-based theory index for Hyp.
struct Justification {
    RuleKind kind = RuleKind::Ax;
    std::size_t index = 0;
    std::size_t premise1 = 0;
    std::size_t premise2 = 0;
    Time shift = 0;

    static Justification hyp(std::size_t k) { return {RuleKind::Hyp, k, 0, 0, 0}; }
    static Justification ax() { return {RuleKind::Ax, 0, 0, 0, 0}; }
    static Justification ref() { return {RuleKind::Ref, 0, 0, 0, 0}; }
    static Justification shf(std::size_t p, Time i) {
        return {RuleKind::Shf, 0, p, 0, i};
    }
    static Justification cut(std::size_t p, std::size_t q) {
        return {RuleKind::Cut, 0, p, q, 0};
    }
    static Justification cutI(std::size_t p, std::size_t q, Time i) {
        return {RuleKind::CutI, 0, p, q, i};
    }
    static Justification sim(std::size_t p, std::size_t q) {
        return {RuleKind::Sim, 0, p, q, 0};
    }
    static Justification simI(std::size_t p, std::size_t q, Time i) {
        return {RuleKind::SimI, 0, p, q, i};
    }
    static Justification acc(std::size_t p, std::size_t q) {
        return {RuleKind::Acc, 0, p, q, 0};
    }
    static Justification pro(std::size_t p) { return {RuleKind::Pro, 0, p, 0, 0}; }
    static Justification wea(std::size_t p) { return {RuleKind::Wea, 0, p, 0, 0}; }
    static Justification add(std::size_t p, std::size_t q) {
        return {RuleKind::Add, 0, p, q, 0};
    }
    static Justification aug(std::size_t p) { return {RuleKind::Aug, 0, p, 0, 0}; }
    static Justification tra(std::size_t p, std::size_t q) {
        return {RuleKind::Tra, 0, p, q, 0};
    }
};

struct ProofStep {
    Implication formula;
    Justification justification;
};

enum class RuleSet { AxCutShf, AxCutI, RefSimI, AxCut, Normalized, Full };

inline const char* toString(RuleSet r) {
    switch (r) {
        case RuleSet::AxCutShf: return "AX_CUT_SHF";
        case RuleSet::AxCutI: return "AX_CUTI";
        case RuleSet::RefSimI: return "REF_SIMI";
        case RuleSet::AxCut: return "AX_CUT";
        case RuleSet::Normalized: return "NORMALIZED";
        case RuleSet::Full: return "FULL";
    }
    return "?";
}

inline std::optional<RuleSet> ruleSetFromString(std::string_view s) {
    std::string up;
    for (char c : s) up += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 32) : c;
    if (up == "AX_CUT_SHF") return RuleSet::AxCutShf;
    if (up == "AX_CUTI") return RuleSet::AxCutI;
    if (up == "REF_SIMI") return RuleSet::RefSimI;
    if (up == "AX_CUT") return RuleSet::AxCut;
    if (up == "NORMALIZED") return RuleSet::Normalized;
    if (up == "FULL") return RuleSet::Full;
    return std::nullopt;
}

inline bool ruleAllowed(RuleSet r, RuleKind k) {
    if (k == RuleKind::Hyp) return true;
    switch (r) {
        case RuleSet::AxCutShf:
            return k == RuleKind::Ax || k == RuleKind::Cut || k == RuleKind::Shf;
        case RuleSet::AxCutI:
            return k == RuleKind::Ax || k == RuleKind::Cut || k == RuleKind::CutI;
        case RuleSet::RefSimI:
            return k == RuleKind::Ref || k == RuleKind::Sim || k == RuleKind::SimI;
        case RuleSet::AxCut:
            return k == RuleKind::Ax || k == RuleKind::Cut;
        case RuleSet::Normalized:
            return k == RuleKind::Shf || k == RuleKind::Ref || k == RuleKind::Acc ||
                   k == RuleKind::Pro;
        case RuleSet::Full:
            return true;
    }
    return false;
}

struct Proof {
    Theory theory;
    RuleSet ruleSet = RuleSet::Full;
    std::vector<ProofStep> steps;

    const Implication& conclusion() const {
        if (steps.empty()) throw InvalidInput("proof has no steps");
        return steps.back().formula;
    }
};

// errorStep is the 1-based number of the offending step (as printed), 0 when
// the proof is valid.
struct ProofCheckResult {
    bool valid = true;
    std::size_t errorStep = 0;
    std::string reason;

    static ProofCheckResult ok() { return {}; }
    static ProofCheckResult invalid(std::size_t stepIndex0, std::string why) {
        return {false, stepIndex0 + 1, std::move(why)};
    }
};

// ---------------------------------------------------------------------------
// Rule application

// a/b carry the set parameters of premise-free or set-parameterized rules
// (Ax: (a u b) => a; Ref: a => a; Wea adds a; Aug augments by a; Pro projects
// to b); shift carries i for Shf/CutI/SimI.
struct RuleParams {
    AttributeSet a;
    AttributeSet b;
    Time shift = 0;
};

// Computes the uniquely determined conclusion of one rule application, or
// throws RuleMismatch when the premises violate the rule's side condition.
inline Implication applyRule(RuleKind kind, const std::vector<Implication>& premises,
                             const RuleParams& params = {}) {
    if (static_cast<int>(premises.size()) != premiseCount(kind))
        throw RuleMismatch(std::string(toString(kind)) + ": expected " +
                           std::to_string(premiseCount(kind)) + " premises, got " +
                           std::to_string(premises.size()));
    switch (kind) {
        case RuleKind::Hyp:
            throw RuleMismatch("hyp: not a deduction rule");
        case RuleKind::Ax:
            return {params.a.unionWith(params.b), params.a};
        case RuleKind::Ref:
            return {params.a, params.a};
        case RuleKind::Shf:
            return premises[0].shifted(params.shift);
        case RuleKind::Cut: {
            const Implication& p = premises[0];
            const Implication& q = premises[1];
            if (!p.consequent.isSubsetOf(q.antecedent))
                throw RuleMismatch(
                    "cut: second antecedent does not contain the first consequent");
            return {p.antecedent.unionWith(q.antecedent.difference(p.consequent)),
                    q.consequent};
        }
        case RuleKind::CutI: {
            const Implication& p = premises[0];
            const Implication& q = premises[1];
            AttributeSet b = p.consequent.shifted(-params.shift);
            if (!b.isSubsetOf(q.antecedent))
                throw RuleMismatch(
                    "cuti: second antecedent does not contain the unshifted first "
                    "consequent");
            return {p.antecedent.unionWith(
                        q.antecedent.difference(b).shifted(params.shift)),
                    q.consequent.shifted(params.shift)};
        }
        case RuleKind::Sim: {
            const Implication& p = premises[0];
            const Implication& q = premises[1];
            return {p.antecedent.unionWith(q.antecedent.difference(p.consequent)),
                    q.consequent};
        }
        case RuleKind::SimI: {
            const Implication& p = premises[0];
            const Implication& q = premises[1];
            AttributeSet b = p.consequent.shifted(-params.shift);
            return {p.antecedent.unionWith(
                        q.antecedent.difference(b).shifted(params.shift)),
                    q.consequent.shifted(params.shift)};
        }
        case RuleKind::Acc: {
            const Implication& p = premises[0];
            const Implication& q = premises[1];
            if (!q.antecedent.isSubsetOf(p.consequent))
                throw RuleMismatch(
                    "acc: second antecedent is not contained in the first consequent");
            return {p.antecedent, p.consequent.unionWith(q.consequent)};
        }
        case RuleKind::Pro: {
            const Implication& p = premises[0];
            if (!params.b.isSubsetOf(p.consequent))
                throw RuleMismatch("pro: target is not contained in the consequent");
            return {p.antecedent, params.b};
        }
        case RuleKind::Wea:
            return {premises[0].antecedent.unionWith(params.a), premises[0].consequent};
        case RuleKind::Add: {
            const Implication& p = premises[0];
            const Implication& q = premises[1];
            if (p.antecedent != q.antecedent)
                throw RuleMismatch("add: premise antecedents differ");
            return {p.antecedent, p.consequent.unionWith(q.consequent)};
        }
        case RuleKind::Aug:
            return {params.a.unionWith(premises[0].antecedent),
                    params.a.unionWith(premises[0].consequent)};
        case RuleKind::Tra: {
            const Implication& p = premises[0];
            const Implication& q = premises[1];
            if (q.antecedent != p.consequent)
                throw RuleMismatch("tra: premises do not chain");
            return {p.antecedent, q.consequent};
        }
    }
    throw RuleMismatch("unknown rule");
}

// ---------------------------------------------------------------------------
// Proof checking

namespace detail {

// Exactness convention: two-premise rules recover their schema's implicit set
// canonically (Cut/CutI: C := secondAntecedent \ firstConsequent, requiring
// the remainder to reassemble the second antecedent; Sim/SimI accept the same
// canonical conclusion without the containment requirement, which is the
// derivable generalization; Acc takes the full second consequent). Rules with
// a free set parameter (Ax/Ref/Pro/Wea/Aug) are checked as predicates that
// accept every schema instance.
inline std::optional<std::string> checkStepAgainst(
    const Theory& theory, const std::vector<ProofStep>& steps, std::size_t idx) {
    const ProofStep& step = steps[idx];
    const Justification& j = step.justification;
    const Implication& g = step.formula;

    int arity = premiseCount(j.kind);
    if (arity >= 1 && j.premise1 >= idx)
        return "premise does not precede the step";
    if (arity >= 2 && j.premise2 >= idx)
        return "premise does not precede the step";

    auto equalOrWhy = [&](const Implication& expected) -> std::optional<std::string> {
        if (g == expected) return std::nullopt;
        return std::string("formula does not match the rule's conclusion ") +
               serializeImplication(expected);
    };

    switch (j.kind) {
        case RuleKind::Hyp:
            if (j.index >= theory.size()) return "hypothesis index out of range";
            if (!(g == theory[j.index])) return "formula is not the cited hypothesis";
            return std::nullopt;
        case RuleKind::Ax:
            if (!g.consequent.isSubsetOf(g.antecedent))
                return "ax: consequent is not contained in the antecedent";
            return std::nullopt;
        case RuleKind::Ref:
            if (g.consequent != g.antecedent)
                return "ref: antecedent and consequent differ";
            return std::nullopt;
        case RuleKind::Pro: {
            const Implication& p = steps[j.premise1].formula;
            if (g.antecedent != p.antecedent) return "pro: antecedent changed";
            if (!g.consequent.isSubsetOf(p.consequent))
                return "pro: consequent is not contained in the premise's";
            return std::nullopt;
        }
        case RuleKind::Wea: {
            const Implication& p = steps[j.premise1].formula;
            if (!p.antecedent.isSubsetOf(g.antecedent))
                return "wea: antecedent does not extend the premise's";
            if (g.consequent != p.consequent) return "wea: consequent changed";
            return std::nullopt;
        }
        case RuleKind::Aug: {
            // G == A u B => A u C for some A iff the four containments hold.
            const Implication& p = steps[j.premise1].formula;
            if (!p.antecedent.isSubsetOf(g.antecedent) ||
                !p.consequent.isSubsetOf(g.consequent) ||
                !g.consequent.difference(p.consequent).isSubsetOf(g.antecedent) ||
                !g.antecedent.difference(p.antecedent).isSubsetOf(g.consequent))
                return "aug: formula is not an augmentation of the premise";
            return std::nullopt;
        }
        case RuleKind::Shf:
        case RuleKind::Cut:
        case RuleKind::CutI:
        case RuleKind::Sim:
        case RuleKind::SimI:
        case RuleKind::Acc:
        case RuleKind::Add:
        case RuleKind::Tra: {
            std::vector<Implication> premises;
            premises.push_back(steps[j.premise1].formula);
            if (arity == 2) premises.push_back(steps[j.premise2].formula);
            RuleParams params;
            params.shift = j.shift;
            try {
                return equalOrWhy(applyRule(j.kind, premises, params));
            } catch (const RuleMismatch& e) {
                return std::string(e.what());
            }
        }
    }
    return "unknown rule";
}

// Normalized proofs are Hyp* Shf* Ref Acc* Pro with the Acc steps chaining
// off the Ref step and citing Shf-phase instances.
inline std::optional<std::pair<std::size_t, std::string>> checkNormalizedShape(
    const std::vector<ProofStep>& steps) {
    auto bad = [](std::size_t i, const char* why) {
        return std::make_pair(i, std::string(why));
    };
    std::size_t n = steps.size();
    if (n < 2) return bad(n == 0 ? 0 : n - 1, "normalized proof needs Ref and Pro");
    std::size_t pos = 0;
    while (pos < n && steps[pos].justification.kind == RuleKind::Hyp) ++pos;
    std::size_t hypEnd = pos;
    while (pos < n && steps[pos].justification.kind == RuleKind::Shf) {
        if (steps[pos].justification.premise1 >= hypEnd)
            return bad(pos, "normalized Shf must cite a hypothesis step");
        ++pos;
    }
    std::size_t shfEnd = pos;
    if (pos >= n || steps[pos].justification.kind != RuleKind::Ref)
        return bad(pos < n ? pos : n - 1, "normalized proof needs a Ref step here");
    ++pos;
    while (pos < n && steps[pos].justification.kind == RuleKind::Acc) {
        const Justification& j = steps[pos].justification;
        if (j.premise1 != pos - 1)
            return bad(pos, "normalized Acc must chain off the previous step");
        if (j.premise2 < hypEnd || j.premise2 >= shfEnd)
            return bad(pos, "normalized Acc must cite a Shf-phase instance");
        ++pos;
    }
    if (pos != n - 1 || steps[pos].justification.kind != RuleKind::Pro)
        return bad(pos < n ? pos : n - 1,
                   "normalized proof must end with a single Pro step");
    if (steps[pos].justification.premise1 != pos - 1)
        return bad(pos, "normalized Pro must cite the final chain step");
    return std::nullopt;
}

}  // namespace detail

inline ProofCheckResult checkProof(const Proof& p) {
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        RuleKind k = p.steps[i].justification.kind;
        if (!ruleAllowed(p.ruleSet, k))
            return ProofCheckResult::invalid(
                i, std::string(toString(k)) + " is not allowed in rule set " +
                       toString(p.ruleSet));
        if (auto why = detail::checkStepAgainst(p.theory, p.steps, i))
            return ProofCheckResult::invalid(i, *why);
    }
    if (p.ruleSet == RuleSet::Normalized) {
        if (auto shape = detail::checkNormalizedShape(p.steps))
            return ProofCheckResult::invalid(shape->first, shape->second);
    }
    return ProofCheckResult::ok();
}

// ---------------------------------------------------------------------------
// Normalized proof generation from a closure trace

// Builds the five-phase normalized proof of f from the deterministic
// pseudoLinClosure trace: hypotheses used, their shifted instances, A => A,
// an accumulation chain following the firings actually needed for B (pruned
// backward through each atom's producing firing), and a final projection.
// Returns nullopt when the entailment does not hold.
inline std::optional<Proof> proveByClosure(const Theory& sigma, const Implication& f) {
    EntailmentVerdict verdict = decidePredictiveEntailment(sigma, f);
    if (verdict.status != EntailStatus::Entailed) return std::nullopt;
    const ClosureTrace& trace = verdict.witness;

    // Producer of each derived atom: the firing that first added it.
    std::unordered_map<TimedAttribute, std::size_t, TimedAttributeHash> producer;
    for (std::size_t i = 0; i < trace.firings.size(); ++i)
        for (const TimedAttribute& y : trace.firings[i].added)
            producer.emplace(y, i);

    // Firings transitively needed for the atoms of B outside A.
    std::set<std::size_t> needed;
    std::vector<TimedAttribute> work;
    auto require = [&](const TimedAttribute& y) {
        if (f.antecedent.contains(y)) return;
        std::size_t fi = producer.at(y);
        if (needed.insert(fi).second) {
            const Firing& fir = trace.firings[fi];
            for (const TimedAttribute& z :
                 sigma[fir.formula].antecedent.shifted(fir.shift))
                work.push_back(z);
        }
    };
    for (const TimedAttribute& y : f.consequent) require(y);
    while (!work.empty()) {
        TimedAttribute y = work.back();
        work.pop_back();
        require(y);
    }

    Proof proof;
    proof.theory = sigma;
    proof.ruleSet = RuleSet::Normalized;

    std::unordered_map<std::size_t, std::size_t> hypStep;   // theory idx -> step
    std::unordered_map<std::size_t, std::size_t> instStep;  // firing idx -> step
    std::set<std::size_t> usedFormulas;
    for (std::size_t fi : needed) usedFormulas.insert(trace.firings[fi].formula);
    for (std::size_t k : usedFormulas) {
        hypStep[k] = proof.steps.size();
        proof.steps.push_back({sigma[k], Justification::hyp(k)});
    }
    for (std::size_t fi : needed) {
        const Firing& fir = trace.firings[fi];
        instStep[fi] = proof.steps.size();
        proof.steps.push_back({sigma[fir.formula].shifted(fir.shift),
                               Justification::shf(hypStep[fir.formula], fir.shift)});
    }

    std::size_t chain = proof.steps.size();
    proof.steps.push_back({{f.antecedent, f.antecedent}, Justification::ref()});
    AttributeSet reached = f.antecedent;
    for (std::size_t fi : needed) {
        const Firing& fir = trace.firings[fi];
        reached = reached.unionWith(sigma[fir.formula].consequent.shifted(fir.shift));
        proof.steps.push_back(
            {{f.antecedent, reached}, Justification::acc(chain, instStep[fi])});
        chain = proof.steps.size() - 1;
    }
    proof.steps.push_back({f, Justification::pro(chain)});
    return proof;
}

// ---------------------------------------------------------------------------
// Deduction-theorem witness

struct DeductionWitness {
    std::vector<Time> shifts;  // sorted, duplicates collapsed
    Proof proof;               // over the theory without its final hypothesis
};

// Input: a Valid AX_CUT_SHF-style proof of {} => B whose theory's LAST
// formula is the hypothesis {} => A. Output: shifts i_1..i_n and a proof of
// (A+i_1) u ... u (A+i_n) => B over the remaining theory, built by the
// inductive translation (hypothesis base cases, Cut merging shift lists, Shf
// offsetting them). Each translated step proves exactly
// originalAntecedent u U(A+i) => originalConsequent; Cut results are padded
// back up by Wea where union absorption shrank the antecedent.
inline DeductionWitness extractDeductionWitness(const Proof& p) {
    if (p.theory.empty())
        throw InvalidInput("theory does not end with a {} => A hypothesis");
    const Implication& hypA = p.theory.back();
    if (!hypA.antecedent.empty())
        throw InvalidInput("theory does not end with a {} => A hypothesis");
    ProofCheckResult check = checkProof(p);
    if (!check.valid)
        throw InvalidInput("proof fails checking at step " +
                           std::to_string(check.errorStep) + ": " + check.reason);
    if (p.steps.empty() || !p.conclusion().antecedent.empty())
        throw InvalidInput("proof does not conclude {} => B");
    for (const ProofStep& s : p.steps) {
        RuleKind k = s.justification.kind;
        if (k != RuleKind::Hyp && k != RuleKind::Ax && k != RuleKind::Cut &&
            k != RuleKind::Shf)
            throw InvalidInput(
                "witness extraction expects an Ax/Cut/Shf proof; found " +
                std::string(toString(k)));
    }
    const AttributeSet& a = hypA.consequent;
    const std::size_t hypIdx = p.theory.size() - 1;

    DeductionWitness out;
    out.proof.theory = Theory(p.theory.begin(), p.theory.end() - 1);
    out.proof.ruleSet = RuleSet::Full;

    std::vector<std::set<Time>> shiftSets(p.steps.size());
    std::vector<std::size_t> newIndex(p.steps.size());
    auto lifted = [&](std::size_t oldIdx) {
        AttributeSet ant = p.steps[oldIdx].formula.antecedent;
        for (Time i : shiftSets[oldIdx]) ant = ant.unionWith(a.shifted(i));
        return Implication{ant, p.steps[oldIdx].formula.consequent};
    };

    for (std::size_t idx = 0; idx < p.steps.size(); ++idx) {
        const ProofStep& s = p.steps[idx];
        const Justification& j = s.justification;
        switch (j.kind) {
            case RuleKind::Hyp:
                if (j.index == hypIdx) {
                    // {} => A becomes A => A with shift 0.
                    shiftSets[idx] = {0};
                    newIndex[idx] = out.proof.steps.size();
                    out.proof.steps.push_back({{a, a}, Justification::ref()});
                } else {
                    newIndex[idx] = out.proof.steps.size();
                    out.proof.steps.push_back({s.formula, Justification::hyp(j.index)});
                }
                break;
            case RuleKind::Ax:
                newIndex[idx] = out.proof.steps.size();
                out.proof.steps.push_back({s.formula, Justification::ax()});
                break;
            case RuleKind::Shf: {
                shiftSets[idx].clear();
                for (Time i : shiftSets[j.premise1])
                    shiftSets[idx].insert(checkedAdd(i, j.shift));
                newIndex[idx] = out.proof.steps.size();
                out.proof.steps.push_back(
                    {lifted(idx), Justification::shf(newIndex[j.premise1], j.shift)});
                break;
            }
            case RuleKind::Cut: {
                shiftSets[idx] = shiftSets[j.premise1];
                shiftSets[idx].insert(shiftSets[j.premise2].begin(),
                                      shiftSets[j.premise2].end());
                Implication target = lifted(idx);
                Implication got =
                    applyRule(RuleKind::Cut,
                              {out.proof.steps[newIndex[j.premise1]].formula,
                               out.proof.steps[newIndex[j.premise2]].formula});
                std::size_t cutStep = out.proof.steps.size();
                out.proof.steps.push_back(
                    {got, Justification::cut(newIndex[j.premise1],
                                             newIndex[j.premise2])});
                newIndex[idx] = cutStep;
                if (!(got == target)) {
                    // Union absorption can shrink the antecedent; restore it.
                    newIndex[idx] = out.proof.steps.size();
                    out.proof.steps.push_back({target, Justification::wea(cutStep)});
                }
                break;
            }
            default:
                throw InvalidInput("unreachable rule kind");
        }
    }

    const std::set<Time>& finalShifts = shiftSets[p.steps.size() - 1];
    if (finalShifts.empty()) {
        // The hypothesis was never used; lift {} => B to A => B.
        out.shifts = {0};
        out.proof.steps.push_back(
            {{a, p.conclusion().consequent},
             Justification::wea(out.proof.steps.size() - 1)});
    } else {
        out.shifts.assign(finalShifts.begin(), finalShifts.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rule-set translation

namespace detail {

// Expansion helper: emits steps proving exactly `target` in Ax/Cut terms
// given already-emitted premise indices. Every recipe below was derived from
// the canonical conclusions the checker computes, so the final emitted
// formula always equals `target`.
struct Expander {
    std::vector<ProofStep>& out;

    std::size_t emit(Implication f, Justification j) {
        out.push_back({std::move(f), j});
        return out.size() - 1;
    }
    std::size_t ax(const AttributeSet& ant, const AttributeSet& cons) {
        return emit({ant, cons}, Justification::ax());
    }
    std::size_t cut(std::size_t p, std::size_t q) {
        Implication f = applyRule(RuleKind::Cut, {out[p].formula, out[q].formula});
        return emit(std::move(f), Justification::cut(p, q));
    }
    // A => V, W => X with W inside V  gives  A => V u X.
    std::size_t accViaCut(std::size_t p, std::size_t q) {
        const AttributeSet& v = out[p].formula.consequent;
        const AttributeSet& w = out[q].formula.antecedent;
        const AttributeSet& x = out[q].formula.consequent;
        AttributeSet vx = v.unionWith(x);
        std::size_t t2 = ax(v.unionWith(w).unionWith(x), vx);
        std::size_t t3 = cut(q, t2);
        std::size_t t4 = ax(v, out[t3].formula.antecedent);
        std::size_t t5 = cut(t4, t3);
        return cut(p, t5);
    }
    // A => B, X => D  gives  A u (X \ B) => D (the generalized Sim).
    std::size_t simViaCut(std::size_t p, std::size_t q) {
        const Implication& pf = out[p].formula;
        const Implication& qf = out[q].formula;
        AttributeSet gant =
            pf.antecedent.unionWith(qf.antecedent.difference(pf.consequent));
        std::size_t u1 = ax(gant, pf.antecedent);
        std::size_t u2 = cut(u1, p);
        std::size_t u3 = ax(gant.unionWith(pf.consequent), qf.antecedent);
        std::size_t u4 = cut(u2, u3);
        return cut(u4, q);
    }
};

}  // namespace detail

// Translates a checked proof into the target rule set using the explicit
// derivations between the systems (derived rules unfold into Ax/Cut/Shf;
// Shf unfolds through CutI or SimI; Ax/Cut unfold through Ref/Sim). The
// result proves the same conclusion over the same theory and checks Valid.
// AX_CUT accepts only shift-free proofs (Shf with i = 0 is eliminated).
inline Proof compileToRuleSet(const Proof& p, RuleSet target) {
    if (target == RuleSet::Normalized)
        throw RuleMismatch("cannot compile into NORMALIZED; use proveByClosure");
    ProofCheckResult check = checkProof(p);
    if (!check.valid)
        throw InvalidInput("proof fails checking at step " +
                           std::to_string(check.errorStep) + ": " + check.reason);
    if (target == RuleSet::Full) return p;

    // Stage 1: unfold every justification into Hyp/Ax/Cut/Shf.
    Proof acs;
    acs.theory = p.theory;
    acs.ruleSet = RuleSet::AxCutShf;
    {
        detail::Expander e{acs.steps};
        std::vector<std::size_t> idx(p.steps.size());
        for (std::size_t i = 0; i < p.steps.size(); ++i) {
            const ProofStep& s = p.steps[i];
            const Justification& j = s.justification;
            std::size_t p1 = premiseCount(j.kind) >= 1 ? idx[j.premise1] : 0;
            std::size_t p2 = premiseCount(j.kind) >= 2 ? idx[j.premise2] : 0;
            switch (j.kind) {
                case RuleKind::Hyp:
                case RuleKind::Ax:
                case RuleKind::Cut:
                case RuleKind::Shf: {
                    Justification nj = j;
                    nj.premise1 = p1;
                    nj.premise2 = p2;
                    idx[i] = e.emit(s.formula, nj);
                    break;
                }
                case RuleKind::Ref:
                    idx[i] = e.emit(s.formula, Justification::ax());
                    break;
                case RuleKind::Wea: {
                    std::size_t w = e.ax(s.formula.antecedent,
                                         acs.steps[p1].formula.antecedent);
                    idx[i] = e.cut(w, p1);
                    break;
                }
                case RuleKind::Pro: {
                    std::size_t w = e.ax(acs.steps[p1].formula.consequent,
                                         s.formula.consequent);
                    idx[i] = e.cut(p1, w);
                    break;
                }
                case RuleKind::Tra:
                    idx[i] = e.cut(p1, p2);
                    break;
                case RuleKind::Aug: {
                    // From B => C derive A0 u B => A0 u C where A0 is the
                    // canonical witness of the augmentation.
                    const Implication& prem = acs.steps[p1].formula;
                    AttributeSet a0 = s.formula.antecedent.difference(prem.antecedent)
                                          .unionWith(s.formula.consequent.difference(
                                              prem.consequent));
                    std::size_t t2 =
                        e.ax(a0.unionWith(prem.antecedent).unionWith(prem.consequent),
                             s.formula.consequent);
                    std::size_t t3 = e.cut(p1, t2);
                    std::size_t t4 =
                        e.ax(s.formula.antecedent, acs.steps[t3].formula.antecedent);
                    idx[i] = e.cut(t4, t3);
                    break;
                }
                case RuleKind::Add: {
                    // X => Y, X => Z: augment the second by Y, then cut.
                    const Implication& q = acs.steps[p2].formula;
                    const AttributeSet& y = acs.steps[p1].formula.consequent;
                    AttributeSet a0 = y;
                    std::size_t t2 =
                        e.ax(a0.unionWith(q.antecedent).unionWith(q.consequent),
                             a0.unionWith(q.consequent));
                    std::size_t t3 = e.cut(p2, t2);
                    std::size_t t4 = e.ax(a0.unionWith(q.antecedent),
                                          acs.steps[t3].formula.antecedent);
                    std::size_t t5 = e.cut(t4, t3);
                    idx[i] = e.cut(p1, t5);
                    break;
                }
                case RuleKind::Acc:
                    idx[i] = e.accViaCut(p1, p2);
                    break;
                case RuleKind::Sim:
                    idx[i] = e.simViaCut(p1, p2);
                    break;
                case RuleKind::SimI: {
                    std::size_t sh = e.emit(
                        acs.steps[p2].formula.shifted(j.shift),
                        Justification::shf(p2, j.shift));
                    idx[i] = e.simViaCut(p1, sh);
                    break;
                }
                case RuleKind::CutI: {
                    std::size_t sh = e.emit(
                        acs.steps[p2].formula.shifted(j.shift),
                        Justification::shf(p2, j.shift));
                    idx[i] = e.cut(p1, sh);
                    break;
                }
            }
        }
    }
    if (target == RuleSet::AxCutShf) return acs;

    // Stage 2: specialize Ax/Cut/Shf into the target system.
    Proof out;
    out.theory = p.theory;
    out.ruleSet = target;
    std::vector<std::size_t> idx(acs.steps.size());
    auto emit = [&](Implication f, Justification j) {
        out.steps.push_back({std::move(f), j});
        return out.steps.size() - 1;
    };
    for (std::size_t i = 0; i < acs.steps.size(); ++i) {
        const ProofStep& s = acs.steps[i];
        const Justification& j = s.justification;
        std::size_t p1 = premiseCount(j.kind) >= 1 ? idx[j.premise1] : 0;
        std::size_t p2 = premiseCount(j.kind) >= 2 ? idx[j.premise2] : 0;
        switch (j.kind) {
            case RuleKind::Hyp:
                idx[i] = emit(s.formula, Justification::hyp(j.index));
                break;
            case RuleKind::Ax:
                if (target == RuleSet::RefSimI) {
                    std::size_t r1 = emit({s.formula.antecedent, s.formula.antecedent},
                                          Justification::ref());
                    std::size_t r2 = emit({s.formula.consequent, s.formula.consequent},
                                          Justification::ref());
                    idx[i] = emit(s.formula, Justification::sim(r1, r2));
                } else {
                    idx[i] = emit(s.formula, Justification::ax());
                }
                break;
            case RuleKind::Cut:
                // Sim's canonical conclusion coincides with Cut's whenever
                // Cut's side condition holds.
                idx[i] = emit(s.formula, target == RuleSet::RefSimI
                                             ? Justification::sim(p1, p2)
                                             : Justification::cut(p1, p2));
                break;
            case RuleKind::Shf: {
                const Implication& prem = acs.steps[j.premise1].formula;
                if (target == RuleSet::AxCutI) {
                    std::size_t e0 = emit({AttributeSet{}, AttributeSet{}},
                                          Justification::ax());
                    idx[i] = emit(s.formula, Justification::cutI(e0, p1, j.shift));
                } else if (target == RuleSet::RefSimI) {
                    std::size_t e0 = emit({AttributeSet{}, AttributeSet{}},
                                          Justification::ref());
                    idx[i] = emit(s.formula, Justification::simI(e0, p1, j.shift));
                } else if (j.shift == 0) {
                    // AX_CUT: an identity shift is Cut against A => A.
                    std::size_t e0 =
                        emit({prem.antecedent, prem.antecedent}, Justification::ax());
                    idx[i] = emit(s.formula, Justification::cut(e0, p1));
                } else {
                    throw RuleMismatch(
                        "a non-zero shift cannot be expressed in AX_CUT");
                }
                break;
            }
            default:
                throw RuleMismatch("unreachable rule kind after stage 1");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Proof text format: one step per line, `N. <formula>  [<rule> <args>]` with
// 1-based step and hypothesis numbers.

inline std::string serializeJustification(const Justification& j) {
    std::string out = toString(j.kind);
    if (j.kind == RuleKind::Hyp) {
        out += " " + std::to_string(j.index + 1);
        return out;
    }
    int arity = premiseCount(j.kind);
    if (arity >= 1) out += " " + std::to_string(j.premise1 + 1);
    if (arity >= 2) out += " " + std::to_string(j.premise2 + 1);
    if (hasShiftParameter(j.kind)) out += " i=" + std::to_string(j.shift);
    return out;
}

inline std::string serializeProof(const Proof& p) {
    std::string out;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        out += std::to_string(i + 1) + ". " +
               serializeImplication(p.steps[i].formula) + "  [" +
               serializeJustification(p.steps[i].justification) + "]\n";
    }
    return out;
}

// Parses the serialized form back over the given theory and rule set.
// Step numbers must be 1..n in order; premise references must be earlier
// steps (checked structurally here, semantically by checkProof).
inline Proof parseProof(std::string_view text, Theory theory,
                        RuleSet ruleSet = RuleSet::Full) {
    Proof p;
    p.theory = std::move(theory);
    p.ruleSet = ruleSet;

    int lineNo = 0;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> void {
        throw SyntaxError(lineNo, 1, why);
    };
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++lineNo;
        // Trim and skip blanks/comments.
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t' ||
                                 line.front() == '\r'))
            line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' ||
                                 line.back() == '\r'))
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        std::size_t dot = line.find('.');
        if (dot == std::string_view::npos) fail("expected 'N.' step number");
        std::size_t number = 0;
        for (char c : line.substr(0, dot)) {
            if (c < '0' || c > '9') fail("expected 'N.' step number");
            number = number * 10 + static_cast<std::size_t>(c - '0');
        }
        if (number != p.steps.size() + 1)
            fail("step number " + std::to_string(number) + " out of order");

        std::size_t open = line.rfind('[');
        if (open == std::string_view::npos || line.back() != ']')
            fail("expected '[<rule> ...]' justification");
        std::string_view formulaText = line.substr(dot + 1, open - dot - 1);
        std::string_view ruleText = line.substr(open + 1, line.size() - open - 2);

        ProofStep step;
        try {
            step.formula = parseImplication(formulaText);
        } catch (const SyntaxError& e) {
            fail(std::string("bad formula: ") + e.what());
        }

        std::vector<std::string> tokens;
        std::size_t t = 0;
        while (t < ruleText.size()) {
            while (t < ruleText.size() && ruleText[t] == ' ') ++t;
            std::size_t start = t;
            while (t < ruleText.size() && ruleText[t] != ' ') ++t;
            if (t > start) tokens.emplace_back(ruleText.substr(start, t - start));
        }
        if (tokens.empty()) fail("empty justification");
        auto kind = ruleKindFromString(tokens[0]);
        if (!kind) fail("unknown rule '" + tokens[0] + "'");
        Justification j;
        j.kind = *kind;
        std::size_t want = static_cast<std::size_t>(
            (j.kind == RuleKind::Hyp ? 1 : premiseCount(j.kind)) +
            (hasShiftParameter(j.kind) ? 1 : 0));
        if (tokens.size() - 1 != want)
            fail("rule '" + tokens[0] + "' expects " + std::to_string(want) +
                 " argument(s)");
        auto parseRef = [&](const std::string& tok) -> std::size_t {
            std::size_t v = 0;
            if (tok.empty()) fail("expected a step number");
            for (char c : tok) {
                if (c < '0' || c > '9') fail("expected a step number, got '" + tok + "'");
                v = v * 10 + static_cast<std::size_t>(c - '0');
            }
            if (v == 0) fail("step numbers are 1-based");
            return v - 1;
        };
        std::size_t next = 1;
        if (j.kind == RuleKind::Hyp) {
            j.index = parseRef(tokens[next++]);
        } else {
            if (premiseCount(j.kind) >= 1) j.premise1 = parseRef(tokens[next++]);
            if (premiseCount(j.kind) >= 2) j.premise2 = parseRef(tokens[next++]);
        }
        if (hasShiftParameter(j.kind)) {
            const std::string& tok = tokens[next];
            if (tok.size() < 3 || tok[0] != 'i' || tok[1] != '=')
                fail("expected 'i=<shift>', got '" + tok + "'");
            try {
                std::size_t used = 0;
                j.shift = std::stoll(tok.substr(2), &used);
                if (used != tok.size() - 2) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail("bad shift '" + tok + "'");
            }
        }
        step.justification = j;
        p.steps.push_back(std::move(step));
    }
    return p;
}

}  // namespace tai
