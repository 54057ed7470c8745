#pragma once

// Rule mining over finite timed datasets (maxspan / support / confidence
// thresholds) and redundancy reduction of predictive theories through the
// entailment engine.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "tai/closure.hpp"
#include "tai/core.hpp"
#include "tai/semantics.hpp"
#include "tai/textio.hpp"

namespace tai {

// Exact rational, used for confidence values and thresholds.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational reduced() const {
        std::int64_t g = std::gcd(num, den);
        if (g == 0) return {0, 1};
        return {num / g, den / g};
    }
    double value() const { return den == 0 ? 0.0 : double(num) / double(den); }

    std::string str() const {
        Rational r = reduced();
        if (r.den == 1) return std::to_string(r.num);
        return std::to_string(r.num) + "/" + std::to_string(r.den);
    }
};

// Accepts "1", "3/4", or decimal forms like "0.75" (converted exactly).
inline Rational parseRational(std::string_view text) {
    auto fail = [&] {
        throw Error("cannot parse rational '" + std::string(text) + "'");
    };
    auto digits = [&](std::string_view s) -> std::int64_t {
        if (s.empty()) fail();
        std::int64_t v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') fail();
            v = checkedAdd(checkedMul(v, 10), c - '0');
        }
        return v;
    };
    std::size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        Rational r{digits(text.substr(0, slash)), digits(text.substr(slash + 1))};
        if (r.den == 0) fail();
        return r;
    }
    std::size_t dot = text.find('.');
    if (dot == std::string_view::npos) return {digits(text), 1};
    std::string_view frac = text.substr(dot + 1);
    Rational r{digits(text.substr(0, dot)), 1};
    for (char c : frac) {
        if (c < '0' || c > '9') fail();
        r.num = checkedAdd(checkedMul(r.num, 10), c - '0');
        r.den = checkedMul(r.den, 10);
    }
    return r;
}

struct MiningParams {
    Time maxspan = 0;
    std::size_t minSupport = 1;
    Rational minConfidence{1, 1};
    std::size_t maxAntecedentSize = 3;
    std::size_t maxConsequentSize = 3;
    unsigned jobs = 1;
};

// rule is predictive and in canonical shift (l(antecedent) = 0);
// confidence = support / anchors where anchors counts the antecedent
// embeddings whose full rule span fits inside the dataset window (see the
// README note on the denominator convention).
struct MinedRule {
    Implication rule;
    std::size_t support = 0;
    std::size_t anchors = 0;

    Rational confidence() const {
        return Rational{static_cast<std::int64_t>(support),
                        static_cast<std::int64_t>(anchors)};
    }
};

// |{ i | S+i inside M }|; finite because M is.
inline std::size_t support(const AttributeSet& m, const AttributeSet& s) {
    if (s.empty()) throw EmptySetError("support: S must be non-empty");
    return embeddings(m, s).size();
}

namespace detail {

inline void validate(const MiningParams& p) {
    if (p.maxspan < 0) throw Error("mine: maxspan must be non-negative");
    if (p.minSupport < 1) throw Error("mine: minSupport must be positive");
    Rational c = p.minConfidence;
    if (c.num < 1 || c.den < 1 || c.num > c.den)
        throw Error("mine: minConfidence must lie in (0, 1]");
    if (p.maxAntecedentSize < 1 || p.maxConsequentSize < 1)
        throw Error("mine: size caps must be positive");
}

// Enumerates size-1..cap index combinations of pool, calling fn on each.
template <typename Fn>
void combinations(std::size_t poolSize, std::size_t cap,
                  std::vector<std::size_t>& pick, std::size_t start, Fn&& fn) {
    for (std::size_t i = start; i < poolSize; ++i) {
        pick.push_back(i);
        fn(pick);
        if (pick.size() < cap) combinations(poolSize, cap, pick, i + 1, fn);
        pick.pop_back();
    }
}

}  // namespace detail

// Mines every canonical predictive rule A => B over M's attribute alphabet
// with l(A) = 0, u(A) <= l(B), disjoint sides, u(A u B) <= maxspan, and the
// support/confidence thresholds. Candidate evaluation is read-only over M;
// with jobs > 1 antecedents are processed in parallel and merged in
// deterministic order before the final canonical sort.
inline std::vector<MinedRule> mine(const AttributeSet& m, const MiningParams& params) {
    detail::validate(params);
    if (m.empty()) return {};
    const Time upperM = m.upper();

    std::vector<Attr> names;
    for (const TimedAttribute& a : m)
        if (names.empty() || !(names.back() == a.attr)) names.push_back(a.attr);

    std::vector<TimedAttribute> pool;
    for (Attr name : names)
        for (Time d = 0; d <= params.maxspan; ++d) pool.emplace_back(name, d);

    // All candidate antecedents (canonical shift: some atom at time 0).
    std::vector<AttributeSet> antecedents;
    {
        std::vector<std::size_t> pick;
        detail::combinations(
            pool.size(), params.maxAntecedentSize, pick, 0,
            [&](const std::vector<std::size_t>& sel) {
                bool anchored = false;
                for (std::size_t i : sel) anchored = anchored || pool[i].time == 0;
                if (!anchored) return;
                std::vector<TimedAttribute> atoms;
                for (std::size_t i : sel) atoms.push_back(pool[i]);
                antecedents.emplace_back(std::move(atoms));
            });
    }

    auto mineOne = [&](const AttributeSet& a, std::vector<MinedRule>& out) {
        std::vector<Time> anchors = embeddings(m, a);
        if (anchors.size() < params.minSupport) return;
        const Time ua = a.upper();

        std::vector<TimedAttribute> bpool;
        for (const TimedAttribute& q : pool)
            if (q.time >= ua && !a.contains(q)) bpool.push_back(q);

        std::vector<std::size_t> pick;
        detail::combinations(
            bpool.size(), params.maxConsequentSize, pick, 0,
            [&](const std::vector<std::size_t>& sel) {
                Time span = ua;
                for (std::size_t i : sel) span = std::max(span, bpool[i].time);
                std::size_t sup = 0, fitting = 0;
                for (Time i : anchors) {
                    if (i + span > upperM) continue;
                    ++fitting;
                    bool all = true;
                    for (std::size_t k : sel)
                        all = all && m.contains(bpool[k].shifted(i));
                    if (all) ++sup;
                }
                if (sup < params.minSupport) return;
                // support/fitting >= num/den, in integers.
                if (static_cast<std::int64_t>(sup) * params.minConfidence.den <
                    params.minConfidence.num * static_cast<std::int64_t>(fitting))
                    return;
                std::vector<TimedAttribute> atoms;
                for (std::size_t k : sel) atoms.push_back(bpool[k]);
                out.push_back({{a, AttributeSet(std::move(atoms))}, sup, fitting});
            });
    };

    std::vector<std::vector<MinedRule>> perAntecedent(antecedents.size());
    unsigned jobs = std::max(1u, params.jobs);
    jobs = std::min<unsigned>(jobs, std::thread::hardware_concurrency() > 0
                                        ? std::thread::hardware_concurrency()
                                        : 1);
    if (jobs <= 1 || antecedents.size() < 2) {
        for (std::size_t i = 0; i < antecedents.size(); ++i)
            mineOne(antecedents[i], perAntecedent[i]);
    } else {
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < jobs; ++t)
            workers.emplace_back([&, t] {
                for (std::size_t i = t; i < antecedents.size(); i += jobs)
                    mineOne(antecedents[i], perAntecedent[i]);
            });
        for (std::thread& w : workers) w.join();
    }

    std::vector<MinedRule> out;
    for (std::vector<MinedRule>& part : perAntecedent)
        for (MinedRule& r : part) out.push_back(std::move(r));
    std::sort(out.begin(), out.end(), [](const MinedRule& x, const MinedRule& y) {
        return x.rule < y.rule;
    });
    return out;
}

// Single in-order pass, removing each formula the rest still entails;
// idempotent, and the result is mutually entailing with the input.
inline Theory reduceTheory(const Theory& sigma) {
    requirePredictive(sigma);
    std::vector<bool> alive(sigma.size(), true);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        Theory rest;
        for (std::size_t k = 0; k < sigma.size(); ++k)
            if (alive[k] && k != i) rest.push_back(sigma[k]);
        if (decidePredictiveEntailment(rest, sigma[i]).status ==
            EntailStatus::Entailed)
            alive[i] = false;
    }
    Theory out;
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (alive[i]) out.push_back(sigma[i]);
    return out;
}

// Sidecar report: one mined rule per line, tab-separated.
inline std::string formatMiningReport(const std::vector<MinedRule>& rules) {
    std::string out = "rule\tsupport\tconfidence\n";
    for (const MinedRule& r : rules) {
        out += serializeImplication(r.rule) + "\t" + std::to_string(r.support) +
               "\t" + r.confidence().str() + "\n";
    }
    return out;
}

}  // namespace tai
