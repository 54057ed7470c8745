#pragma once

// Command-line front end: orchestrates parsing, model checking, closure,
// entailment, proofs, mining, hardness-instance generation, and LTL export
// over .tai/.csv/.prf files.
//
// Exit codes: 0 affirmative/success, 1 negative answer, 2 unknown,
// 64 usage error, 65 input/format error. Results go to the output stream,
// diagnostics to the error stream.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tai/closure.hpp"
#include "tai/complexity.hpp"
#include "tai/core.hpp"
#include "tai/grounding.hpp"
#include "tai/mining.hpp"
#include "tai/proofs.hpp"
#include "tai/semantics.hpp"
#include "tai/textio.hpp"

namespace tai {

namespace cli_detail {

using nlohmann::json;

inline std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Inline values win over file paths: anything containing "=>" (theories,
// queries) or starting with '{' (sets) is parsed directly.
inline Theory loadTheory(const std::string& value, std::ostream& err) {
    TheoryDocument doc = parseTheory(
        value.find("=>") != std::string::npos ? value : readFile(value));
    for (const std::string& w : doc.warnings) err << "warning: " << w << "\n";
    return doc.formulas;
}

inline Implication loadImplication(const std::string& value) {
    if (value.find("=>") != std::string::npos) return parseImplication(value);
    TheoryDocument doc = parseTheory(readFile(value));
    if (doc.formulas.size() != 1)
        throw Error("'" + value + "' must contain exactly one formula");
    return doc.formulas.front();
}

inline AttributeSet loadSet(const std::string& value) {
    std::string text =
        value.find('{') != std::string::npos ? value : readFile(value);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' ||
                             text.back() == ' ' || text.back() == '\t'))
        text.pop_back();
    return parseSet(text);
}

inline AttributeSet loadDataset(const std::string& path) {
    return toTimedSet(ingestCSV(readFile(path)));
}

inline std::pair<Time, Time> parseWindow(const std::string& text) {
    std::size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw Error("window must be LO:HI, got '" + text + "'");
    try {
        std::size_t used = 0;
        Time lo = std::stoll(text.substr(0, colon), &used);
        if (used != colon) throw Error("");
        std::string hiText = text.substr(colon + 1);
        Time hi = std::stoll(hiText, &used);
        if (used != hiText.size()) throw Error("");
        return {lo, hi};
    } catch (const std::exception&) {
        throw Error("window must be LO:HI, got '" + text + "'");
    }
}

inline std::string atomText(const TimedAttribute& a) {
    return std::string(a.attr.name()) + "@" + std::to_string(a.time);
}

inline json setToJson(const AttributeSet& s) {
    json arr = json::array();
    for (const TimedAttribute& a : s) arr.push_back(atomText(a));
    return arr;
}

inline json ratToJson(const Rational& r) {
    Rational red = r.reduced();
    return json{{"num", red.num}, {"den", red.den}};
}

inline std::string joinShifts(const std::vector<Time>& shifts) {
    std::string out;
    for (Time i : shifts) {
        if (!out.empty()) out += " ";
        out += std::to_string(i);
    }
    return out;
}

// ---- check -----------------------------------------------------------------

struct CheckOptions {
    std::string data;
    std::string theory;
    bool jsonOut = false;
};

inline int runCheck(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
    AttributeSet m = loadDataset(opt.data);
    Theory sigma = loadTheory(opt.theory, err);
    auto report = checkTheoryValidity(m, sigma);

    bool allHold = true;
    json results = json::array();
    for (std::size_t i = 0; i < report.size(); ++i) {
        const auto& [formula, res] = report[i];
        allHold = allHold && res.holds;
        if (opt.jsonOut) {
            json r{{"formula", serializeImplication(formula)},
                   {"holds", res.holds}};
            r["counterexampleShift"] = res.counterexampleShift
                                           ? json(*res.counterexampleShift)
                                           : json(nullptr);
            json w = json::array();
            for (Time t : res.witnesses) w.push_back(t);
            r["witnesses"] = w;
            results.push_back(std::move(r));
            continue;
        }
        out << (i + 1) << ". " << serializeImplication(formula) << ": ";
        if (res.holds) {
            out << "holds\n";
        } else if (!res.counterexampleShift) {
            out << "FAILS (empty antecedent with non-empty consequent; "
                   "false in every finite model)\n";
        } else {
            out << "FAILS (counterexample shifts: " << joinShifts(res.witnesses)
                << ")\n";
        }
    }
    if (opt.jsonOut)
        out << json{{"results", results}, {"allHold", allHold}}.dump(2) << "\n";
    return allHold ? 0 : 1;
}

// ---- closure ---------------------------------------------------------------

struct ClosureOptions {
    std::string theory;
    std::string seed;
    bool general = false;
    std::optional<Time> max;
    std::optional<std::string> window;
    std::optional<std::size_t> rounds;
    bool jsonOut = false;
};

inline int runClosure(const ClosureOptions& opt, std::ostream& out,
                      std::ostream& err) {
    Theory sigma = loadTheory(opt.theory, err);
    AttributeSet seed = loadSet(opt.seed);
    if (!opt.general) {
        if (!opt.max) throw Error("closure: --max is required in predictive mode");
        ClosureTrace trace = pseudoLinClosure(sigma, seed, *opt.max);
        if (opt.jsonOut) {
            out << json{{"finalSet", setToJson(trace.finalSet)},
                        {"size", trace.finalSet.size()},
                        {"firings", trace.firings.size()},
                        {"max", *opt.max}}
                       .dump(2)
                << "\n";
        } else {
            out << serializeSet(trace.finalSet) << "\n";
            err << "firings: " << trace.firings.size() << "\n";
        }
        return 0;
    }
    if (!opt.window) throw Error("closure: --window is required with --general");
    auto [lo, hi] = parseWindow(*opt.window);
    std::size_t rounds = opt.rounds.value_or(
        std::max<std::size_t>(1, 10 * sigma.size() *
                                     static_cast<std::size_t>(hi - lo + 1)));
    auto [trace, saturated] = boundedClosure(sigma, seed, lo, hi, rounds);
    if (opt.jsonOut) {
        out << json{{"finalSet", setToJson(trace.finalSet)},
                    {"size", trace.finalSet.size()},
                    {"firings", trace.firings.size()},
                    {"saturated", saturated},
                    {"window", json::array({lo, hi})},
                    {"maxRounds", rounds}}
                   .dump(2)
            << "\n";
    } else {
        out << serializeSet(trace.finalSet) << "\n";
        out << "saturated: " << (saturated ? "yes" : "no") << "\n";
        err << "firings: " << trace.firings.size() << "\n";
    }
    return 0;
}

// ---- entail ----------------------------------------------------------------

struct EntailOptions {
    std::string theory;
    std::string query;
    bool general = false;
    std::optional<std::string> window;
    std::optional<std::size_t> rounds;
    Time windowFactor = 4;
    bool jsonOut = false;
};

inline int exitCodeFor(EntailStatus s) {
    switch (s) {
        case EntailStatus::Entailed: return 0;
        case EntailStatus::NotEntailed: return 1;
        default: return 2;
    }
}

inline int runEntail(const EntailOptions& opt, std::ostream& out,
                     std::ostream& err) {
    Theory sigma = loadTheory(opt.theory, err);
    Implication query = loadImplication(opt.query);
    EntailmentVerdict v;
    if (!opt.general) {
        v = decidePredictiveEntailment(sigma, query);
    } else {
        GeneralBudget b = defaultGeneralBudget(sigma, query, opt.windowFactor);
        if (opt.window) {
            auto [lo, hi] = parseWindow(*opt.window);
            b.lo = lo;
            b.hi = hi;
            b.maxRounds = std::max<std::size_t>(
                1, 10 * sigma.size() * static_cast<std::size_t>(hi - lo + 1));
        }
        if (opt.rounds) b.maxRounds = *opt.rounds;
        v = decideGeneralEntailment(sigma, query, b.lo, b.hi, b.maxRounds);
    }
    if (opt.jsonOut) {
        json j{{"status", toString(v.status)},
               {"finalSetSize", v.witness.finalSet.size()}};
        j["max"] = v.budget.max ? json(*v.budget.max) : json(nullptr);
        j["window"] = v.budget.window
                          ? json::array({v.budget.window->first,
                                         v.budget.window->second})
                          : json(nullptr);
        j["maxRounds"] =
            v.budget.maxRounds ? json(*v.budget.maxRounds) : json(nullptr);
        j["saturated"] =
            v.certificate ? json(v.certificate->saturated) : json(nullptr);
        j["fixpointIsModel"] =
            v.certificate ? json(v.certificate->fixpointIsModel) : json(nullptr);
        out << j.dump(2) << "\n";
    } else {
        out << toString(v.status) << "\n";
        if (v.status == EntailStatus::Unknown && v.budget.window)
            err << "budget exhausted: window [" << v.budget.window->first << ", "
                << v.budget.window->second << "], rounds "
                << *v.budget.maxRounds
                << "; widen --window or raise --rounds\n";
    }
    return exitCodeFor(v.status);
}

// ---- prove -----------------------------------------------------------------

struct ProveOptions {
    std::string theory;
    std::string query;
    std::string rules = "NORMALIZED";
    bool jsonOut = false;
};

inline int runProve(const ProveOptions& opt, std::ostream& out,
                    std::ostream& err) {
    Theory sigma = loadTheory(opt.theory, err);
    Implication query = loadImplication(opt.query);
    auto target = ruleSetFromString(opt.rules);
    if (!target) throw Error("unknown rule set '" + opt.rules + "'");
    std::optional<Proof> proof = proveByClosure(sigma, query);
    if (!proof) {
        if (opt.jsonOut)
            out << json{{"status", "NOT_ENTAILED"}}.dump(2) << "\n";
        else
            err << "NOT_ENTAILED\n";
        return 1;
    }
    Proof final =
        *target == RuleSet::Normalized ? *proof : compileToRuleSet(*proof, *target);
    if (opt.jsonOut) {
        out << json{{"status", "ENTAILED"},
                    {"ruleSet", toString(final.ruleSet)},
                    {"proof", serializeProof(final)}}
                   .dump(2)
            << "\n";
    } else {
        out << serializeProof(final);
    }
    return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyOptions {
    std::string proof;
    std::string theory;
    std::string rules = "FULL";
    bool jsonOut = false;
};

inline int runVerify(const VerifyOptions& opt, std::ostream& out,
                     std::ostream& err) {
    Theory sigma = loadTheory(opt.theory, err);
    auto rules = ruleSetFromString(opt.rules);
    if (!rules) throw Error("unknown rule set '" + opt.rules + "'");
    Proof p = parseProof(readFile(opt.proof), std::move(sigma), *rules);
    ProofCheckResult res = checkProof(p);
    if (opt.jsonOut) {
        json j{{"valid", res.valid}};
        j["errorStep"] = res.valid ? json(nullptr) : json(res.errorStep);
        j["reason"] = res.valid ? json(nullptr) : json(res.reason);
        out << j.dump(2) << "\n";
    } else if (res.valid) {
        out << "VALID\n";
    } else {
        out << "INVALID at step " << res.errorStep << ": " << res.reason << "\n";
    }
    return res.valid ? 0 : 1;
}

// ---- mine ------------------------------------------------------------------

struct MineOptions {
    std::string data;
    Time maxspan = 0;
    std::size_t minSupport = 1;
    std::string minConfidence = "1";
    std::size_t maxAntecedent = 3;
    std::size_t maxConsequent = 3;
    unsigned jobs = 1;
    std::optional<std::string> report;
    bool jsonOut = false;
};

inline int runMine(const MineOptions& opt, std::ostream& out, std::ostream& err) {
    AttributeSet m = loadDataset(opt.data);
    MiningParams params;
    params.maxspan = opt.maxspan;
    params.minSupport = opt.minSupport;
    params.minConfidence = parseRational(opt.minConfidence);
    params.maxAntecedentSize = opt.maxAntecedent;
    params.maxConsequentSize = opt.maxConsequent;
    params.jobs = opt.jobs;
    std::vector<MinedRule> rules = mine(m, params);

    if (opt.report) {
        std::ofstream rep(*opt.report, std::ios::binary);
        if (!rep) throw Error("cannot write file '" + *opt.report + "'");
        rep << formatMiningReport(rules);
    }
    if (opt.jsonOut) {
        json arr = json::array();
        for (const MinedRule& r : rules)
            arr.push_back(json{{"rule", serializeImplication(r.rule)},
                               {"support", r.support},
                               {"confidence", ratToJson(r.confidence())}});
        out << json{{"rules", arr}}.dump(2) << "\n";
    } else {
        for (const MinedRule& r : rules)
            out << serializeImplication(r.rule) << "\n";
        err << "mined " << rules.size() << " rule(s)\n";
    }
    return 0;
}

// ---- reduce ----------------------------------------------------------------

struct ReduceOptions {
    std::string theory;
    bool jsonOut = false;
};

inline int runReduce(const ReduceOptions& opt, std::ostream& out,
                     std::ostream& err) {
    Theory sigma = loadTheory(opt.theory, err);
    Theory reduced = reduceTheory(sigma);
    if (opt.jsonOut) {
        json arr = json::array();
        for (const Implication& f : reduced)
            arr.push_back(serializeImplication(f));
        out << json{{"theory", arr}}.dump(2) << "\n";
    } else {
        out << serializeTheory(reduced);
        err << "kept " << reduced.size() << " of " << sigma.size()
            << " formula(s)\n";
    }
    return 0;
}

// ---- gen-subsetsum ---------------------------------------------------------

struct GenOptions {
    std::string values;
    Time target = 0;
    bool solve = false;
    Time cap = 1'000'000;
    bool jsonOut = false;
};

inline std::vector<Time> parseValueList(const std::string& text) {
    std::vector<Time> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string item = text.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? text.size() : comma + 1;
        std::size_t a = item.find_first_not_of(" \t");
        if (a == std::string::npos) throw Error("empty value in --values list");
        std::size_t b = item.find_last_not_of(" \t");
        item = item.substr(a, b - a + 1);
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw Error("");
        } catch (const std::exception&) {
            throw Error("bad integer '" + item + "' in --values list");
        }
    }
    return out;
}

inline int runGen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
    SubsetSumInstance inst;
    inst.values = parseValueList(opt.values);
    inst.target = opt.target;
    auto [sigma, query] = genSubsetSumTheory(inst);
    std::optional<bool> solvable;
    if (opt.solve) solvable = solveSubsetSumDP(inst, opt.cap);
    if (opt.jsonOut) {
        json arr = json::array();
        for (const Implication& f : sigma) arr.push_back(serializeImplication(f));
        json j{{"theory", arr}, {"query", serializeImplication(query)}};
        j["solvable"] = solvable ? json(*solvable) : json(nullptr);
        out << j.dump(2) << "\n";
    } else {
        out << serializeTheory(sigma);
        out << "# query: " << serializeImplication(query) << "\n";
        if (solvable) out << "# solvable: " << (*solvable ? "yes" : "no") << "\n";
    }
    (void)err;
    return solvable && !*solvable ? 1 : 0;
}

// ---- export-ltl ------------------------------------------------------------

struct ExportOptions {
    std::string theory;
    std::string query;
    bool jsonOut = false;
};

inline int runExport(const ExportOptions& opt, std::ostream& out,
                     std::ostream& err) {
    Theory sigma = loadTheory(opt.theory, err);
    Implication query = loadImplication(opt.query);
    LTLDocument doc = exportLTL(sigma, query);
    if (opt.jsonOut) {
        out << json{{"ltl", doc.text},
                    {"operatorCounts",
                     json{{"G", doc.countG},
                          {"X", doc.countX},
                          {"Y", doc.countY},
                          {"maxXChain", doc.maxXChain},
                          {"maxYChain", doc.maxYChain}}}}
                   .dump(2)
            << "\n";
    } else {
        out << doc.text;
        err << "operators: G=" << doc.countG << " X=" << doc.countX
            << " Y=" << doc.countY << " maxXChain=" << doc.maxXChain
            << " maxYChain=" << doc.maxYChain << "\n";
    }
    return 0;
}

}  // namespace cli_detail

// Entry point shared by the binary and the tests. args excludes the program
// name and is given in normal order.
inline int runCli(std::vector<std::string> args, std::istream& in,
                  std::ostream& out, std::ostream& err) {
    (void)in;
    using namespace cli_detail;

    CLI::App app{"Reasoning over attribute implications annotated by time points"};
    app.require_subcommand(1);

    CheckOptions check;
    auto* cmdCheck =
        app.add_subcommand("check", "Model-check each theory formula in a dataset");
    cmdCheck->add_option("--data", check.data, "Dataset CSV file")->required();
    cmdCheck
        ->add_option("--theory", check.theory,
                     "Theory file or inline formula text")
        ->required();
    std::string checkFormat = "text";
    cmdCheck->add_option("--format", checkFormat, "text or json");

    ClosureOptions closure;
    auto* cmdClosure = app.add_subcommand(
        "closure", "Compute the closure of a seed set under a theory");
    cmdClosure->add_option("--theory", closure.theory, "Theory file or inline")
        ->required();
    cmdClosure->add_option("--seed", closure.seed, "Seed set, e.g. \"{x@0}\"")
        ->required();
    cmdClosure->add_flag("--general", closure.general,
                         "Windowed closure for arbitrary theories");
    Time closureMax = 0;
    auto* optMax = cmdClosure->add_option(
        "--max", closureMax, "Window top for the predictive closure");
    std::string closureWindow;
    auto* optWin =
        cmdClosure->add_option("--window", closureWindow, "LO:HI window");
    std::size_t closureRounds = 0;
    auto* optRounds =
        cmdClosure->add_option("--rounds", closureRounds, "Round budget");
    std::string closureFormat = "text";
    cmdClosure->add_option("--format", closureFormat, "text or json");

    EntailOptions entail;
    auto* cmdEntail =
        app.add_subcommand("entail", "Decide whether a theory entails a query");
    cmdEntail->add_option("--theory", entail.theory, "Theory file or inline")
        ->required();
    cmdEntail->add_option("--query", entail.query, "Query file or inline formula")
        ->required();
    cmdEntail->add_flag("--general", entail.general,
                        "Budgeted decision for arbitrary theories");
    std::string entailWindow;
    auto* optEntailWin =
        cmdEntail->add_option("--window", entailWindow, "LO:HI window");
    std::size_t entailRounds = 0;
    auto* optEntailRounds =
        cmdEntail->add_option("--rounds", entailRounds, "Round budget");
    cmdEntail->add_option("--window-factor", entail.windowFactor,
                          "Default window padding factor (k * span)");
    std::string entailFormat = "text";
    cmdEntail->add_option("--format", entailFormat, "text or json");

    ProveOptions prove;
    auto* cmdProve =
        app.add_subcommand("prove", "Emit a checked proof of an entailed query");
    cmdProve->add_option("--theory", prove.theory, "Theory file or inline")
        ->required();
    cmdProve->add_option("--query", prove.query, "Query file or inline formula")
        ->required();
    cmdProve->add_option("--rules", prove.rules,
                         "Target rule set (NORMALIZED, AX_CUT_SHF, AX_CUTI, "
                         "REF_SIMI)");
    std::string proveFormat = "text";
    cmdProve->add_option("--format", proveFormat, "text or json");

    VerifyOptions verify;
    auto* cmdVerify = app.add_subcommand("verify", "Check a proof file");
    cmdVerify->add_option("--proof", verify.proof, "Proof text file")->required();
    cmdVerify->add_option("--theory", verify.theory, "Theory file or inline")
        ->required();
    cmdVerify->add_option("--rules", verify.rules,
                          "Rule set the proof must stay within (default FULL)");
    std::string verifyFormat = "text";
    cmdVerify->add_option("--format", verifyFormat, "text or json");

    MineOptions mineOpt;
    auto* cmdMine =
        app.add_subcommand("mine", "Mine predictive rules from a dataset");
    cmdMine->add_option("--data", mineOpt.data, "Dataset CSV file")->required();
    cmdMine->add_option("--maxspan", mineOpt.maxspan, "Max rule time span")
        ->required();
    cmdMine->add_option("--min-support", mineOpt.minSupport,
                        "Minimum absolute support (default 1)");
    cmdMine->add_option("--min-confidence", mineOpt.minConfidence,
                        "Minimum confidence, e.g. 1, 0.8, or 4/5");
    cmdMine->add_option("--max-antecedent", mineOpt.maxAntecedent,
                        "Antecedent size cap (default 3)");
    cmdMine->add_option("--max-consequent", mineOpt.maxConsequent,
                        "Consequent size cap (default 3)");
    cmdMine->add_option("--jobs", mineOpt.jobs, "Worker threads (default 1)");
    std::string mineReport;
    auto* optReport = cmdMine->add_option("--report", mineReport,
                                          "Write a rule/support/confidence TSV");
    std::string mineFormat = "text";
    cmdMine->add_option("--format", mineFormat, "text or json");

    ReduceOptions reduce;
    auto* cmdReduce = app.add_subcommand(
        "reduce", "Remove formulas entailed by the rest of the theory");
    cmdReduce->add_option("--theory", reduce.theory, "Theory file or inline")
        ->required();
    std::string reduceFormat = "text";
    cmdReduce->add_option("--format", reduceFormat, "text or json");

    GenOptions gen;
    auto* cmdGen = app.add_subcommand(
        "gen-subsetsum", "Generate a hardness instance from unbounded subset sum");
    cmdGen->add_option("--values", gen.values, "Comma-separated non-negative integers");
    cmdGen->add_option("--target", gen.target, "Target sum")->required();
    cmdGen->add_flag("--solve", gen.solve, "Also run the DP oracle");
    cmdGen->add_option("--cap", gen.cap, "DP target cap (default 1000000)");
    std::string genFormat = "text";
    cmdGen->add_option("--format", genFormat, "text or json");

    ExportOptions exp;
    auto* cmdExport = app.add_subcommand(
        "export-ltl", "Export a theory and query to linear temporal logic");
    cmdExport->add_option("--theory", exp.theory, "Theory file or inline")
        ->required();
    cmdExport->add_option("--query", exp.query, "Query file or inline formula")
        ->required();
    std::string exportFormat = "text";
    cmdExport->add_option("--format", exportFormat, "text or json");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    auto wantJson = [&err](const std::string& fmt) {
        if (fmt == "json") return true;
        if (fmt == "text") return false;
        throw Error("unknown --format '" + fmt + "' (use text or json)");
    };

    try {
        if (*cmdCheck) {
            check.jsonOut = wantJson(checkFormat);
            return runCheck(check, out, err);
        }
        if (*cmdClosure) {
            closure.jsonOut = wantJson(closureFormat);
            if (*optMax) closure.max = closureMax;
            if (*optWin) closure.window = closureWindow;
            if (*optRounds) closure.rounds = closureRounds;
            return runClosure(closure, out, err);
        }
        if (*cmdEntail) {
            entail.jsonOut = wantJson(entailFormat);
            if (*optEntailWin) entail.window = entailWindow;
            if (*optEntailRounds) entail.rounds = entailRounds;
            return runEntail(entail, out, err);
        }
        if (*cmdProve) {
            prove.jsonOut = wantJson(proveFormat);
            return runProve(prove, out, err);
        }
        if (*cmdVerify) {
            verify.jsonOut = wantJson(verifyFormat);
            return runVerify(verify, out, err);
        }
        if (*cmdMine) {
            mineOpt.jsonOut = wantJson(mineFormat);
            if (*optReport) mineOpt.report = mineReport;
            return runMine(mineOpt, out, err);
        }
        if (*cmdReduce) {
            reduce.jsonOut = wantJson(reduceFormat);
            return runReduce(reduce, out, err);
        }
        if (*cmdGen) {
            gen.jsonOut = wantJson(genFormat);
            return runGen(gen, out, err);
        }
        if (*cmdExport) {
            exp.jsonOut = wantJson(exportFormat);
            return runExport(exp, out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    }
    err << "usage error: no subcommand selected\n";
    return 64;
}

}  // namespace tai
