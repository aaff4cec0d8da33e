#include "tcsm/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "tcsm/model_io.hpp"
#include "tcsm/verify.hpp"

namespace tcsm {

namespace {

void writeOutput(const std::string& path, const std::string& text,
                 std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

std::vector<std::string> dotParts(const std::string& name) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

ClockBounds parseBoundFlags(const std::vector<std::string>& flags) {
    ClockBounds bounds;
    for (const std::string& s : flags) {
        size_t colon = s.find(':');
        if (colon == std::string::npos || colon == 0)
            throw Error("--bound expects clock:constant, got '" + s + "'");
        std::string digits = s.substr(colon + 1);
        if (digits.empty() ||
            digits.find_first_not_of("0123456789") != std::string::npos)
            throw Error("--bound expects clock:constant, got '" + s + "'");
        std::string clock = s.substr(0, colon);
        bounds[clock] = std::max(bounds[clock], std::stoll(digits));
    }
    return bounds;
}

void splitKinds(const ModelFile& m, std::vector<TcsmAutomaton>& timed,
                std::vector<RcsmAutomaton>& region) {
    for (const auto& v : m.automata) {
        if (const auto* p = std::get_if<TcsmAutomaton>(&v))
            timed.push_back(*p);
        else
            region.push_back(std::get<RcsmAutomaton>(v));
    }
}

void warnIncomplete(const TcsmAutomaton& p, int atomCap, std::ostream& err) {
    std::vector<TimedCompletenessViolation> bad = checkTimedComplete(p, atomCap);
    if (bad.empty()) return;
    err << "warning: " << p.name << ": not transition-complete: state '"
        << bad[0].state << "' in region " << bad[0].regionKey
        << " accepts no transition under " << signalSetStr(bad[0].witness);
    if (bad.size() > 1) err << " (and " << bad.size() - 1 << " more)";
    err << "\n";
}

// The single region automaton a file denotes: timed automata are composed
// and regionized, region automata are composed as they are.
RcsmAutomaton regionAutomatonOf(const ModelFile& m, const BuildOptions& opts,
                                std::ostream& err) {
    std::vector<TcsmAutomaton> timed;
    std::vector<RcsmAutomaton> region;
    splitKinds(m, timed, region);
    if (!timed.empty() && !region.empty())
        throw Error(m.name + ": file mixes timed and region automata");
    BuildOptions o = opts;
    o.checkCompleteness = false;
    if (!timed.empty()) {
        for (const TcsmAutomaton& p : timed) warnIncomplete(p, opts.atomCap, err);
        TcsmAutomaton sys = timed.size() == 1 ? timed[0] : productTcsm(timed);
        return buildRcsm(sys, o);
    }
    return region.size() == 1 ? region[0] : productRcsm(region, o);
}

int doCheck(const std::string& file, bool strict, const BuildOptions& opts,
            std::ostream& out, std::ostream& err) {
    ModelFile m = loadModel(file);
    int rc = 0;
    bool warned = false;
    BuildOptions buildOpts = opts;
    buildOpts.checkCompleteness = false;

    auto reportTraps = [&](const RcsmAutomaton& a) {
        std::vector<std::vector<int>> traps = zeroTimeTraps(a);
        for (const std::vector<int>& trap : traps) {
            out << a.name << ": zero-time trap:";
            for (int i : trap) out << " " << rstateLabel(a, i);
            out << "\n";
            rc = 1;
        }
        return !traps.empty();
    };

    for (const auto& v : m.automata) {
        if (const auto* p = std::get_if<TcsmAutomaton>(&v)) {
            validateTcsm(*p);
            bool flagged = false;
            std::vector<TimedCompletenessViolation> bad =
                checkTimedComplete(*p, opts.atomCap);
            for (size_t i = 0; i < bad.size() && i < 5; ++i)
                out << p->name << ": incomplete: state '" << bad[i].state
                    << "' in region " << bad[i].regionKey
                    << " accepts no transition under "
                    << signalSetStr(bad[i].witness) << "\n";
            if (bad.size() > 5)
                out << p->name << ": ... " << bad.size() - 5
                    << " more completeness violations\n";
            if (!bad.empty()) {
                rc = 1;
                flagged = true;
            }
            RcsmAutomaton a = buildRcsm(*p, buildOpts);
            flagged |= reportTraps(a);

            std::set<std::string> reachedBases;
            for (const RState& rs : a.rstates) reachedBases.insert(rs.state);
            for (const std::string& st : p->states)
                if (!reachedBases.count(st)) {
                    err << "warning: " << p->name << ": state '" << st
                        << "' is unreachable\n";
                    warned = true;
                }
            ClockSet used;
            for (const auto& [pair, t] : p->transitions) {
                (void)pair;
                ClockSet g = t.guard.clocks();
                used.insert(g.begin(), g.end());
                used.insert(t.resets.begin(), t.resets.end());
            }
            for (const Clock& x : p->clocks)
                if (!used.count(x)) {
                    err << "warning: " << p->name << ": clock '" << x
                        << "' is never constrained or reset\n";
                    warned = true;
                }
            if (!flagged)
                out << p->name << ": ok (" << a.rstates.size()
                    << " region states)\n";
        } else {
            const auto& a = std::get<RcsmAutomaton>(v);
            validateRcsm(a);
            if (!reportTraps(a))
                out << a.name << ": ok (" << a.rstates.size()
                    << " region states)\n";
        }
    }

    // Traps are a property of the composition, so check it too.
    if (m.automata.size() > 1) {
        std::vector<TcsmAutomaton> timed;
        std::vector<RcsmAutomaton> region;
        splitKinds(m, timed, region);
        try {
            if (region.empty()) {
                RcsmAutomaton joint = buildRcsm(productTcsm(timed), buildOpts);
                if (!reportTraps(joint))
                    out << joint.name << ": ok (" << joint.rstates.size()
                        << " region states)\n";
            } else if (timed.empty()) {
                RcsmAutomaton joint = productRcsm(region, buildOpts);
                if (!reportTraps(joint))
                    out << joint.name << ": ok (" << joint.rstates.size()
                        << " region states)\n";
            }
        } catch (const OverlappingOutputs& e) {
            err << "note: product not formed: " << e.what() << "\n";
        } catch (const OverlappingClocks& e) {
            err << "note: product not formed: " << e.what() << "\n";
        }
    }

    if (strict && warned && rc == 0) rc = 1;
    return rc;
}

int doProduct(const std::string& file, const std::string& outPath,
              std::ostream& out, std::ostream& err) {
    (void)err;
    ModelFile m = loadModel(file);
    std::vector<TcsmAutomaton> timed;
    std::vector<RcsmAutomaton> region;
    splitKinds(m, timed, region);
    if (!region.empty())
        throw Error("product composes timed automata; use rproduct for "
                    "region automata");
    TcsmAutomaton p = timed.size() == 1 ? timed[0] : productTcsm(timed);
    writeOutput(outPath, serializeAutomaton(p), out);
    return 0;
}

int doRegionize(const std::string& file, const std::string& outPath,
                const BuildOptions& opts, std::ostream& out,
                std::ostream& err) {
    ModelFile m = loadModel(file);
    std::vector<TcsmAutomaton> timed;
    std::vector<RcsmAutomaton> region;
    splitKinds(m, timed, region);
    if (!region.empty())
        throw Error("regionize expects timed automata only");
    for (const TcsmAutomaton& p : timed) warnIncomplete(p, opts.atomCap, err);
    TcsmAutomaton sys = timed.size() == 1 ? timed[0] : productTcsm(timed);
    BuildOptions o = opts;
    o.checkCompleteness = false;
    writeOutput(outPath, serializeAutomaton(buildRcsm(sys, o)), out);
    return 0;
}

int doRProduct(const std::vector<std::string>& files,
               const std::string& outPath, const BuildOptions& opts,
               std::ostream& out, std::ostream& err) {
    (void)err;
    if (files.size() < 2) throw Error("rproduct needs at least two files");
    std::vector<RcsmAutomaton> parts;
    for (const std::string& f : files) {
        ModelFile m = loadModel(f);
        if (m.automata.size() != 1 ||
            !std::holds_alternative<RcsmAutomaton>(m.automata[0]))
            throw Error("'" + f +
                        "' must contain exactly one region automaton");
        parts.push_back(std::get<RcsmAutomaton>(m.automata[0]));
    }
    writeOutput(outPath, serializeAutomaton(productRcsm(parts, opts)), out);
    return 0;
}

int doReach(const std::string& file, const std::string& target,
            const BuildOptions& opts, std::ostream& out, std::ostream& err) {
    RcsmAutomaton a = regionAutomatonOf(loadModel(file), opts, err);
    size_t at = target.find('@');
    if (at != std::string::npos) {
        std::string base = target.substr(0, at);
        Region r = parseRegionDescriptor(target.substr(at + 1), a.bounds);
        if (a.rstateIndex(base + "@" + r.key()) >= 0) {
            out << "reachable\n";
            return 0;
        }
        if (a.baseStateIndex(base) >= 0) {
            out << "unreachable\n";
            return 1;
        }
        err << "error: unknown state '" << base << "'\n";
        return 2;
    }
    if (a.baseStateIndex(target) < 0) {
        err << "error: unknown state '" << target << "'\n";
        return 2;
    }
    for (const RState& rs : a.rstates)
        if (rs.state == target) {
            out << "reachable\n";
            return 0;
        }
    out << "unreachable\n";
    return 1;
}

int doVerify(const std::string& sysFile, const std::string& testFile,
             const std::vector<std::string>& errorNames,
             const std::string& dotPath, const BuildOptions& opts,
             std::ostream& out, std::ostream& err) {
    RcsmAutomaton sys = regionAutomatonOf(loadModel(sysFile), opts, err);
    RcsmAutomaton test = regionAutomatonOf(loadModel(testFile), opts, err);
    std::set<std::string> errorStates(errorNames.begin(), errorNames.end());
    SafetyVerdict v = checkSafety(sys, test, errorStates, opts);
    if (!dotPath.empty()) {
        std::set<int> bad = errorRStates(v.product, test.arity(), errorStates);
        writeOutput(dotPath, exportDot(v.product, &bad), out);
    }
    if (v.holds) {
        out << "safety holds: " << v.explored << " region states explored\n";
        return 0;
    }
    out << "safety violated: "
        << rstateLabel(v.product, v.witness.back()) << " reachable in "
        << v.witness.size() - 1 << " steps\n";
    for (const std::string& line : renderWitness(v)) out << line << "\n";
    return 1;
}

int doDot(const std::string& file, const std::string& outPath,
          const std::vector<std::string>& errorNames, const BuildOptions& opts,
          std::ostream& out, std::ostream& err) {
    RcsmAutomaton a = regionAutomatonOf(loadModel(file), opts, err);
    std::set<int> bad;
    for (size_t i = 0; i < a.rstates.size(); ++i) {
        const std::string& base = a.rstates[i].state;
        bool hit = false;
        for (const std::string& name : errorNames) {
            if (base == name) hit = true;
            for (const std::string& part : dotParts(base))
                if (part == name) hit = true;
        }
        if (hit) bad.insert(static_cast<int>(i));
    }
    writeOutput(outPath, exportDot(a, errorNames.empty() ? nullptr : &bad),
                out);
    return 0;
}

} // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
    CLI::App app{"Model checking toolkit for timed concurrent state machines"};
    app.name("tcsm");
    app.require_subcommand(1);

    long long budget = 1'000'000;
    app.add_option("--budget", budget,
                   "region state budget for any construction")
        ->capture_default_str();

    std::string checkFile;
    bool strict = false;
    CLI::App* check = app.add_subcommand(
        "check", "Completeness and zero-time trap analysis");
    check->add_option("file", checkFile, "model file")->required();
    check->add_flag("--strict", strict, "treat warnings as failures");

    std::string productFile, productOut;
    CLI::App* product =
        app.add_subcommand("product", "Compose timed automata");
    product->add_option("file", productFile, "model file")->required();
    product->add_option("-o,--output", productOut, "output file");

    std::string regionizeFile, regionizeOut;
    std::vector<std::string> boundFlags;
    CLI::App* regionize = app.add_subcommand(
        "regionize", "Build the region automaton of timed automata");
    regionize->add_option("file", regionizeFile, "model file")->required();
    regionize->add_option("-o,--output", regionizeOut, "output file");
    regionize->add_option("--bound", boundFlags,
                          "extra clock bound, clock:constant");

    std::vector<std::string> rproductFiles;
    std::string rproductOut;
    CLI::App* rproduct =
        app.add_subcommand("rproduct", "Compose region automata");
    rproduct->add_option("files", rproductFiles, "one region automaton each");
    rproduct->add_option("-o,--output", rproductOut, "output file");

    std::string reachFile, reachTarget;
    CLI::App* reach = app.add_subcommand(
        "reach", "Is a state (or state@region) reachable?");
    reach->add_option("file", reachFile, "model file")->required();
    reach->add_option("state", reachTarget, "state name or state@region")
        ->required();

    std::string verifySys, verifyTest, verifyDot;
    std::vector<std::string> errorNames;
    CLI::App* verify = app.add_subcommand(
        "verify", "Safety check of a system against a test automaton");
    verify->add_option("system", verifySys, "system model file")->required();
    verify->add_option("test", verifyTest, "test automaton file")->required();
    verify->add_option("--error", errorNames, "error state of the test")
        ->required();
    verify->add_option("--dot", verifyDot, "write the product as Graphviz");

    std::string dotFile, dotOut;
    std::vector<std::string> dotErrors;
    CLI::App* dot =
        app.add_subcommand("dot", "Export a region automaton as Graphviz");
    dot->add_option("file", dotFile, "model file")->required();
    dot->add_option("-o,--output", dotOut, "output file");
    dot->add_option("--error", dotErrors, "states to mark as errors");

    std::vector<const char*> argv;
    argv.push_back("tcsm");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    BuildOptions opts;
    opts.maxRegions = budget;
    try {
        if (app.got_subcommand(check))
            return doCheck(checkFile, strict, opts, out, err);
        if (app.got_subcommand(product))
            return doProduct(productFile, productOut, out, err);
        if (app.got_subcommand(regionize)) {
            if (!boundFlags.empty())
                opts.boundsOverride = parseBoundFlags(boundFlags);
            return doRegionize(regionizeFile, regionizeOut, opts, out, err);
        }
        if (app.got_subcommand(rproduct))
            return doRProduct(rproductFiles, rproductOut, opts, out, err);
        if (app.got_subcommand(reach))
            return doReach(reachFile, reachTarget, opts, out, err);
        if (app.got_subcommand(verify))
            return doVerify(verifySys, verifyTest, errorNames, verifyDot, opts,
                            out, err);
        if (app.got_subcommand(dot))
            return doDot(dotFile, dotOut, dotErrors, opts, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace tcsm
