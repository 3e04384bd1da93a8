#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symred/scenario.hpp"

namespace symred {

namespace cli_detail {

inline void print_certificate(std::ostream& out, const std::string& name, const CertificateEntry& e) {
    const char* state = e.state == CertificateEntry::State::passed  ? "passed"
                        : e.state == CertificateEntry::State::failed ? "FAILED"
                                                                     : "skipped";
    out << "  " << name;
    for (std::size_t i = name.size(); i < 24; ++i) out << ' ';
    out << state;
    if (!e.note.empty()) out << "  (" << e.note << ")";
    out << "\n";
    if (e.witness) {
        out << "      witness: " << e.witness->label << " at [";
        for (std::size_t i = 0; i < e.witness->location.size(); ++i) {
            if (i) out << ",";
            out << e.witness->location[i];
        }
        out << "] value " << e.witness->value << "\n";
    }
}

inline void print_report(std::ostream& out, const ReductionReport& rep) {
    out << "scenario: " << rep.scenario << " (" << rep.mu_mode << " mode, n=" << rep.variable_count
        << ", r=" << rep.algebra_dim << ")\n";
    auto names = ReductionReport::certificate_names();
    auto certs = rep.certificate_list();
    for (std::size_t i = 0; i < names.size(); ++i) print_certificate(out, names[i], *certs[i]);
    print_certificate(out, "complex_composite", rep.composite);
    out << "  tor:";
    for (const auto& t : rep.tor) out << " H" << t.index << (t.is_zero ? "=0" : "!=0");
    out << "\n";
    if (rep.complete_intersection)
        out << "  complete_intersection: " << (*rep.complete_intersection ? "true" : "false") << "\n";
    if (rep.virtual_dimension) out << "  virtual_dimension: " << *rep.virtual_dimension << "\n";
    if (rep.round_trip_consistent)
        out << "  round_trip_consistent: " << (*rep.round_trip_consistent ? "true" : "false") << "\n";
    out << "overall: " << (rep.overall_pass ? "PASS" : "FAIL") << "\n";
}

inline void print_tor(std::ostream& out, const std::string& name,
                      const std::vector<TorSummary>& table) {
    out << "scenario: " << name << "\n";
    for (const auto& t : table) {
        out << "  tor " << t.index << ": " << (t.is_zero ? "zero" : "nonzero");
        if (t.graded) {
            out << "  graded dims";
            for (std::size_t d = 0; d < t.dimensions.size(); ++d)
                out << " " << d << ":" << t.dimensions[d];
        } else {
            out << "  (not graded)";
        }
        out << "\n";
    }
}

struct CorpusEntry {
    std::string name;
    std::string fresh;   // timing-masked fresh serialization
    bool matches = false;
    bool golden_found = false;
};

} // namespace cli_detail

/// Runs every scenario in a corpus directory and compares the fresh reports
/// against committed golden files (timing masked). Scenarios may run in
/// parallel; outputs are buffered and emitted in a fixed order.
inline int run_corpus(const std::string& dir, const std::string& goldenDir, unsigned jobs,
                      bool updateGolden, const OptionOverrides& ov, std::ostream& out,
                      std::ostream& err) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) {
        err << "corpus directory not found: " << dir << "\n";
        return 2;
    }
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".toml") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << "no scenario files in " << dir << "\n";
        return 2;
    }

    auto runOne = [&](const std::string& path) -> cli_detail::CorpusEntry {
        Scenario sc = load_scenario(path);
        ReductionReport rep = run_scenario(sc, ov);
        cli_detail::CorpusEntry entry;
        entry.name = sc.name;
        entry.fresh = report_golden_string(rep);
        return entry;
    };

    std::vector<cli_detail::CorpusEntry> entries(files.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < files.size(); ++i) entries[i] = runOne(files[i]);
    } else {
        std::vector<std::future<cli_detail::CorpusEntry>> futs;
        for (const auto& f : files)
            futs.push_back(std::async(std::launch::async, runOne, f));
        for (std::size_t i = 0; i < futs.size(); ++i) entries[i] = futs[i].get();
    }

    bool allOk = true;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto& entry = entries[i];
        fs::path goldenPath = fs::path(goldenDir) / (entry.name + ".json");
        if (updateGolden) {
            fs::create_directories(goldenDir);
            std::ofstream g(goldenPath);
            g << entry.fresh;
            out << entry.name << ": golden updated\n";
            continue;
        }
        std::ifstream g(goldenPath);
        if (!g) {
            entry.golden_found = false;
            allOk = false;
            out << entry.name << ": MISSING GOLDEN (" << goldenPath.string() << ")\n";
            continue;
        }
        std::stringstream ss;
        ss << g.rdbuf();
        entry.golden_found = true;
        entry.matches = (ss.str() == entry.fresh);
        if (!entry.matches) allOk = false;
        out << entry.name << ": " << (entry.matches ? "OK" : "MISMATCH") << "\n";
    }
    return allOk || updateGolden ? 0 : 1;
}

/// Command-line entry point, also callable from tests. Exit codes: 0 all
/// certificates pass (or corpus matches), 1 a certificate failed or a golden
/// comparison mismatched, 2 malformed input. A failed certificate never
/// yields exit 0.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"exact certification of derived symplectic reductions of polynomial "
                 "Hamiltonian spaces"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string orderName;
    OptionOverrides ov;
    std::int64_t wmaxFlag = -1, gradedFlag = -1, seedFlag = -1;
    app.add_option("--order", orderName, "monomial order: degrevlex or lex");
    app.add_option("--truncate-weight", wmaxFlag, "weight truncation for the form algebra");
    app.add_option("--graded-bound", gradedFlag, "maximum degree for graded dimension tables");
    app.add_option("--seed", seedFlag, "seed for the random-point spot checks");
    bool crossCheck = false;
    app.add_flag("--cross-check", crossCheck,
                 "verify the quasi-isomorphism by cone homology as well as by determinants");

    auto* check = app.add_subcommand("check", "run the full pipeline, print a summary");
    std::string checkFile;
    check->add_option("file", checkFile, "scenario file")->required();

    auto* tor = app.add_subcommand("tor", "print the Tor table of the derived level set");
    std::string torFile;
    std::int64_t maxDegree = -1;
    tor->add_option("file", torFile, "scenario file")->required();
    tor->add_option("--max-degree", maxDegree, "graded dimension bound");

    auto* report = app.add_subcommand("report", "write a machine-readable report");
    std::string reportFile, reportOut;
    report->add_option("file", reportFile, "scenario file")->required();
    report->add_option("-o,--output", reportOut, "output path")->required();

    auto* corpus = app.add_subcommand("corpus", "run all shipped scenarios against goldens");
    std::string corpusDir = "corpus";
    std::string goldenDir;
    unsigned jobs = 1;
    bool updateGolden = false;
    corpus->add_option("--dir", corpusDir, "scenario directory");
    corpus->add_option("--golden", goldenDir, "golden report directory (default <dir>/golden)");
    corpus->add_option("--jobs", jobs, "run scenarios in parallel");
    corpus->add_flag("--update-golden", updateGolden, "rewrite golden files from fresh runs");

    std::vector<std::string> argv = args;
    std::vector<char*> cargv;
    cargv.push_back(const_cast<char*>("symred"));
    for (auto& a : argv) cargv.push_back(a.data());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    if (!orderName.empty()) {
        if (orderName == "degrevlex") ov.order = OrderTag::degrevlex;
        else if (orderName == "lex") ov.order = OrderTag::lex;
        else {
            err << "--order must be degrevlex or lex\n";
            return 2;
        }
    }
    if (wmaxFlag >= 0) ov.w_max = static_cast<std::uint32_t>(wmaxFlag);
    if (gradedFlag >= 0) ov.graded_bound = gradedFlag;
    if (seedFlag >= 0) ov.seed = static_cast<std::uint64_t>(seedFlag);
    ov.cross_check = crossCheck;

    try {
        if (check->parsed()) {
            Scenario sc = load_scenario(checkFile);
            ReductionReport rep = run_scenario(sc, ov);
            cli_detail::print_report(out, rep);
            return rep.overall_pass ? 0 : 1;
        }
        if (tor->parsed()) {
            Scenario sc = load_scenario(torFile);
            if (maxDegree >= 0) ov.graded_bound = maxDegree;
            cli_detail::print_tor(out, sc.name, run_tor(sc, ov));
            return 0;
        }
        if (report->parsed()) {
            Scenario sc = load_scenario(reportFile);
            ReductionReport rep = run_scenario(sc, ov);
            std::ofstream o(reportOut);
            if (!o) {
                err << "cannot write " << reportOut << "\n";
                return 2;
            }
            o << report_json(rep, true).dump(2) << "\n";
            out << "report written to " << reportOut << "\n";
            return rep.overall_pass ? 0 : 1;
        }
        if (corpus->parsed()) {
            if (goldenDir.empty()) goldenDir = (std::filesystem::path(corpusDir) / "golden").string();
            return run_corpus(corpusDir, goldenDir, jobs, updateGolden, ov, out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace symred
