// Acceptance suite: every criterion below runs one self-contained check over
// the shipped corpus and prints a single pass/fail line. The whole suite must
// stay green; tolerances here are exact (the engine is exact arithmetic) and
// the only numeric budget is the per-scenario wall clock of criterion 1.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "symred/cli.hpp"
#include "symred/scenario.hpp"
#include "test_util.hpp"

using namespace symred;

namespace {

struct CriterionLog {
    std::string name;
    bool ok = true;
    std::ostringstream detail;

    explicit CriterionLog(std::string n) : name(std::move(n)) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "    failed: " << what << "\n";
        }
    }
    ~CriterionLog() {
        std::cout << "[" << name << "] " << (ok ? "PASS" : "FAIL") << "\n" << detail.str();
        std::cout.flush();
    }
};

ReductionReport run_corpus_scenario(const std::string& file, bool crossCheck = false) {
    Scenario sc = load_scenario("corpus/" + file);
    OptionOverrides ov;
    ov.cross_check = crossCheck;
    return run_scenario(sc, ov);
}

} // namespace

TEST_CASE("criterion 1: pairing quasi-isomorphism with cross-checked routes") {
    CriterionLog log{"criterion 1"};
    for (const std::string file : {"gm_tstar_c.toml", "gm_tstar_c2.toml", "sl2_tstar_c2.toml"}) {
        auto t0 = std::chrono::steady_clock::now();
        ReductionReport rep = run_corpus_scenario(file, true);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log.expect(rep.theta_squares.passed(), file + ": pairing squares");
        log.expect(rep.quasi_iso.passed(), file + ": quasi-isomorphism");
        log.expect(rep.quasi_iso_method == "determinant+homology",
                   file + ": both verification routes ran and agreed");
        log.expect(secs < 60.0, file + ": runtime under 60 s (took " + std::to_string(secs) + ")");
    }
    REQUIRE(log.ok);
}

TEST_CASE("criterion 2: derived level set Tor and the codimension oracle") {
    CriterionLog log{"criterion 2"};

    ReductionReport trivial = run_corpus_scenario("trivial_action.toml");
    log.expect(!trivial.tor[0].is_zero && !trivial.tor[1].is_zero,
               "trivial action: Tor_0 and Tor_1 both nonzero (free of rank C(1,i))");
    log.expect(trivial.tor[1].graded, "trivial action: Tor_1 graded");
    if (trivial.tor[1].graded && trivial.tor[1].dimensions.size() >= 3) {
        log.expect(trivial.tor[1].dimensions[0] == 1 && trivial.tor[1].dimensions[1] == 2 &&
                       trivial.tor[1].dimensions[2] == 3,
                   "trivial action: Tor_1 graded dimensions 1,2,3 at degrees 0,1,2");
    } else {
        log.expect(false, "trivial action: graded dimensions missing");
    }
    log.expect(trivial.complete_intersection && !*trivial.complete_intersection,
               "trivial action: not a complete intersection");
    log.expect(trivial.codim_oracle_agrees && *trivial.codim_oracle_agrees,
               "trivial action: codimension oracle agrees");

    ReductionReport gm = run_corpus_scenario("gm_tstar_c.toml");
    log.expect(gm.tor[1].is_zero, "scaling action: Tor_1 vanishes");
    log.expect(gm.complete_intersection && *gm.complete_intersection,
               "scaling action: complete intersection");
    log.expect(gm.codim_oracle_agrees && *gm.codim_oracle_agrees,
               "scaling action: codimension oracle agrees");

    ReductionReport sl2 = run_corpus_scenario("sl2_tstar_c2.toml");
    log.expect(!sl2.tor[1].is_zero, "sl2: Tor_1 nonzero");
    log.expect(sl2.complete_intersection && !*sl2.complete_intersection,
               "sl2: not a complete intersection");
    log.expect(sl2.level_set_dimension && *sl2.level_set_dimension == 2,
               "sl2: classical level set has dimension 2");
    log.expect(sl2.codim_oracle_agrees && *sl2.codim_oracle_agrees,
               "sl2: codimension oracle agrees");
    REQUIRE(log.ok);
}

TEST_CASE("criterion 3: reduced tangent complex consistency and virtual dimension") {
    CriterionLog log{"criterion 3"};
    ReductionReport sl2 = run_corpus_scenario("sl2_tstar_c2.toml");
    log.expect(sl2.composite.passed(),
               "sl2: composite differentials reduce to zero against the moment ideal");
    log.expect(sl2.virtual_dimension && *sl2.virtual_dimension == -2, "sl2: virtual dimension -2");
    ReductionReport gm = run_corpus_scenario("gm_tstar_c.toml");
    log.expect(gm.virtual_dimension && *gm.virtual_dimension == 0,
               "scaling action: virtual dimension 0");
    ReductionReport gm2 = run_corpus_scenario("gm_tstar_c2.toml");
    log.expect(gm2.virtual_dimension && *gm2.virtual_dimension == 2,
               "diagonal action: virtual dimension 2");
    REQUIRE(log.ok);
}

TEST_CASE("criterion 4: closedness and invariance certificates with the bicomplex suite") {
    CriterionLog log{"criterion 4"};
    for (const std::string file : {"gm_tstar_c.toml", "gm_tstar_c2.toml", "sl2_tstar_c2.toml"}) {
        ReductionReport rep = run_corpus_scenario(file);
        log.expect(rep.strictly_closed.passed(), file + ": strictly closed");
        log.expect(rep.invariant.passed(), file + ": invariant");
    }

    // randomized bicomplex identities: 100 instances, <= 3 variables,
    // <= 2 odd generators, coefficient degree <= 2, truncation weight 3
    std::mt19937_64 rng(20240809);
    int checked = 0, failures = 0;
    while (checked < 100) {
        std::uniform_int_distribution<std::size_t> nv(1, 3), ne(1, 2);
        std::size_t n = nv(rng), r = ne(rng);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
        RingPtr R = make_ring(names);
        std::vector<MultiPoly> J;
        std::vector<Rational> mu;
        for (std::size_t i = 0; i < r; ++i) {
            J.push_back(testutil::random_poly(rng, R, 2, 3));
            mu.push_back(Rational(0));
        }
        FormAlgebraPtr alg = FormAlgebra::make(KoszulCdga::build(R, J, mu), 3);
        // random element of weight at most 1 so both differentials compose
        FormElement f = FormElement::from_poly(alg, testutil::random_poly(rng, R, 2, 2, false));
        std::uniform_int_distribution<int> coin(0, 1);
        if (coin(rng)) f = f * FormElement::generator_dx(alg, 0);
        for (std::size_t i = 0; i < r; ++i)
            if (coin(rng)) f = f * FormElement::generator_eta(alg, i);
        if (f.is_zero()) continue;
        ++checked;
        if (!d_internal(d_internal(f)).is_zero()) ++failures;
        if (!d_derham(d_derham(f)).is_zero()) ++failures;
        if (!(d_internal(d_derham(f)) + d_derham(d_internal(f))).is_zero()) ++failures;
    }
    log.expect(checked == 100, "100 randomized instances generated");
    log.expect(failures == 0,
               "bicomplex identities: zero failures (got " + std::to_string(failures) + ")");
    REQUIRE(log.ok);
}

TEST_CASE("criterion 5: the pairing squares encode the moment condition") {
    CriterionLog log{"criterion 5"};
    const std::vector<std::string> files = {
        "gm_tstar_c.toml",   "gm_tstar_c2.toml",          "trivial_action.toml",
        "sl2_tstar_c2.toml", "gm_point_orbit.toml",       "sl2_orbit.toml",
        "mutant_nonclosed_omega.toml", "mutant_nonhamiltonian.toml", "mutant_kks_scale.toml"};
    for (const auto& file : files) {
        Scenario sc = load_scenario("corpus/" + file);
        const HamiltonianSpace& H = sc.space;
        std::vector<Rational> mu =
            sc.mu ? *sc.mu : std::vector<Rational>(H.dim_g(), Rational(0));
        if (!coadjoint_fixes(H.lie, mu)) continue;
        HamiltonianCertificate ham = validate_hamiltonian(H);
        ReducedComplexes red = reduced_tangent_complex(H, mu);
        ThetaMap theta = build_theta(H, mu, red);
        log.expect(ham.moment_condition.ok == theta.left_square.ok,
                   file + ": same boolean for the moment condition and the left square");
        if (!ham.moment_condition.ok && !theta.left_square.ok) {
            log.expect(ham.moment_condition.witness->location == theta.left_square.witness->location,
                       file + ": same witness location");
            log.expect(ham.moment_condition.witness->value == theta.left_square.witness->value,
                       file + ": same witness value");
        }
    }
    REQUIRE(log.ok);
}

TEST_CASE("criterion 6: coadjoint orbit shift") {
    CriterionLog log{"criterion 6"};
    ReductionReport pt = run_corpus_scenario("gm_point_orbit.toml");
    log.expect(pt.round_trip_consistent && *pt.round_trip_consistent,
               "point orbit: direct and shifted reports agree in all mathematical fields");
    log.expect(pt.classical_consistency.passed(), "point orbit: classical ideal identity");
    ReductionReport so = run_corpus_scenario("sl2_orbit.toml");
    log.expect(so.classical_consistency.passed(), "sl2 orbit: classical ideal identity");
    log.expect(so.kks.passed(), "sl2 orbit: chart form certified");
    ReductionReport mutant = run_corpus_scenario("mutant_kks_scale.toml");
    log.expect(mutant.kks.failed(), "scaled chart form rejected");
    REQUIRE(log.ok);
}

TEST_CASE("criterion 7: negative controls fail exactly the intended certificate") {
    CriterionLog log{"criterion 7"};

    auto states = [](const ReductionReport& r) {
        std::vector<std::pair<std::string, const CertificateEntry*>> v;
        auto names = ReductionReport::certificate_names();
        auto list = r.certificate_list();
        for (std::size_t i = 0; i < names.size(); ++i) v.push_back({names[i], list[i]});
        return v;
    };

    {
        ReductionReport rep = run_corpus_scenario("mutant_nonclosed_omega.toml");
        for (const auto& [name, cert] : states(rep)) {
            bool shouldFail = (name == "symplectic" || name == "strictly_closed");
            log.expect(cert->failed() == shouldFail,
                       "non-closed form mutant: certificate " + name +
                           (shouldFail ? " fails" : " does not fail"));
        }
        log.expect(rep.symplectic.witness.has_value(), "non-closed form mutant: witness present");
        std::ostringstream out, err;
        int code = run_cli({"check", "corpus/mutant_nonclosed_omega.toml"}, out, err);
        log.expect(code == 1, "non-closed form mutant: exit code 1");
        log.expect(out.str().find("witness") != std::string::npos,
                   "non-closed form mutant: witness printed");
    }
    {
        ReductionReport rep = run_corpus_scenario("mutant_nonhamiltonian.toml");
        for (const auto& [name, cert] : states(rep)) {
            bool shouldFail = (name == "hamiltonian" || name == "theta_squares");
            log.expect(cert->failed() == shouldFail,
                       "non-hamiltonian mutant: certificate " + name +
                           (shouldFail ? " fails" : " does not fail"));
        }
        log.expect(rep.quasi_iso.state == CertificateEntry::State::skipped,
                   "non-hamiltonian mutant: quasi-iso skipped without a valid pairing map");
        std::ostringstream out, err;
        int code = run_cli({"check", "corpus/mutant_nonhamiltonian.toml"}, out, err);
        log.expect(code == 1, "non-hamiltonian mutant: exit code 1");
        log.expect(out.str().find("witness") != std::string::npos,
                   "non-hamiltonian mutant: witness printed");
    }
    {
        ReductionReport rep = run_corpus_scenario("mutant_kks_scale.toml");
        for (const auto& [name, cert] : states(rep)) {
            bool shouldFail = (name == "kks");
            log.expect(cert->failed() == shouldFail,
                       "scaled chart form mutant: certificate " + name +
                           (shouldFail ? " fails" : " does not fail"));
        }
        std::ostringstream out, err;
        int code = run_cli({"check", "corpus/mutant_kks_scale.toml"}, out, err);
        log.expect(code == 1, "scaled chart form mutant: exit code 1");
        log.expect(out.str().find("witness") != std::string::npos,
                   "scaled chart form mutant: witness printed");
    }
    REQUIRE(log.ok);
}

TEST_CASE("criterion 8: determinism of corpus runs, with and without parallelism") {
    CriterionLog log{"criterion 8"};

    std::ostringstream out1, err1, out2, err2, out4, err4;
    int c1 = run_cli({"corpus", "--dir", "corpus"}, out1, err1);
    int c2 = run_cli({"corpus", "--dir", "corpus"}, out2, err2);
    int c4 = run_cli({"corpus", "--dir", "corpus", "--jobs", "4"}, out4, err4);
    log.expect(c1 == 0, "corpus run matches the committed goldens");
    log.expect(c1 == c2 && out1.str() == out2.str(), "two sequential runs are byte-identical");
    log.expect(c1 == c4 && out1.str() == out4.str(), "parallel run is byte-identical");

    // directly compare the golden-comparable serializations of fresh runs
    const std::vector<std::string> files = {
        "gm_tstar_c.toml", "sl2_tstar_c2.toml", "sl2_orbit.toml", "mutant_nonhamiltonian.toml"};
    for (const auto& f : files) {
        std::string a = report_golden_string(run_corpus_scenario(f));
        std::string b = report_golden_string(run_corpus_scenario(f));
        log.expect(a == b, f + ": fresh serializations agree byte-for-byte");
    }
    REQUIRE(log.ok);
}
