// Independent oracles: pure exhaustive satisfiability, minimal networks,
// random generation and minimality falsification.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "qcr/catalog.hpp"
#include "qcr/io.hpp"
#include "qcr/oracle.hpp"

using namespace qcr;

namespace {

Catalog& catalog() {
    static Catalog cat = Catalog::load();
    return cat;
}

Network load(const std::string& relpath) {
    std::ifstream in(default_catalog_directory() + "/" + relpath);
    REQUIRE(in.good());
    return parse_network(
        in, [](const std::string& n) { return catalog().multi_algebra(n); });
}

SatOptions engine_opts(SatMethod m) {
    SatOptions o;
    o.method = m;
    o.completeness_declared = true;
    return o;
}

}  // namespace

TEST_CASE("oracle and engine agree on seeded random order networks") {
    auto ma = catalog().multi_algebra("mono(PA)");
    std::mt19937_64 rng(42);
    GeneratorOptions g;
    g.variables = 4;
    int sat = 0, unsat = 0;
    for (int i = 0; i < 60; ++i) {
        Network n = random_network(ma, g, rng);
        OracleResult orc = brute_force_sat(n);
        REQUIRE(orc.decided);
        Decision bt = satisfiable(n, engine_opts(SatMethod::Backtrack));
        Decision bf = satisfiable(n, engine_opts(SatMethod::BruteForce));
        CHECK((bt.status == SatStatus::Sat) == orc.sat);
        CHECK((bf.status == SatStatus::Sat) == orc.sat);
        (orc.sat ? sat : unsat)++;
    }
    CHECK(sat > 0);
    CHECK(unsat > 0);
}

TEST_CASE("pruned and pure oracle enumeration decide identically") {
    auto ma = catalog().multi_algebra("STC");
    std::mt19937_64 rng(7);
    GeneratorOptions g;
    g.variables = 3;
    g.max_scenario_product = 200000;
    for (int i = 0; i < 20; ++i) {
        Network n = random_network(ma, g, rng);
        OracleOptions pure, pruned;
        pruned.prune = true;
        OracleResult a = brute_force_sat(n, pure);
        OracleResult b = brute_force_sat(n, pruned);
        REQUIRE(a.decided);
        REQUIRE(b.decided);
        CHECK(a.sat == b.sat);
        CHECK(b.scenarios_checked <= a.scenarios_checked);
    }
}

TEST_CASE("the scenario bound yields an undecided result") {
    Network n = load("networks/stc_closed_unsat.qcn");
    OracleOptions o;
    o.max_scenarios = 10;
    OracleResult r = brute_force_sat(n, o);
    CHECK(!r.decided);
    CHECK(r.scenarios_checked >= 10);
}

TEST_CASE("minimal network is sandwiched between emptiness and the closure") {
    Network n = load("networks/pa_closure_vs_minimal.qcn");
    Network c = algebraic_closure(n);
    Network m = minimal_network(n);
    CHECK(refines(m, c));
    CHECK(refines(c, n));
    CHECK(!(m == c));
    Network want = load("networks/pa_minimal.qcn");
    CHECK(m == want);
    CHECK(!closure_is_minimal(n));
}

TEST_CASE("an unsatisfiable network has an empty minimal network") {
    Network n = load("networks/stc_closed_unsat.qcn");
    Network m = minimal_network(n);
    CHECK(is_trivially_inconsistent(m));
}

TEST_CASE("satisfiable witnesses are closed scenarios refining the input") {
    auto ma = catalog().multi_algebra("STC");
    std::mt19937_64 rng(11);
    GeneratorOptions g;
    g.variables = 3;
    g.max_scenario_product = 200000;
    int witnessed = 0;
    for (int i = 0; i < 10; ++i) {
        Network n = random_network(ma, g, rng);
        OracleResult r = brute_force_sat(n);
        if (!r.sat) continue;
        REQUIRE(r.witness.has_value());
        CHECK(is_scenario(*r.witness));
        CHECK(is_algebraically_closed(*r.witness));
        CHECK(refines(*r.witness, n));
        ++witnessed;
    }
    CHECK(witnessed > 0);
}

TEST_CASE("subclass sampling stays inside the subclass") {
    const Subclass& s = catalog().subclass("RCC8s_x_PAs");
    std::mt19937_64 rng(5);
    GeneratorOptions g;
    g.variables = 4;
    for (int i = 0; i < 20; ++i) {
        Network n = random_network_over(s, g, rng);
        for (int x = 0; x < n.size(); ++x)
            for (int y = x + 1; y < n.size(); ++y)
                CHECK(s.contains(n.edge(x, y)));
    }
}

TEST_CASE("minimality falsification is reproducible and finds nothing on the order slice") {
    const Subclass& s = catalog().subclass("PA_s");
    MinimalityTrialResult a = falsify_minimality(s, 4, 40, 123);
    MinimalityTrialResult b = falsify_minimality(s, 4, 40, 123);
    CHECK(a.trials == b.trials);
    CHECK(a.counterexample.has_value() == b.counterexample.has_value());
    CHECK(a.detail == b.detail);
    CHECK(!a.counterexample.has_value());
}

TEST_CASE("the known point-order network falsifies minimality of the full order algebra") {
    Network n = load("networks/pa_closure_vs_minimal.qcn");
    std::string detail;
    CHECK(!closure_is_minimal(n, &detail));
    CHECK(!detail.empty());
}
