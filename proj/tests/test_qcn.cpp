// Networks: parsing, normalization, algebraic closure, scenarios and the
// satisfiability decision procedures.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qcr/catalog.hpp"
#include "qcr/io.hpp"
#include "qcr/oracle.hpp"
#include "qcr/qcn.hpp"

using namespace qcr;

namespace {

Catalog& catalog() {
    static Catalog cat = Catalog::load();
    return cat;
}

MultiAlgebraResolver resolver() {
    return [](const std::string& n) { return catalog().multi_algebra(n); };
}

Network load(const std::string& relpath) {
    std::ifstream in(default_catalog_directory() + "/" + relpath);
    REQUIRE(in.good());
    return parse_network(in, resolver());
}

Network from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_network(in, resolver());
}

Bits bits_of(const Algebra& alg, std::initializer_list<const char*> atoms) {
    Bits b = 0;
    for (const char* a : atoms) b |= Bits{1} << alg.atom_index(a);
    return b;
}

SatOptions opts(SatMethod m) {
    SatOptions o;
    o.method = m;
    o.completeness_declared = true;
    o.closure_certified = (m == SatMethod::Closure);
    return o;
}

}  // namespace

TEST_CASE("network files round-trip through the writer") {
    Network n = load("networks/stc_closed_unsat.qcn");
    Network again = from_text(write_network(n));
    CHECK(n == again);
    CHECK(n.size() == 4);
    CHECK(n.variable_index("w") == 3);
}

TEST_CASE("parse errors carry a position and are distinguishable") {
    CHECK_THROWS_AS(from_text("network over NOPE\nvars x y\n"), std::exception);
    CHECK_THROWS_AS(
        from_text("network over STC\nvars x y\nx q : {EQ} ; {=}\n"),
        parse_error);
    CHECK_THROWS_AS(
        from_text("network over STC\nvars x y\nx y : {BOGUS} ; {=}\n"),
        parse_error);
    CHECK_THROWS_AS(from_text("network over STC\nvars x y\nx y : {EQ}\n"),
                    parse_error);
}

TEST_CASE("edges are normalized: the reverse edge is the converse") {
    Network n = from_text(
        "network over STC\nvars x y\nx y : {TPP,EQ} ; {<,=}\n");
    const Algebra& rcc8 = n.multi_algebra().component(0);
    const Algebra& pa = n.multi_algebra().component(1);
    CHECK(n.edge(1, 0).parts[0] == bits_of(rcc8, {"TPPI", "EQ"}));
    CHECK(n.edge(1, 0).parts[1] == bits_of(pa, {">", "="}));
    // unlisted edges are universal
    Network m = from_text("network over STC\nvars x y z\nx y : {EQ} ; {=}\n");
    CHECK(m.edge(0, 2) == m.multi_algebra().universal());
}

TEST_CASE("a contradictory order chain closes to the empty network") {
    Network n = load("networks/tpc_sequence.qcn");
    Network c = algebraic_closure(n);
    CHECK(is_trivially_inconsistent(c));
    CHECK(!is_algebraically_consistent(n));
}

TEST_CASE("algebraic closure is idempotent, refining, and confluent with order") {
    Network n = load("networks/pa_closure_vs_minimal.qcn");
    Network c = algebraic_closure(n);
    CHECK(refines(c, n));
    CHECK(is_algebraically_closed(c));
    CHECK(algebraic_closure(c) == c);
}

TEST_CASE("closure keeps an unrealizable label on the known point-order network") {
    Network n = load("networks/pa_closure_vs_minimal.qcn");
    Network c = algebraic_closure(n);
    const Algebra& pa = c.multi_algebra().component(0);
    int v1 = c.variable_index("v1"), v2 = c.variable_index("v2");
    CHECK((c.edge(v1, v2).parts[0] & bits_of(pa, {"="})) != 0);
    Network m = minimal_network(n);
    CHECK((m.edge(v1, v2).parts[0] & bits_of(pa, {"="})) == 0);
}

TEST_CASE("component slices are classical networks over a one-component wrapper") {
    Network n = load("networks/stc_closed_unsat.qcn");
    Network s0 = slice(n, 0);
    Network s1 = slice(n, 1);
    CHECK(s0.multi_algebra().arity() == 1);
    CHECK(s0.multi_algebra().component(0).name() == "RCC8");
    CHECK(s1.multi_algebra().component(0).name() == "PA");
    CHECK(is_component_consistent(n));
}

TEST_CASE("scenario enumeration agrees with the exhaustive oracle") {
    Network n = load("networks/pa_closure_vs_minimal.qcn");
    auto scen = enumerate_closed_scenarios(n, 0);
    CHECK(!scen.empty());
    for (const auto& s : scen) {
        CHECK(is_scenario(s));
        CHECK(is_algebraically_closed(s));
        CHECK(refines(s, n));
    }
    OracleResult r = brute_force_sat(n);
    CHECK(r.decided);
    CHECK(r.sat);
    // limit is honored
    CHECK(enumerate_closed_scenarios(n, 1).size() == 1);
}

TEST_CASE("satisfiability refuses without the declared soundness facts") {
    Network n = load("networks/pa_closure_vs_minimal.qcn");
    SatOptions o;
    o.method = SatMethod::Backtrack;
    o.completeness_declared = false;
    CHECK(satisfiable(n, o).status == SatStatus::Refused);
    o.completeness_declared = true;
    o.method = SatMethod::Closure;
    o.closure_certified = false;
    CHECK(satisfiable(n, o).status == SatStatus::Refused);
}

TEST_CASE("networks with fewer than two variables are satisfiable by convention") {
    Network n(catalog().multi_algebra("STC"), {"x"});
    CHECK(satisfiable(n, opts(SatMethod::Backtrack)).status == SatStatus::Sat);
}

TEST_CASE("the bundled size-topology network is closed but unsatisfiable") {
    Network n = load("networks/stc_closed_unsat.qcn");
    CHECK(is_algebraically_closed(n));
    CHECK(!is_trivially_inconsistent(n));
    CHECK(satisfiable(n, opts(SatMethod::BruteForce)).status == SatStatus::Unsat);
    CHECK(satisfiable(n, opts(SatMethod::Backtrack)).status == SatStatus::Unsat);

    // widening one topological part restores satisfiability
    Network n2 = n;
    int y = n.variable_index("y"), z = n.variable_index("z");
    MultiRelation e = n.edge(y, z);
    e.parts[0] |= bits_of(n.multi_algebra().component(0), {"DC"});
    n2.set_edge(y, z, e);
    CHECK(is_algebraically_consistent(n2));
    Decision d = satisfiable(n2, opts(SatMethod::BruteForce));
    REQUIRE(d.status == SatStatus::Sat);
    REQUIRE(d.witness.has_value());
    CHECK(is_scenario(*d.witness));
    CHECK(is_algebraically_closed(*d.witness));
    CHECK(refines(*d.witness, n2));
    CHECK(satisfiable(n2, opts(SatMethod::Backtrack)).status == SatStatus::Sat);
}

TEST_CASE("backtracking agrees with brute force on assorted fixed networks") {
    const char* texts[] = {
        "network over STC\nvars a b c\na b : {TPP} ; {<}\nb c : {TPP} ; {<}\n"
        "a c : {DC,EC} ; {<}\n",
        "network over STC\nvars a b c\na b : {TPP} ; {<}\nb c : {TPP} ; {<}\n"
        "a c : {NTPP} ; {<}\n",
        "network over STC\nvars a b c d\na b : {EQ} ; {=}\nc d : {PO} ; {<,>}\n"
        "a c : {NTPP} ; {<}\nb d : {DC,NTPPI} ; {>}\n",
        "network over mono(PA)\nvars a b c\na b : {<,=}\nb c : {<}\na c : {>}\n",
    };
    for (const char* t : texts) {
        Network n = from_text(t);
        Decision bt = satisfiable(n, opts(SatMethod::Backtrack));
        Decision bf = satisfiable(n, opts(SatMethod::BruteForce));
        REQUIRE(bt.status != SatStatus::Refused);
        CHECK(bt.status == bf.status);
        OracleResult orc = brute_force_sat(n);
        CHECK(orc.decided);
        CHECK((bf.status == SatStatus::Sat) == orc.sat);
    }
}

TEST_CASE("refinement application tightens every edge") {
    Network n = from_text(
        "network over STC\nvars a b\na b : {TPP,NTPP,PO} ; {<,=}\n");
    auto ma = n.multi_algebra_ptr();
    MultiRefinement h = catalog().multi_refinement("h_H8,h_max", ma);
    Network hn = apply_refinement(h, n);
    CHECK(refines(hn, n));
    CHECK(hn.edge(0, 1) == h.apply(n.edge(0, 1)));
}
