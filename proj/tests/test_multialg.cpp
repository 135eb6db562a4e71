// Multi-algebras: projections, projection closure, anti-trees, weakenings.
// The size-topology projection tables are frozen here as the reference the
// bundled data must reproduce.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qcr/catalog.hpp"
#include "qcr/multialg.hpp"

using namespace qcr;

namespace {

Catalog& catalog() {
    static Catalog cat = Catalog::load();
    return cat;
}

std::shared_ptr<const MultiAlgebra> stc() {
    return catalog().multi_algebra("STC");
}

Bits bits_of(const Algebra& alg, const std::vector<std::string>& atoms) {
    Bits b = 0;
    for (const auto& a : atoms) b |= Bits{1} << alg.atom_index(a);
    return b;
}

// Frozen reference: the size image of each topological atom and the
// topological image of each order atom, for regions compared by size.
const std::map<std::string, std::vector<std::string>> kTopoToSize = {
    {"DC", {"<", "=", ">"}},   {"EC", {"<", "=", ">"}},
    {"PO", {"<", "=", ">"}},   {"TPP", {"<"}},
    {"NTPP", {"<"}},           {"TPPI", {">"}},
    {"NTPPI", {">"}},          {"EQ", {"="}}};
const std::map<std::string, std::vector<std::string>> kSizeToTopo = {
    {"<", {"DC", "EC", "PO", "TPP", "NTPP"}},
    {"=", {"DC", "EC", "PO", "EQ"}},
    {">", {"DC", "EC", "PO", "TPPI", "NTPPI"}}};

Bits img(const Projection& p, Bits b) {
    return p.apply(Relation{p.source(), b}).bits;
}

}  // namespace

TEST_CASE("size-topology projections match the frozen atom tables") {
    auto ma = stc();
    const Algebra& rcc8 = ma->component(0);
    const Algebra& pa = ma->component(1);
    const Projection& topo_to_size = ma->projection(0, 1);
    const Projection& size_to_topo = ma->projection(1, 0);
    for (const auto& [atom, image] : kTopoToSize) {
        Bits b = Bits{1} << rcc8.atom_index(atom);
        CHECK(img(topo_to_size, b) == bits_of(pa, image));
    }
    for (const auto& [atom, image] : kSizeToTopo) {
        Bits b = Bits{1} << pa.atom_index(atom);
        CHECK(img(size_to_topo, b) == bits_of(rcc8, image));
    }
}

TEST_CASE("projections lift to unions and respect converse") {
    auto ma = stc();
    const Algebra& rcc8 = ma->component(0);
    const Projection& p = ma->projection(0, 1);
    Bits r = bits_of(rcc8, {"TPP", "EQ"});
    CHECK(img(p, r) == (img(p, bits_of(rcc8, {"TPP"})) |
                         img(p, bits_of(rcc8, {"EQ"}))));
    CHECK(p.respects_converse());
}

TEST_CASE("inverse projection is the preimage union") {
    auto ma = stc();
    const Algebra& rcc8 = ma->component(0);
    const Algebra& pa = ma->component(1);
    const Projection& p = ma->projection(0, 1);
    Projection q = p.inverse();
    for (int t = 0; t < pa.atom_count(); ++t) {
        Bits want = 0;
        for (int a = 0; a < rcc8.atom_count(); ++a)
            if (img(p, Bits{1} << a) & (Bits{1} << t)) want |= Bits{1} << a;
        CHECK(img(q, Bits{1} << t) == want);
    }
}

TEST_CASE("projection closure tightens mutually, to emptiness if needed") {
    auto ma = stc();
    const Algebra& rcc8 = ma->component(0);
    const Algebra& pa = ma->component(1);
    MultiRelation a = projection_closure(
        ma->make({bits_of(rcc8, {"TPP"}), bits_of(pa, {"<", "="})}));
    CHECK(a.parts == std::vector<Bits>{bits_of(rcc8, {"TPP"}),
                                       bits_of(pa, {"<"})});
    CHECK(is_projection_consistent(a));
    MultiRelation b = projection_closure(
        ma->make({bits_of(rcc8, {"TPP"}), bits_of(pa, {">"})}));
    CHECK(b.parts == std::vector<Bits>{0, 0});
    CHECK(is_projection_closed(b));
    CHECK(!is_projection_consistent(b));
}

TEST_CASE("three-component sequence formalism: incompatible parts close to empty") {
    auto tpc3 = catalog().multi_algebra("TPC3");
    REQUIRE(tpc3->arity() == 3);
    const Algebra& pa = tpc3->component(0);
    Bits lt = bits_of(pa, {"<"});
    Bits ne = bits_of(pa, {"<", ">"});
    Bits gt = bits_of(pa, {">"});
    MultiRelation r = projection_closure(tpc3->make({lt, ne, gt}));
    CHECK(r.parts == std::vector<Bits>({0, 0, 0}));
}

TEST_CASE("anti-tree enumeration counts m^(m-1) and guards large m") {
    CHECK(enumerate_anti_trees(1).size() == 1);
    CHECK(enumerate_anti_trees(2).size() == 2);
    CHECK(enumerate_anti_trees(3).size() == 9);
    CHECK(enumerate_anti_trees(4).size() == 64);
    CHECK_THROWS_AS(enumerate_anti_trees(7), algebra_error);
    CHECK(enumerate_anti_trees(7, /*force=*/true).size() == 117649);
    for (const AntiTree& t : enumerate_anti_trees(3)) {
        int roots = 0;
        for (int i = 0; i < 3; ++i)
            if (t.parent[i] == -1) ++roots;
        CHECK(roots == 1);
        CHECK(t.parent[t.root] == -1);
    }
}

TEST_CASE("the size-topology product has a plenary anti-tree") {
    auto ma = stc();
    auto plenary = plenary_anti_trees(*ma);
    CHECK(!plenary.empty());
}

TEST_CASE("anti-tree walk extracts a basic refinement of every consistent relation") {
    auto ma = stc();
    auto plenary = plenary_anti_trees(*ma);
    REQUIRE(!plenary.empty());
    const AntiTree& t = plenary.front();
    const Algebra& rcc8 = ma->component(0);
    const Algebra& pa = ma->component(1);
    int checked = 0;
    for (Bits r1 = 1; r1 < (Bits{1} << rcc8.atom_count()); ++r1)
        for (Bits r2 = 1; r2 < (Bits{1} << pa.atom_count()); ++r2) {
            MultiRelation r = ma->make({r1, r2});
            if (!is_projection_consistent(r)) continue;
            ++checked;
            auto basic = antitree_basic_refinement(r, t);
            REQUIRE(basic.has_value());
            CHECK(basic->is_basic());
            CHECK(mr_subset(*basic, r));
            CHECK(is_projection_consistent(*basic));
        }
    CHECK(checked > 0);
}

TEST_CASE("anti-tree walk also covers the three-component sequence formalism") {
    auto tpc3 = catalog().multi_algebra("TPC3");
    auto plenary = plenary_anti_trees(*tpc3);
    REQUIRE(!plenary.empty());
    const AntiTree& t = plenary.front();
    int checked = 0;
    for (Bits r1 = 1; r1 < 8; ++r1)
        for (Bits r2 = 1; r2 < 8; ++r2)
            for (Bits r3 = 1; r3 < 8; ++r3) {
                MultiRelation r = tpc3->make({r1, r2, r3});
                if (!is_projection_consistent(r)) continue;
                ++checked;
                auto basic = antitree_basic_refinement(r, t);
                REQUIRE(basic.has_value());
                CHECK(basic->is_basic());
                CHECK(mr_subset(*basic, r));
                CHECK(is_projection_consistent(*basic));
            }
    CHECK(checked > 0);
}

TEST_CASE("componentwise relation operations") {
    auto ma = stc();
    const Algebra& rcc8 = ma->component(0);
    const Algebra& pa = ma->component(1);
    MultiRelation r = ma->make({bits_of(rcc8, {"TPP", "EQ"}), bits_of(pa, {"<", "="})});
    MultiRelation s = ma->make({bits_of(rcc8, {"TPP"}), bits_of(pa, {"="})});
    CHECK(mr_subset(s, r));
    CHECK(mr_intersect(r, s) == s);
    CHECK(mr_union(r, s) == r);
    MultiRelation c = mr_converse(r);
    CHECK(c.parts[0] == bits_of(rcc8, {"TPPI", "EQ"}));
    CHECK(c.parts[1] == bits_of(pa, {">", "="}));
    MultiRelation comp = mr_compose(s, s);
    CHECK(comp.parts[0] == rel_compose({&rcc8, bits_of(rcc8, {"TPP"})},
                                       {&rcc8, bits_of(rcc8, {"TPP"})})
                               .bits);
}

TEST_CASE("weakening replaces projections by constant-full and is tree-shaped") {
    auto ma = stc();
    auto weak = catalog().multi_algebra("STC|full:2:1");
    REQUIRE(weak);
    const Algebra& rcc8 = ma->component(0);
    const Algebra& pa = ma->component(1);
    Bits full = (Bits{1} << rcc8.atom_count()) - 1;
    for (int t = 0; t < pa.atom_count(); ++t)
        CHECK(img(weak->projection(1, 0), Bits{1} << t) == full);
    // the other direction is untouched
    for (int a = 0; a < rcc8.atom_count(); ++a)
        CHECK(img(weak->projection(0, 1), Bits{1} << a) ==
              img(ma->projection(0, 1), Bits{1} << a));
    bool tree_weakening_somewhere = false;
    for (const AntiTree& t : plenary_anti_trees(*ma))
        if (is_tree_weakening(*ma, *weak, t)) tree_weakening_somewhere = true;
    CHECK(tree_weakening_somewhere);
}

TEST_CASE("weakening rejects replacements that are not supersets") {
    auto ma = stc();
    const Projection& orig = ma->projection(0, 1);
    const Algebra& rcc8 = ma->component(0);
    const Algebra& pa = ma->component(1);
    std::vector<Bits> table(rcc8.atom_count(), 0);  // empty images: not weaker
    Projection narrower(&rcc8, &pa, table);
    std::map<std::pair<int, int>, Projection> repl{{{0, 1}, narrower}};
    CHECK_THROWS_AS(weaken(*ma, "bad", repl), algebra_error);
    (void)orig;
}
