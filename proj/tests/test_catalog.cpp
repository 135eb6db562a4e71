// Catalog: data-directory loading, built-in subclasses defined by
// predicates, refinement tables, weakenings, sequence formalisms and
// declared facts. The subclass predicates are re-stated here independently
// as the reference the built-ins must match.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "qcr/catalog.hpp"

using namespace qcr;

namespace {

Catalog& catalog() {
    static Catalog cat = Catalog::load();
    return cat;
}

struct Rcc8Atoms {
    Bits DC, EC, PO, TPP, NTPP, TPPI, NTPPI, EQ;
    explicit Rcc8Atoms(const Algebra& a)
        : DC(Bits{1} << a.atom_index("DC")),
          EC(Bits{1} << a.atom_index("EC")),
          PO(Bits{1} << a.atom_index("PO")),
          TPP(Bits{1} << a.atom_index("TPP")),
          NTPP(Bits{1} << a.atom_index("NTPP")),
          TPPI(Bits{1} << a.atom_index("TPPI")),
          NTPPI(Bits{1} << a.atom_index("NTPPI")),
          EQ(Bits{1} << a.atom_index("EQ")) {}
};

// Reference predicates for the built-in topological subclasses.
bool in_N8(const Rcc8Atoms& k, Bits r) {
    return !(r & k.PO) && (r & (k.TPP | k.NTPP)) && (r & (k.TPPI | k.NTPPI));
}
bool in_NP8(const Rcc8Atoms& k, Bits r) {
    if (in_N8(k, r)) return true;
    for (Bits r1 : {Bits{0}, k.DC})
        for (Bits r2 : {k.NTPP, k.NTPPI})
            if (r == (r1 | k.EC | r2 | k.EQ)) return true;
    return false;
}
bool in_P8(const Rcc8Atoms& k, Bits r) { return !in_NP8(k, r); }
bool in_H8(const Rcc8Atoms& k, Bits r) {
    if (!in_P8(k, r)) return false;
    if ((r & k.NTPP) && (r & k.EQ) && !(r & k.TPP)) return false;
    if ((r & k.NTPPI) && (r & k.EQ) && !(r & k.TPPI)) return false;
    return true;
}
bool in_Q8(const Rcc8Atoms& k, Bits r) {
    if (!in_P8(k, r)) return false;
    if ((r & k.EQ) && (r & (k.TPP | k.NTPP | k.TPPI | k.NTPPI)) && !(r & k.PO))
        return false;
    return true;
}
bool in_C8(const Rcc8Atoms& k, Bits r) {
    if (!in_P8(k, r)) return false;
    if ((r & k.EC) && (r & (k.TPP | k.NTPP | k.TPPI | k.NTPPI | k.EQ)) &&
        !(r & k.PO))
        return false;
    return true;
}

std::set<Bits> slice_set(const SliceSet& s) {
    return std::set<Bits>(s.relations.begin(), s.relations.end());
}

}  // namespace

TEST_CASE("the bundled data directory provides the named entries") {
    auto algs = catalog().algebra_names();
    CHECK(std::count(algs.begin(), algs.end(), "PA") == 1);
    CHECK(std::count(algs.begin(), algs.end(), "RCC8") == 1);
    auto subs = catalog().subclass_names();
    for (const char* s : {"PA_s", "RCC8_s", "H8", "Q8", "C8", "P8", "NP8", "N8",
                          "RCC8s_x_PAs", "H8_x_PA", "Q8_x_PA", "C8_x_PA"})
        CHECK(std::count(subs.begin(), subs.end(), s) == 1);
    auto refs = catalog().refinement_names();
    for (const char* r : {"h_max", "h_H8", "h_Q8", "h_C8"})
        CHECK(std::count(refs.begin(), refs.end(), r) == 1);
}

TEST_CASE("subclass table sizes") {
    CHECK(catalog().subclass("PA_s").slices[0].size() == 5);
    CHECK(catalog().subclass("RCC8_s").slices[0].size() == 64);
    // the empty relation is an implicit member of every subclass
    CHECK(catalog().subclass("PA_s").slices[0].contains(0));
    CHECK(catalog().subclass("RCC8_s").slices[0].contains(0));
}

TEST_CASE("predicate-defined topological subclasses match the reference predicates") {
    auto rcc8 = catalog().algebra("RCC8");
    Rcc8Atoms k(*rcc8);
    auto expect = [&](const char* name, auto pred) {
        std::set<Bits> want;
        for (Bits r = 1; r < 256; ++r)
            if (pred(k, r)) want.insert(r);
        CHECK(slice_set(catalog().subclass(name).slices[0]) == want);
    };
    expect("N8", in_N8);
    expect("NP8", in_NP8);
    expect("P8", in_P8);
    expect("H8", in_H8);
    expect("Q8", in_Q8);
    expect("C8", in_C8);
}

TEST_CASE("refinement tables: images refine, preserve non-emptiness, land in the subclass") {
    auto rcc8 = catalog().algebra("RCC8");
    Rcc8Atoms k(*rcc8);
    const SliceSet& rcc8s = catalog().subclass("RCC8_s").slices[0];
    struct Row { const char* h; const char* source; };
    for (const Row& row : {Row{"h_H8", "H8"}, Row{"h_Q8", "Q8"}, Row{"h_C8", "C8"}}) {
        const Refinement& h = catalog().refinement(row.h);
        const SliceSet& source = catalog().subclass(row.source).slices[0];
        for (Bits r = 1; r < 256; ++r) {
            Bits img = h.apply_bits(r);
            CHECK((img & ~r) == 0);
            CHECK(img != 0);
            // members of the source subclass are refined into the
            // distributive slice
            if (source.contains(r)) CHECK(rcc8s.contains(img));
        }
    }
    // frozen spot values of the topological refinement on two relations
    const Refinement& h = catalog().refinement("h_H8");
    CHECK(h.apply_bits(k.DC | k.TPP) == k.DC);
    CHECK(h.apply_bits(k.PO | k.NTPP | k.EQ) == k.PO);
}

TEST_CASE("the order refinement h_max maps every relation into the order subclass") {
    auto pa = catalog().algebra("PA");
    Bits lt = Bits{1} << pa->atom_index("<");
    Bits eq = Bits{1} << pa->atom_index("=");
    Bits gt = Bits{1} << pa->atom_index(">");
    const Refinement& h = catalog().refinement("h_max");
    CHECK(h.apply_bits(lt | eq) == lt);
    CHECK(h.apply_bits(eq | gt) == gt);
    CHECK(h.apply_bits(lt | eq | gt) == (lt | gt));
    CHECK(h.apply_bits(lt | gt) == (lt | gt));
    for (Bits r : {lt, eq, gt}) CHECK(h.apply_bits(r) == r);
    const SliceSet& pas = catalog().subclass("PA_s").slices[0];
    for (Bits r = 1; r < 8; ++r) CHECK(pas.contains(h.apply_bits(r)));
}

TEST_CASE("product subclasses combine a topological slice with an order slice") {
    const Subclass& s = catalog().subclass("RCC8s_x_PAs");
    CHECK(s.ma->name() == "STC");
    CHECK(s.slices.size() == 2);
    CHECK(s.slices[0].size() == 64);
    CHECK(s.slices[1].size() == 5);
    const Subclass& h8 = catalog().subclass("H8_x_PA");
    CHECK(h8.slices[1].size() == 7);  // every non-empty order relation
    auto ma = catalog().multi_algebra("STC");
    MultiRelation inside = ma->make({h8.slices[0].relations[0], Bits{7}});
    CHECK(h8.contains(inside));
    Rcc8Atoms k(ma->component(0));
    MultiRelation outside = ma->make({k.TPP | k.TPPI, Bits{7}});
    CHECK(!in_P8(k, k.TPP | k.TPPI));
    CHECK(!h8.contains(outside));
}

TEST_CASE("weakenings resolve by name and cache") {
    auto w1 = catalog().multi_algebra("STC|full:2:1");
    auto w2 = catalog().multi_algebra("STC|full:2:1");
    CHECK(w1 == w2);
    CHECK(w1->name() == "STC|full:2:1");
    CHECK_THROWS(catalog().multi_algebra("STC|full:9:1"));
}

TEST_CASE("sequence formalisms build on demand for small arity") {
    auto tpc = catalog().multi_algebra("TPC4");
    REQUIRE(tpc->arity() == 4);
    const Algebra& pa = tpc->component(0);
    Bits lt = Bits{1} << pa.atom_index("<");
    Bits eq = Bits{1} << pa.atom_index("=");
    Bits full = 7;
    // adjacent granularities: coarsening can merge, distant ones are free
    CHECK(tpc->projection(0, 1).apply({&pa, lt}).bits == (lt | eq));
    CHECK(tpc->projection(0, 2).apply({&pa, lt}).bits == full);
    CHECK(tpc->projection(0, 1).apply({&pa, eq}).bits == full);
    auto spc = catalog().multi_algebra("SPC3");
    REQUIRE(spc->arity() == 3);
    // scale sequences constrain every pair: what holds when zooming out
    CHECK(spc->projection(0, 2).apply({&pa, lt}).bits == (lt | eq));
    CHECK(spc->projection(2, 0).apply({&pa, lt}).bits == lt);
    CHECK(spc->projection(2, 0).apply({&pa, eq}).bits == full);
    CHECK_THROWS(catalog().multi_algebra("TPC1"));
    CHECK_THROWS(catalog().multi_algebra("SPC10"));
}

TEST_CASE("multi-refinements assemble from component names") {
    auto ma = catalog().multi_algebra("STC");
    MultiRefinement h = catalog().multi_refinement("h_H8,h_max", ma);
    CHECK(h.component(0).name() == "h_H8");
    CHECK(h.component(1).name() == "h_max");
    MultiRefinement idh = catalog().multi_refinement("h_Q8,id", ma);
    const Algebra& pa = ma->component(1);
    for (Bits r = 1; r < 8; ++r)
        CHECK(idh.component(1).apply_bits(r) == r);
    CHECK_THROWS(catalog().multi_refinement("h_max,h_H8", ma));  // wrong slots
}

TEST_CASE("declared facts carry citations") {
    const DeclaredFact* c = catalog().completeness("STC");
    REQUIRE(c != nullptr);
    CHECK(!c->citation.empty());
    CHECK(catalog().completeness("mono(PA)") != nullptr);
    CHECK(catalog().completeness("mono(RCC8)") != nullptr);
    CHECK(catalog().completeness("TPC5") != nullptr);
    const DeclaredFact* m = catalog().subclass("PA_s").fact("minimal");
    REQUIRE(m != nullptr);
    CHECK(!m->citation.empty());
    CHECK(catalog().subclass("RCC8_s").fact("minimal") != nullptr);
}

TEST_CASE("unknown names raise errors") {
    CHECK_THROWS(catalog().algebra("NOPE"));
    CHECK_THROWS(catalog().multi_algebra("NOPE"));
    CHECK_THROWS(catalog().subclass("NOPE"));
    CHECK_THROWS(catalog().refinement("NOPE"));
}
