// Property checks and tractability certificates.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qcr/analysis.hpp"
#include "qcr/catalog.hpp"

using namespace qcr;

namespace {

Catalog& catalog() {
    static Catalog cat = Catalog::load();
    return cat;
}

}  // namespace

TEST_CASE("order and topological base slices are basic subclasses") {
    CHECK(check_slice_basic_subclass(catalog().subclass("PA_s").slices[0]).holds);
    CHECK(check_slice_basic_subclass(catalog().subclass("RCC8_s").slices[0]).holds);
    for (const char* s : {"H8", "Q8", "C8"})
        CHECK(check_slice_basic_subclass(catalog().subclass(s).slices[0]).holds);
}

TEST_CASE("a slice missing the universal relation is rejected with a witness") {
    SliceSet s = catalog().subclass("PA_s").slices[0];
    s.relations.erase(
        std::find(s.relations.begin(), s.relations.end(), Bits{7}));
    PropertyReport rep = check_slice_basic_subclass(s);
    CHECK(!rep.holds);
    CHECK(!rep.detail.empty());
    // composition closure also breaks: < ; > is universal
    PropertyReport rep2 = check_slice_subclass(s);
    CHECK(!rep2.holds);
}

TEST_CASE("the topology-to-size projection distributes over composition and intersection") {
    auto ma = catalog().multi_algebra("STC");
    const Projection& p = ma->projection(0, 1);
    std::vector<Bits> all;
    for (Bits r = 1; r < 256; ++r) all.push_back(r);
    PropertyReport comp = check_superdistributive_composition(p, all);
    CHECK(comp.holds);
    CHECK(comp.checked > 0);
    PropertyReport inter = check_superdistributive_intersection(
        p, catalog().subclass("RCC8_s").slices[0].relations);
    CHECK(inter.holds);
}

TEST_CASE("the size-to-topology projection fails superdistributivity with a witness") {
    auto ma = catalog().multi_algebra("STC");
    const Projection& p = ma->projection(1, 0);
    std::vector<Bits> all;
    for (Bits r = 1; r < 8; ++r) all.push_back(r);
    PropertyReport rep = check_superdistributive_composition(p, all);
    CHECK(!rep.holds);
    CHECK(!rep.detail.empty());
}

TEST_CASE("the distributive product subclass is closed under projection closure") {
    PropertyReport rep = check_conv_closed(catalog().subclass("RCC8s_x_PAs"));
    CHECK(rep.holds);
    CHECK(rep.checked == 64 * 5);
}

TEST_CASE("projection images of the product subclass stay inside the slices") {
    CHECK(check_projection_images(catalog().subclass("RCC8s_x_PAs")).holds);
    auto weak = catalog().multi_algebra("STC|full:2:1");
    CHECK(check_projection_images(catalog().subclass("RCC8s_x_PAs"), weak.get())
              .holds);
}

TEST_CASE("dissociability enumeration is guarded on large bi-slices") {
    DissociabilityOptions opts;
    PropertyReport rep = check_dissociable(catalog().subclass("H8_x_PA"), 0, 1, opts);
    CHECK(!rep.holds);
    CHECK(rep.detail.find("1024") != std::string::npos);
    CHECK(rep.checked == 0);
}

TEST_CASE("the unrefined topological subclasses are not dissociable") {
    DissociabilityOptions opts;
    opts.counterexample_only = true;
    opts.jobs = 4;
    PropertyReport rep = check_dissociable(catalog().subclass("H8_x_PA"), 0, 1, opts);
    CHECK(!rep.holds);
    CHECK(!rep.detail.empty());
}

TEST_CASE("composition stability holds trivially for the identity refinement") {
    const SliceSet& pas = catalog().subclass("PA_s").slices[0];
    Refinement id = Refinement::identity(pas.alg);
    CHECK(check_composition_stable(pas, id, 2).holds);
}

TEST_CASE("projection stability and invariance of the refined subclasses") {
    const Subclass& q8 = catalog().subclass("Q8_x_PA");
    MultiRefinement h = catalog().multi_refinement("h_Q8,h_max", q8.ma);
    CHECK(check_projection_stable(q8, h, 0, 1).holds);
    CHECK(check_projection_stable(q8, h, 1, 0).holds);
    MultiRefinement hq_id = catalog().multi_refinement("h_Q8,id", q8.ma);
    CHECK(check_conv_invariant(q8, hq_id).holds);
}

TEST_CASE("slicing certificate: granted under the tree weakening, refused without") {
    const Subclass& s = catalog().subclass("RCC8s_x_PAs");
    auto weak = catalog().multi_algebra("STC|full:2:1");
    TractabilityCertificate with = certify_slicing(catalog(), s, weak.get(), 4);
    CHECK(with.granted);
    CHECK(with.route.rfind("slicing", 0) == 0);
    CHECK(!with.verified.empty());
    CHECK(!with.assumed.empty());
    std::string text = to_string(with);
    CHECK(text.find("GRANTED") != std::string::npos);
    TractabilityCertificate without = certify_slicing(catalog(), s, nullptr, 4);
    CHECK(!without.granted);
    CHECK(!without.refusal.empty());
}

TEST_CASE("refinement certificate: granted for the refined subclass, needs a target certificate") {
    const Subclass& target = catalog().subclass("RCC8s_x_PAs");
    auto weak = catalog().multi_algebra("STC|full:2:1");
    TractabilityCertificate target_cert =
        certify_slicing(catalog(), target, weak.get(), 4);
    REQUIRE(target_cert.granted);
    const Subclass& h8 = catalog().subclass("H8_x_PA");
    MultiRefinement h = catalog().multi_refinement("h_H8,h_max", h8.ma);
    TractabilityCertificate cert =
        certify_refinement(catalog(), h8, h, target, target_cert, 4);
    CHECK(cert.granted);
    CHECK(cert.route.rfind("refinement", 0) == 0);
    TractabilityCertificate bogus;
    bogus.granted = false;
    TractabilityCertificate refused =
        certify_refinement(catalog(), h8, h, target, bogus, 4);
    CHECK(!refused.granted);
}
