// Machine verification of subclass properties and assembly of tractability
// certificates.
//
// Two certification routes are implemented:
//  - slicing: per-slice basic-subclass checks, declared slice minimality,
//    superdistributivity of the projections over composition and
//    intersection (which implies dissociability), projection images inside
//    the slices, a plenary anti-tree, declared completeness of the
//    formalism, and optionally a tree weakening under which the conditions
//    are established;
//  - refinement: per-slice subclass and composition-stability checks,
//    bi-slice projection-stability checks, projection and refinement images
//    inside a target subclass that already holds a certificate.
// Every verified condition is enumerated exhaustively; imported facts are
// listed with their citations.

#ifndef QCR_ANALYSIS_HPP
#define QCR_ANALYSIS_HPP

#include "qcr/catalog.hpp"

namespace qcr {

/// Outcome of one exhaustive property check.
struct PropertyReport {
    std::string property;
    bool holds = false;
    std::string detail;            // counterexample or summary
    std::uint64_t checked = 0;     // number of enumerated instances
};

// ---- slice-level checks (classical relation sets) ----

/// Closed under composition, intersection and converse (the empty relation
/// is an implicit member).
PropertyReport check_slice_subclass(const SliceSet& s);

/// check_slice_subclass plus: contains every atom and the universal relation.
PropertyReport check_slice_basic_subclass(const SliceSet& s);

// ---- projection checks ----

/// p(r);p(r') is contained in p(r;r') for all r, r' in `rels` with r;r'
/// non-empty.
PropertyReport check_superdistributive_composition(const Projection& p,
                                                   const std::vector<Bits>& rels);

/// p(r) & p(r') is contained in p(r & r') for all r, r' in `rels` with
/// non-empty intersection.
PropertyReport check_superdistributive_intersection(const Projection& p,
                                                    const std::vector<Bits>& rels);

// ---- subclass-level checks over a multi-algebra ----

/// Direct check that the projection closure of every member is a member.
/// `ma` overrides the multi-algebra used for projections (e.g. a weakening);
/// it must share the components of s.ma. Null means s.ma.
PropertyReport check_conv_closed(const Subclass& s,
                                 const MultiAlgebra* ma = nullptr);

/// Superdistributivity of every projection over composition and
/// intersection on the slice relations (with the side conditions above).
PropertyReport check_conv_distributive(const Subclass& s,
                                       const MultiAlgebra* ma = nullptr);

/// Every projection image of a slice relation lies in the target slice.
PropertyReport check_projection_images(const Subclass& s,
                                       const MultiAlgebra* ma = nullptr);

struct DissociabilityOptions {
    const MultiAlgebra* ma = nullptr;  // projection override (weakening)
    int jobs = 1;
    bool force = false;           // lift the bi-slice size guard (1024)
    bool counterexample_only = false;  // stop at the first violation, no guard
};

/// Exhaustive check over all 3-variable networks whose edges are drawn from
/// the bi-slice of components (i, j): projection-closing the edges and then
/// closing under composition must yield a trivially inconsistent or
/// algebraically consistent network. Refused (holds=false, detail explains)
/// when the bi-slice exceeds 1024 relations, unless force or
/// counterexample_only is set.
PropertyReport check_dissociable(const Subclass& s, int i, int j,
                                 const DissociabilityOptions& opts);

// ---- refinement stability checks ----

/// Every 3-variable network with edges from the slice whose composition-only
/// closure is non-empty keeps that property after refining its edges by h.
PropertyReport check_composition_stable(const SliceSet& s, const Refinement& h,
                                        int jobs = 1);

/// Every projection-consistent pair in the bi-slice (i, j) stays
/// projection-consistent after refining both parts.
PropertyReport check_projection_stable(const Subclass& s,
                                       const MultiRefinement& h, int i, int j);

/// Projections commute with the refinement: the image of r equals the image
/// of h(r), for every slice relation and every projection.
PropertyReport check_conv_invariant(const Subclass& s, const MultiRefinement& h);

// ---- certificates ----

struct TractabilityCertificate {
    std::string subclass;
    std::string formalism;          // the multi-algebra the networks live in
    std::string route;              // "slicing" or "refinement"
    std::string weakening;          // weakened multi-algebra name, if any
    bool granted = false;
    std::string refusal;            // reason/counterexample when not granted
    std::vector<PropertyReport> verified;
    std::vector<DeclaredFact> assumed;
};

std::string to_string(const TractabilityCertificate& c);

/// Slicing route. `weakening` (nullable) is a multi-algebra on the same
/// components under which the distributivity and image conditions are
/// established; it must be a tree weakening of the formalism.
TractabilityCertificate certify_slicing(const Catalog& cat, const Subclass& s,
                                        const MultiAlgebra* weakening = nullptr,
                                        int jobs = 1);

/// Refinement route: reduces networks over s to networks over `target`
/// through the multi-refinement h; `target_cert` must be granted.
TractabilityCertificate certify_refinement(const Catalog& cat, const Subclass& s,
                                           const MultiRefinement& h,
                                           const Subclass& target,
                                           const TractabilityCertificate& target_cert,
                                           int jobs = 1);

}  // namespace qcr

#endif  // QCR_ANALYSIS_HPP
