// The catalog: named algebras, multi-algebras, subclasses, refinements and
// declared facts (with literature citations), loaded from a data directory
// plus built-in families.
//
// Built-ins:
//  - subclasses of RCC8 defined by predicates (P8, NP8, H8, Q8, C8, N8) are
//    generated when an algebra named RCC8 with the standard atoms is loaded;
//  - product subclasses over STC (RCC8_s x PA_s, H8 x PA, Q8 x PA, C8 x PA);
//  - refinements h_max (PA) and h_H8 / h_Q8 / h_C8 (RCC8);
//  - the temporal-sequence family TPC<m> and the scale-sequence family
//    SPC<m> (scales totally ordered from finest to coarsest), built on
//    demand for 2 <= m <= 9;
//  - weakenings named "<multialgebra>|full:i:j[,full:k:l...]" replacing the
//    listed projections (1-based component indices) by the constant-full
//    operator.

#ifndef QCR_CATALOG_HPP
#define QCR_CATALOG_HPP

#include <map>

#include "qcr/multialg.hpp"
#include "qcr/qcn.hpp"
#include "qcr/refinement.hpp"

namespace qcr {

/// A fact imported from the literature rather than verified here.
struct DeclaredFact {
    std::string property;   // e.g. "minimal", "complete", "maximal-refinement"
    std::string statement;  // human-readable statement
    std::string citation;   // literature reference
};

/// A set of relations of one algebra. The empty relation is an implicit
/// member of every subclass (required for closure under intersection).
struct SliceSet {
    std::string name;
    const Algebra* alg = nullptr;
    std::vector<Bits> relations;  // sorted, unique, non-empty entries

    bool contains(Bits b) const;
    std::size_t size() const { return relations.size(); }
};

/// A product-form subclass of a multi-algebra: one relation set per
/// component; a multi-relation belongs to the subclass when every part
/// belongs to the component set.
struct Subclass {
    std::string name;
    std::shared_ptr<const MultiAlgebra> ma;
    std::vector<SliceSet> slices;
    std::vector<DeclaredFact> facts;

    bool contains(const MultiRelation& r) const;
    const DeclaredFact* fact(const std::string& property) const;
};

class Catalog {
public:
    /// Loads every *.alg, *.malg and *.sub file in the directory (algebras
    /// first), then registers the built-ins that apply. The directory
    /// defaults to the QCR_CATALOG_DIR environment variable, falling back to
    /// the compiled-in data directory.
    static Catalog load(const std::string& directory = "");

    std::shared_ptr<const Algebra> algebra(const std::string& name) const;
    /// Resolves multi-algebras, including on-demand TPC<m> / SPC<m> and
    /// "<name>|full:i:j" weakenings; mono(<algebra>) wrappers also resolve.
    std::shared_ptr<const MultiAlgebra> multi_algebra(const std::string& name) const;
    const Subclass& subclass(const std::string& name) const;
    const Refinement& refinement(const std::string& name) const;

    /// Builds a multi-refinement from a comma-separated list of component
    /// refinement names ("id" for the identity), e.g. "h_H8,h_max".
    MultiRefinement multi_refinement(const std::string& spec,
                                     std::shared_ptr<const MultiAlgebra> ma) const;

    /// The declared completeness fact of a formalism (algebraically closed
    /// scenarios are satisfiable), or nullptr if none is on record.
    const DeclaredFact* completeness(const std::string& multi_algebra_name) const;

    std::vector<std::string> algebra_names() const;
    std::vector<std::string> multi_algebra_names() const;
    std::vector<std::string> subclass_names() const;
    std::vector<std::string> refinement_names() const;

private:
    std::map<std::string, std::shared_ptr<const Algebra>> algebras_;
    mutable std::map<std::string, std::shared_ptr<const MultiAlgebra>> multis_;
    std::map<std::string, Subclass> subclasses_;
    std::map<std::string, Refinement> refinements_;
    std::map<std::string, DeclaredFact> completeness_;

    void register_builtins();
};

/// The compiled-in default data directory.
std::string default_catalog_directory();

}  // namespace qcr

#endif  // QCR_CATALOG_HPP
