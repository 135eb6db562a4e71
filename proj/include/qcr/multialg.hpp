// Products of relation algebras connected by projection operators.
//
// A multi-algebra is a finite list of component algebras together with, for
// every ordered pair of distinct components (i, j), a projection operator
// mapping atoms of component i to relations of component j; projections are
// lifted to arbitrary relations by union. A multi-relation is one relation
// per component. The projection-closure operator repeatedly intersects each
// part with the projections of the other parts until a fixpoint.

#ifndef QCR_MULTIALG_HPP
#define QCR_MULTIALG_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <utility>

#include "qcr/relation.hpp"

namespace qcr {

/// A projection operator from one algebra into another, given atomwise.
class Projection {
public:
    Projection() = default;
    /// `table[a]` is the image (in `target`) of atom `a` of `source`.
    Projection(const Algebra* source, const Algebra* target,
               std::vector<Bits> table);

    const Algebra* source() const { return source_; }
    const Algebra* target() const { return target_; }
    Bits atom_image(int a) const { return table_[a]; }

    /// Union-lift: image of an arbitrary relation of the source algebra.
    Relation apply(const Relation& r) const;

    /// True when the operator respects converse on every atom:
    /// image(conv(a)) equals the converse of image(a).
    bool respects_converse() const;

    /// The inverse operator: atom b of the target maps to every source atom
    /// whose image contains b.
    Projection inverse() const;

    /// The constant operator mapping every source atom to the full target
    /// relation.
    static Projection constant_full(const Algebra* source, const Algebra* target);

private:
    const Algebra* source_ = nullptr;
    const Algebra* target_ = nullptr;
    std::vector<Bits> table_;
};

class MultiAlgebra;

/// One relation per component of a multi-algebra.
struct MultiRelation {
    const MultiAlgebra* ma = nullptr;
    std::vector<Bits> parts;

    bool operator==(const MultiRelation&) const = default;
    /// True when some part is the empty relation.
    bool has_empty_part() const {
        for (Bits b : parts)
            if (b == 0) return true;
        return false;
    }
    /// True when every part is a single atom.
    bool is_basic() const {
        for (Bits b : parts)
            if (popcount_bits(b) != 1) return false;
        return true;
    }
};

/// A product of algebras with a projection for each ordered component pair.
class MultiAlgebra {
public:
    /// `projections` must contain an entry for every ordered pair (i, j),
    /// i != j, whose source/target match components i/j and which respects
    /// converse on atoms.
    MultiAlgebra(std::string name,
                 std::vector<std::shared_ptr<const Algebra>> components,
                 std::map<std::pair<int, int>, Projection> projections);

    const std::string& name() const { return name_; }
    int arity() const { return static_cast<int>(components_.size()); }
    const Algebra& component(int i) const { return *components_[i]; }
    std::shared_ptr<const Algebra> component_ptr(int i) const {
        return components_[i];
    }
    const Projection& projection(int i, int j) const;

    MultiRelation universal() const;
    MultiRelation empty() const;
    /// The identity multi-relation used on reflexive network edges: the
    /// product of the component identities is not generally meaningful, so
    /// networks store nothing on the diagonal; this returns the product of
    /// component identity relations for convenience.
    MultiRelation identity() const;

    MultiRelation make(std::vector<Bits> parts) const;

    std::string to_string(const MultiRelation& r) const;

    /// All basic multi-relations (products of component atoms), in
    /// lexicographic component-atom order.
    std::vector<MultiRelation> basic_relations() const;

    /// Number of basic multi-relations.
    std::size_t basic_count() const;

private:
    std::string name_;
    std::vector<std::shared_ptr<const Algebra>> components_;
    std::map<std::pair<int, int>, Projection> projections_;
};

// ---- componentwise operations ----

MultiRelation mr_union(const MultiRelation& r, const MultiRelation& s);
MultiRelation mr_intersect(const MultiRelation& r, const MultiRelation& s);
MultiRelation mr_converse(const MultiRelation& r);
MultiRelation mr_compose(const MultiRelation& r, const MultiRelation& s);
bool mr_subset(const MultiRelation& r, const MultiRelation& s);

/// Greatest fixpoint of parts[j] &= projection(i,j)(parts[i]) over all pairs.
/// Order-independent; returns the closed multi-relation.
MultiRelation projection_closure(const MultiRelation& r);

/// True when r is closed under all projections and has no empty part.
bool is_projection_consistent(const MultiRelation& r);

/// True when r equals its projection closure (empty parts allowed).
bool is_projection_closed(const MultiRelation& r);

// ---- anti-trees and constructive satisfiability of closed relations ----

/// An anti-tree over component indices: every non-root node has exactly one
/// outgoing edge and a unique path to the single root.
struct AntiTree {
    int root = -1;
    std::vector<int> parent;  // parent[i] = target of i's edge; parent[root] = -1
};

/// Enumerates all anti-trees over m nodes. Refuses (throws algebra_error)
/// when m > 6 unless force is set.
std::vector<AntiTree> enumerate_anti_trees(int m, bool force = false);

/// Checks the chain condition making `t` a plenary anti-tree of `ma`: for all
/// distinct (i, j) and every atom b of component i, the direct projection
/// image of b contains the image of b through the unique anti-tree chain
/// from i to j (ascending edges use the edge projections, descending edges
/// use their inverses).
bool is_plenary(const MultiAlgebra& ma, const AntiTree& t,
                std::string* counterexample = nullptr);

/// Finds all plenary anti-trees of `ma` (enumeration guard as above).
std::vector<AntiTree> plenary_anti_trees(const MultiAlgebra& ma,
                                         bool force = false);

/// Constructive witness extraction along a plenary anti-tree: starting from a
/// projection-consistent multi-relation, picks one atom per component by
/// walking the anti-tree from the root downward, and returns a basic
/// projection-consistent refinement. Returns nullopt if the walk gets stuck
/// (cannot happen when `t` is plenary and r is projection-consistent).
std::optional<MultiRelation> antitree_basic_refinement(const MultiRelation& r,
                                                       const AntiTree& t);

// ---- weakenings ----

/// Returns a copy of `ma` (renamed) where the listed projections are replaced.
/// Each replacement must be atomwise weaker than (a superset of) the original
/// and must respect converse; throws algebra_error otherwise.
std::shared_ptr<MultiAlgebra> weaken(
    const MultiAlgebra& ma, std::string new_name,
    const std::map<std::pair<int, int>, Projection>& replacements);

/// True when `weak` is a weakening of `ma` (same components, atomwise
/// supersets everywhere) that leaves every projection along the plenary
/// anti-tree `t` of `ma` unchanged.
bool is_tree_weakening(const MultiAlgebra& ma, const MultiAlgebra& weak,
                       const AntiTree& t);

}  // namespace qcr

#endif  // QCR_MULTIALG_HPP
