// Qualitative constraint networks over a multi-algebra: normalized complete
// graphs of multi-relations, algebraic closure, scenario enumeration and
// satisfiability decision procedures.

#ifndef QCR_QCN_HPP
#define QCR_QCN_HPP

#include <functional>
#include <memory>

#include "qcr/multialg.hpp"
#include "qcr/refinement.hpp"

namespace qcr {

/// A normalized network: for every ordered variable pair (x, y) a
/// multi-relation with N[y][x] the converse of N[x][y]; unlisted edges are
/// universal. The multi-algebra is held alive by shared ownership.
class Network {
public:
    Network(std::shared_ptr<const MultiAlgebra> ma,
            std::vector<std::string> variables);

    const MultiAlgebra& multi_algebra() const { return *ma_; }
    std::shared_ptr<const MultiAlgebra> multi_algebra_ptr() const { return ma_; }
    int size() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& variables() const { return vars_; }
    int variable_index(const std::string& v) const;

    const MultiRelation& edge(int x, int y) const { return edges_[x * size() + y]; }
    /// Sets N[x][y] and N[y][x] (converse) simultaneously.
    void set_edge(int x, int y, const MultiRelation& r);
    /// Intersects into N[x][y] (and converse into N[y][x]); returns true if
    /// the edge changed.
    bool tighten_edge(int x, int y, const MultiRelation& r);

    bool operator==(const Network&) const = default;

private:
    std::shared_ptr<const MultiAlgebra> ma_;
    std::vector<std::string> vars_;
    std::vector<MultiRelation> edges_;
};

// ---- structural operations ----

/// The classical network of component i, as a network over a one-component
/// multi-algebra wrapping that component.
Network slice(const Network& n, int i);

/// A one-component multi-algebra wrapping an algebra (name "mono(<name>)").
std::shared_ptr<const MultiAlgebra> mono_multi_algebra(
    std::shared_ptr<const Algebra> alg);

/// True when both networks share variables and every edge of `finer` is a
/// subset of the corresponding edge of `coarser`.
bool refines(const Network& finer, const Network& coarser);

/// True when every off-diagonal edge is basic.
bool is_scenario(const Network& n);

/// Applies a multi-refinement to every off-diagonal edge.
Network apply_refinement(const MultiRefinement& h, const Network& n);

// ---- algebraic closure and consistency predicates ----

/// Greatest fixpoint of per-edge projection closure and triangle tightening
/// N[x][z] &= N[x][y] ; N[y][z], computed with a worklist. Confluent.
Network algebraic_closure(const Network& n);

/// Some edge has an empty part.
bool is_trivially_inconsistent(const Network& n);

/// Every edge projection-closed and every triangle containment holds.
bool is_algebraically_closed(const Network& n);

/// The algebraic closure is not trivially inconsistent.
bool is_algebraically_consistent(const Network& n);

/// Every component slice is algebraically consistent (as a classical network).
bool is_component_consistent(const Network& n);

// ---- scenarios and satisfiability ----

/// Enumerates algebraically closed scenarios refining n (up to `limit`;
/// limit 0 means no bound). Edges are refined to basic multi-relations drawn
/// from the current edge relation.
std::vector<Network> enumerate_closed_scenarios(const Network& n,
                                                std::size_t limit);

enum class SatMethod { Closure, Backtrack, BruteForce };

enum class SatStatus { Sat, Unsat, Refused };

struct Decision {
    SatStatus status = SatStatus::Refused;
    std::string message;
    std::optional<Network> witness;  // a closed scenario, when status == Sat
};

struct SatOptions {
    SatMethod method = SatMethod::Backtrack;
    /// The closure method is only sound on networks from a subclass holding a
    /// tractability certificate; the caller asserts that here. Refused if
    /// unset with method Closure.
    bool closure_certified = false;
    /// SAT/UNSAT labels rest on the formalism's completeness (algebraically
    /// closed scenarios are satisfiable), a declared catalog fact the caller
    /// asserts here. Refused if unset.
    bool completeness_declared = false;
};

/// Decides satisfiability. Networks with fewer than two variables are
/// satisfiable by convention. Backtracking branches on whole basic
/// multi-relations drawn from the projection-closed basic refinements of the
/// smallest open edge, re-closing after each assignment. Brute force
/// enumerates scenarios exhaustively via enumerate_closed_scenarios.
Decision satisfiable(const Network& n, const SatOptions& opts);

}  // namespace qcr

#endif  // QCR_QCN_HPP
