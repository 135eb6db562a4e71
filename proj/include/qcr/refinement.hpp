// Refinement operators: relation maps h with h(r) a subset of r, mapping the
// empty relation (and only it) to the empty relation. A multi-refinement
// applies one such map per component (identity where unspecified).

#ifndef QCR_REFINEMENT_HPP
#define QCR_REFINEMENT_HPP

#include <optional>

#include "qcr/multialg.hpp"

namespace qcr {

/// A refinement of a single algebra, stored as a dense table indexed by
/// relation bits (algebras up to 16 atoms).
class Refinement {
public:
    Refinement() = default;
    /// Validates h(r) subset of r and h(r) empty iff r empty.
    Refinement(std::string name, const Algebra* alg, std::vector<Bits> table);

    const std::string& name() const { return name_; }
    const Algebra* algebra() const { return alg_; }
    Bits apply_bits(Bits r) const { return table_[r]; }
    Relation apply(const Relation& r) const;

    /// The identity refinement of an algebra.
    static Refinement identity(const Algebra* alg);

private:
    std::string name_;
    const Algebra* alg_ = nullptr;
    std::vector<Bits> table_;
};

/// One refinement per component of a multi-algebra.
class MultiRefinement {
public:
    MultiRefinement(std::string name, const MultiAlgebra* ma,
                    std::vector<Refinement> components);

    const std::string& name() const { return name_; }
    const MultiAlgebra* multi_algebra() const { return ma_; }
    const Refinement& component(int i) const { return comps_[i]; }

    MultiRelation apply(const MultiRelation& r) const;

private:
    std::string name_;
    const MultiAlgebra* ma_ = nullptr;
    std::vector<Refinement> comps_;
};

}  // namespace qcr

#endif  // QCR_REFINEMENT_HPP
