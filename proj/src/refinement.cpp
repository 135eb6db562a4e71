#include "qcr/refinement.hpp"

namespace qcr {

Refinement::Refinement(std::string name, const Algebra* alg,
                       std::vector<Bits> table)
    : name_(std::move(name)), alg_(alg), table_(std::move(table)) {
    if (!alg_) throw algebra_error("refinement without an algebra");
    if (alg_->atom_count() > 16)
        throw algebra_error("refinement '" + name_ +
                            "': dense tables support at most 16 atoms");
    const std::size_t domain = std::size_t{1} << alg_->atom_count();
    if (table_.size() != domain)
        throw algebra_error("refinement '" + name_ + "': table is not total");
    for (std::size_t r = 0; r < domain; ++r) {
        if (table_[r] & ~static_cast<Bits>(r))
            throw algebra_error("refinement '" + name_ +
                                "': image is not a subset of the argument");
        if ((table_[r] == 0) != (r == 0))
            throw algebra_error("refinement '" + name_ +
                                "': image empty iff argument empty is violated");
    }
}

Relation Refinement::apply(const Relation& r) const {
    if (r.alg != alg_)
        throw algebra_error("refinement '" + name_ +
                            "' applied to a relation of the wrong algebra");
    return {alg_, table_[r.bits]};
}

Refinement Refinement::identity(const Algebra* alg) {
    const std::size_t domain = std::size_t{1} << alg->atom_count();
    std::vector<Bits> table(domain);
    for (std::size_t r = 0; r < domain; ++r) table[r] = static_cast<Bits>(r);
    return Refinement("identity", alg, std::move(table));
}

MultiRefinement::MultiRefinement(std::string name, const MultiAlgebra* ma,
                                 std::vector<Refinement> components)
    : name_(std::move(name)), ma_(ma), comps_(std::move(components)) {
    if (!ma_) throw algebra_error("multi-refinement without a multi-algebra");
    if (static_cast<int>(comps_.size()) != ma_->arity())
        throw algebra_error("multi-refinement '" + name_ + "': arity mismatch");
    for (int i = 0; i < ma_->arity(); ++i)
        if (comps_[i].algebra() != &ma_->component(i))
            throw algebra_error("multi-refinement '" + name_ + "': component " +
                                std::to_string(i) + " refines the wrong algebra");
}

MultiRelation MultiRefinement::apply(const MultiRelation& r) const {
    if (r.ma != ma_)
        throw algebra_error("multi-refinement '" + name_ +
                            "' applied to a relation of the wrong multi-algebra");
    MultiRelation out = r;
    for (int i = 0; i < ma_->arity(); ++i)
        out.parts[i] = comps_[i].apply_bits(r.parts[i]);
    return out;
}

}  // namespace qcr
