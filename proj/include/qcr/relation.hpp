// Finite relation algebras with at most 64 atoms.
//
// A relation is a set of atoms, stored as a 64-bit mask. An algebra supplies
// the atom names, the identity atom, a converse table and a dense
// atom-by-atom composition table; composition and converse of arbitrary
// relations are lifted from atoms by union.

#ifndef QCR_RELATION_HPP
#define QCR_RELATION_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcr {

using Bits = std::uint64_t;

/// Thrown when relations from different algebras are mixed, when a name is
/// unknown, or when a declarative table is incomplete or ill-typed.
struct algebra_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Algebra;

/// A relation of a specific algebra: an atom set plus its owning algebra.
struct Relation {
    const Algebra* alg = nullptr;
    Bits bits = 0;

    bool empty() const { return bits == 0; }
    bool operator==(const Relation&) const = default;
};

/// One verdict of the axiom checker, with a human-readable witness on failure.
struct AxiomResult {
    std::string family;
    bool passed = true;
    std::string witness;  // empty when passed
};

struct AxiomReport {
    std::vector<AxiomResult> results;
    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

/// A finite non-associative relation algebra presented by tables.
class Algebra {
public:
    /// Builds an algebra and validates the tables: converse must be a
    /// bijective involution candidate (every atom mapped), the identity must
    /// be a declared atom, and the composition table must be total.
    Algebra(std::string name, std::vector<std::string> atom_names,
            std::string identity_atom,
            std::vector<int> converse,              // atom index -> atom index
            std::vector<std::vector<Bits>> compose);  // [a][b] -> atom set

    const std::string& name() const { return name_; }
    int atom_count() const { return static_cast<int>(atoms_.size()); }
    const std::vector<std::string>& atom_names() const { return atoms_; }
    int identity_atom() const { return identity_; }

    /// Index of a named atom; throws algebra_error if unknown.
    int atom_index(const std::string& atom) const;

    Bits universal_bits() const { return universal_; }
    Relation universal() const { return {this, universal_}; }
    Relation empty_relation() const { return {this, 0}; }
    Relation identity_relation() const { return {this, Bits{1} << identity_}; }
    Relation atom_relation(int a) const { return {this, Bits{1} << a}; }

    /// Builds a relation from atom names.
    Relation relation(const std::vector<std::string>& atom_names_list) const;
    Relation relation_from_bits(Bits b) const;

    int converse_atom(int a) const { return conv_[a]; }
    Bits compose_atoms(int a, int b) const { return comp_[a][b]; }

    /// True when no two atoms compose to the empty relation.
    bool is_uniform() const;

    /// Checks the axiom families over all atoms / atom pairs / atom triples
    /// and, for the union-distributivity families, over all relation pairs
    /// when the algebra has at most `exhaustive_atom_limit` atoms (sampled
    /// pairs otherwise).
    AxiomReport check_axioms(int exhaustive_atom_limit = 10) const;

    /// Renders a relation as `{a,b,c}` (or `{}`), atoms in table order.
    std::string to_string(const Relation& r) const;

private:
    std::string name_;
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, int> index_;
    int identity_ = -1;
    std::vector<int> conv_;
    std::vector<std::vector<Bits>> comp_;
    Bits universal_ = 0;
};

// ---- relation operations (throw algebra_error on algebra mismatch) ----

Relation rel_union(const Relation& r, const Relation& s);
Relation rel_intersect(const Relation& r, const Relation& s);
Relation rel_complement(const Relation& r);
Relation rel_converse(const Relation& r);
Relation rel_compose(const Relation& r, const Relation& s);

bool rel_subset(const Relation& r, const Relation& s);

/// Iterates the set atom indices of a mask, lowest first.
std::vector<int> atom_list(Bits b);

int popcount_bits(Bits b);

}  // namespace qcr

#endif  // QCR_RELATION_HPP
