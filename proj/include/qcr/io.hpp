// Text formats for algebras, multi-algebras, subclass tables and networks.
//
// Algebra files:
//   algebra PA
//   atoms < = >
//   identity =
//   converse < -> >
//   compose < < -> {<}
// Multi-algebra files (component indices are 1-based):
//   multialgebra STC
//   components RCC8 PA
//   projection 1 2: DC -> {<,=,>}
//   projection 1 2: ALL -> FULL     (constant-full shorthand)
// Subclass tables (one relation set per line; the empty relation is an
// implicit member of every subclass):
//   subclass RCC8_s of RCC8
//   relation {DC}
// Network files (one line per constrained pair; parts separated by ';',
// '*' is the universal part; unlisted pairs are universal):
//   network over STC
//   vars x y z
//   x y : {TPP} ; {<,=}
//
// Lines starting with '#' and blank lines are ignored everywhere.

#ifndef QCR_IO_HPP
#define QCR_IO_HPP

#include <functional>
#include <iosfwd>

#include "qcr/multialg.hpp"
#include "qcr/qcn.hpp"

namespace qcr {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Resolves a name to a loaded algebra / multi-algebra.
using AlgebraResolver =
    std::function<std::shared_ptr<const Algebra>(const std::string&)>;
using MultiAlgebraResolver =
    std::function<std::shared_ptr<const MultiAlgebra>(const std::string&)>;

std::shared_ptr<const Algebra> parse_algebra(std::istream& in);

std::shared_ptr<const MultiAlgebra> parse_multi_algebra(
    std::istream& in, const AlgebraResolver& algebras);

/// Parsed subclass table: name, algebra name, and the listed relations.
struct SliceTable {
    std::string name;
    std::string algebra_name;
    std::vector<Bits> relations;
};
SliceTable parse_slice_table(std::istream& in, const AlgebraResolver& algebras);

Network parse_network(std::istream& in, const MultiAlgebraResolver& mas);

/// Renders a network in the network file format (only non-universal edges).
std::string write_network(const Network& n);

}  // namespace qcr

#endif  // QCR_IO_HPP
