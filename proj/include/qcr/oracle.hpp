// Independent reference implementations: a pure exhaustive satisfiability
// oracle, a scenario-enumeration minimal-network oracle, randomized network
// generation and minimality falsification. These share no decision code
// with the main engine; they re-derive closure conditions directly from the
// algebra tables so that cross-checks are meaningful.

#ifndef QCR_ORACLE_HPP
#define QCR_ORACLE_HPP

#include <random>

#include "qcr/catalog.hpp"
#include "qcr/qcn.hpp"

namespace qcr {

struct OracleOptions {
    /// Abort (undecided) after this many enumerated scenarios; 0 = no bound.
    std::uint64_t max_scenarios = 0;
    /// Optional speed-up: skip scenario extensions that already violate a
    /// triangle. Off by default: the oracle then enumerates every scenario
    /// tuple and checks it in full.
    bool prune = false;
};

struct OracleResult {
    bool decided = false;
    bool sat = false;
    std::uint64_t scenarios_checked = 0;
    std::optional<Network> witness;
};

/// Pure exhaustive satisfiability: enumerates all basic labelings of the
/// network's edges (mixed-radix, edges ordered by ascending atom count) and
/// reports whether some labeling is an algebraically closed scenario.
OracleResult brute_force_sat(const Network& n, const OracleOptions& opts = {});

/// The minimal network: each edge keeps exactly the basic labels occurring
/// in some algebraically closed scenario. Parts become empty when no closed
/// scenario exists.
Network minimal_network(const Network& n);

struct GeneratorOptions {
    int variables = 4;
    /// Full-formalism generation: each basic multi-relation of an edge is
    /// kept with this probability (empty edges are resampled).
    double density = 0.5;
    /// Reject networks whose total scenario product exceeds this bound, to
    /// keep pure enumeration feasible (0 = no bound). Recorded in reports.
    std::uint64_t max_scenario_product = 0;
};

/// Random network over the full formalism (density sampling per edge).
Network random_network(std::shared_ptr<const MultiAlgebra> ma,
                       const GeneratorOptions& opts, std::mt19937_64& rng);

/// Random network with every edge drawn uniformly from the subclass.
Network random_network_over(const Subclass& s, const GeneratorOptions& opts,
                            std::mt19937_64& rng);

struct MinimalityTrialResult {
    std::uint64_t trials = 0;
    std::optional<Network> counterexample;  // network whose closure is not minimal
    std::string detail;
};

/// Randomized falsification of the minimality property of a subclass:
/// samples networks over s, compares the algebraic closure against the
/// scenario-enumeration minimal network, and returns the first network whose
/// closure keeps an unrealizable basic label (or keeps any label while no
/// closed scenario exists).
MinimalityTrialResult falsify_minimality(const Subclass& s, int variables,
                                         std::uint64_t trials,
                                         std::uint64_t seed);

/// True when the algebraic closure of n is exactly its minimal network
/// (degenerate networks count as minimal).
bool closure_is_minimal(const Network& n, std::string* detail = nullptr);

}  // namespace qcr

#endif  // QCR_ORACLE_HPP
