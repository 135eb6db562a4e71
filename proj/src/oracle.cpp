#include "qcr/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace qcr {

namespace {

/// Flat description of a network's edge structure for exhaustive labeling,
/// with all closure conditions re-derived from the algebra tables.
struct Enumerator {
    const Network* net;
    const MultiAlgebra* ma;
    int nv, m;
    std::vector<std::pair<int, int>> edges;       // x < y, sorted by label count
    std::vector<int> edge_of;                     // (x,y) -> edge index
    std::vector<std::vector<std::vector<int>>> labels;  // [edge][k][component]

    explicit Enumerator(const Network& n)
        : net(&n), ma(&n.multi_algebra()), nv(n.size()), m(ma->arity()) {
        edge_of.assign(static_cast<std::size_t>(nv) * nv, -1);
        for (int x = 0; x < nv; ++x)
            for (int y = x + 1; y < nv; ++y) edges.emplace_back(x, y);
        // all basic labelings of each edge: the full atom product of the
        // edge's parts, no filtering (pure enumeration)
        auto labels_of = [&](const MultiRelation& r) {
            std::vector<std::vector<int>> out;
            std::vector<std::vector<int>> atoms(m);
            for (int i = 0; i < m; ++i) {
                atoms[i] = atom_list(r.parts[i]);
                if (atoms[i].empty()) return out;
            }
            std::vector<std::size_t> idx(m, 0);
            while (true) {
                std::vector<int> lab(m);
                for (int i = 0; i < m; ++i) lab[i] = atoms[i][idx[i]];
                out.push_back(std::move(lab));
                int i = m - 1;
                while (i >= 0 && ++idx[i] == atoms[i].size()) idx[i--] = 0;
                if (i < 0) break;
            }
            return out;
        };
        std::vector<std::vector<std::vector<int>>> by_edge;
        for (auto [x, y] : edges) by_edge.push_back(labels_of(n.edge(x, y)));
        // ascending label count keeps the mixed-radix prefix cheap
        std::vector<std::size_t> order(edges.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return by_edge[a].size() < by_edge[b].size();
        });
        std::vector<std::pair<int, int>> sorted_edges;
        for (std::size_t k : order) {
            sorted_edges.push_back(edges[k]);
            labels.push_back(std::move(by_edge[k]));
        }
        edges = std::move(sorted_edges);
        for (std::size_t e = 0; e < edges.size(); ++e)
            edge_of[edges[e].first * nv + edges[e].second] = static_cast<int>(e);
    }

    std::uint64_t scenario_product() const {
        std::uint64_t p = 1;
        for (const auto& l : labels) {
            p *= l.empty() ? 0 : static_cast<std::uint64_t>(l.size());
            if (p == 0) return 0;
        }
        return p;
    }

    /// Atom on ordered pair (x, y), component i, under the labeling `pick`.
    int atom_at(const std::vector<std::size_t>& pick, int x, int y, int i) const {
        if (x < y) return labels[edge_of[x * nv + y]][pick[edge_of[x * nv + y]]][i];
        int a = labels[edge_of[y * nv + x]][pick[edge_of[y * nv + x]]][i];
        return ma->component(i).converse_atom(a);
    }

    bool projections_ok(const std::vector<std::size_t>& pick, int e) const {
        const auto& lab = labels[e][pick[e]];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                if (!((ma->projection(i, j).atom_image(lab[i]) >> lab[j]) & 1))
                    return false;
            }
        return true;
    }

    bool triangles_ok(const std::vector<std::size_t>& pick) const {
        for (int x = 0; x < nv; ++x)
            for (int y = 0; y < nv; ++y) {
                if (y == x) continue;
                for (int z = 0; z < nv; ++z) {
                    if (z == x || z == y) continue;
                    for (int i = 0; i < m; ++i) {
                        Bits comp = ma->component(i).compose_atoms(
                            atom_at(pick, x, y, i), atom_at(pick, y, z, i));
                        if (!((comp >> atom_at(pick, x, z, i)) & 1)) return false;
                    }
                }
            }
        return true;
    }

    bool closed(const std::vector<std::size_t>& pick) const {
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (!projections_ok(pick, static_cast<int>(e))) return false;
        return triangles_ok(pick);
    }

    Network materialize(const std::vector<std::size_t>& pick) const {
        Network s = *net;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            std::vector<Bits> parts(m);
            for (int i = 0; i < m; ++i)
                parts[i] = Bits{1} << labels[e][pick[e]][i];
            s.set_edge(edges[e].first, edges[e].second, ma->make(std::move(parts)));
        }
        return s;
    }
};

}  // namespace

OracleResult brute_force_sat(const Network& n, const OracleOptions& opts) {
    OracleResult res;
    if (n.size() < 2) {
        res.decided = true;
        res.sat = true;
        res.witness = n;
        return res;
    }
    Enumerator en(n);
    for (const auto& l : en.labels)
        if (l.empty()) {
            res.decided = true;
            res.sat = false;
            return res;
        }
    std::vector<std::size_t> pick(en.edges.size(), 0);
    while (true) {
        ++res.scenarios_checked;
        if (opts.max_scenarios && res.scenarios_checked > opts.max_scenarios)
            return res;  // undecided
        bool ok;
        if (opts.prune) {
            ok = true;
            for (std::size_t e = 0; ok && e < en.edges.size(); ++e)
                ok = en.projections_ok(pick, static_cast<int>(e));
            ok = ok && en.triangles_ok(pick);
        } else {
            ok = en.closed(pick);
        }
        if (ok) {
            res.decided = true;
            res.sat = true;
            res.witness = en.materialize(pick);
            return res;
        }
        int e = static_cast<int>(en.edges.size()) - 1;
        while (e >= 0 && ++pick[e] == en.labels[e].size()) pick[e--] = 0;
        if (e < 0) break;
    }
    res.decided = true;
    res.sat = false;
    return res;
}

Network minimal_network(const Network& n) {
    Network out = n;
    if (n.size() < 2) return out;
    Enumerator en(n);
    std::vector<std::vector<Bits>> used(en.edges.size(),
                                        std::vector<Bits>(en.m, 0));
    bool any = false;
    for (const auto& l : en.labels)
        if (l.empty()) {
            for (auto& e : used) std::fill(e.begin(), e.end(), 0);
            any = true;  // no scenario at all; minimal parts are empty
        }
    if (!any) {
        std::vector<std::size_t> pick(en.edges.size(), 0);
        while (true) {
            if (en.closed(pick)) {
                for (std::size_t e = 0; e < en.edges.size(); ++e)
                    for (int i = 0; i < en.m; ++i)
                        used[e][i] |= Bits{1} << en.labels[e][pick[e]][i];
            }
            int e = static_cast<int>(en.edges.size()) - 1;
            while (e >= 0 && ++pick[e] == en.labels[e].size()) pick[e--] = 0;
            if (e < 0) break;
        }
    }
    for (std::size_t e = 0; e < en.edges.size(); ++e)
        out.set_edge(en.edges[e].first, en.edges[e].second,
                     en.ma->make(used[e]));
    return out;
}

Network random_network(std::shared_ptr<const MultiAlgebra> ma,
                       const GeneratorOptions& opts, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const auto basics = ma->basic_relations();
    while (true) {
        Network n(ma, [&] {
            std::vector<std::string> vs;
            for (int v = 0; v < opts.variables; ++v)
                vs.push_back("v" + std::to_string(v + 1));
            return vs;
        }());
        std::uint64_t product = 1;
        for (int x = 0; x < n.size(); ++x)
            for (int y = x + 1; y < n.size(); ++y) {
                MultiRelation r = ma->empty();
                std::uint64_t count = 0;
                while (count == 0) {
                    for (const auto& b : basics)
                        if (coin(rng) < opts.density) {
                            r = mr_union(r, b);
                            ++count;
                        }
                }
                n.set_edge(x, y, r);
                product *= count;
            }
        if (opts.max_scenario_product && product > opts.max_scenario_product)
            continue;
        return n;
    }
}

Network random_network_over(const Subclass& s, const GeneratorOptions& opts,
                            std::mt19937_64& rng) {
    const MultiAlgebra& ma = *s.ma;
    while (true) {
        Network n(s.ma, [&] {
            std::vector<std::string> vs;
            for (int v = 0; v < opts.variables; ++v)
                vs.push_back("v" + std::to_string(v + 1));
            return vs;
        }());
        std::uint64_t product = 1;
        for (int x = 0; x < n.size(); ++x)
            for (int y = x + 1; y < n.size(); ++y) {
                std::vector<Bits> parts(ma.arity());
                std::uint64_t count = 1;
                for (int i = 0; i < ma.arity(); ++i) {
                    const auto& rels = s.slices[i].relations;
                    std::uniform_int_distribution<std::size_t> pickr(
                        0, rels.size() - 1);
                    parts[i] = rels[pickr(rng)];
                    count *= static_cast<std::uint64_t>(popcount_bits(parts[i]));
                }
                n.set_edge(x, y, ma.make(std::move(parts)));
                product *= count;
            }
        if (opts.max_scenario_product && product > opts.max_scenario_product)
            continue;
        return n;
    }
}

bool closure_is_minimal(const Network& n, std::string* detail) {
    Network c = algebraic_closure(n);
    if (is_trivially_inconsistent(c)) return true;  // inconsistency detected
    Network m = minimal_network(c);
    for (int x = 0; x < c.size(); ++x)
        for (int y = x + 1; y < c.size(); ++y)
            if (!(c.edge(x, y) == m.edge(x, y))) {
                if (detail) {
                    *detail = "edge " + c.variables()[x] + " " + c.variables()[y] +
                              ": closure keeps " +
                              c.multi_algebra().to_string(c.edge(x, y)) +
                              " but only " +
                              c.multi_algebra().to_string(m.edge(x, y)) +
                              " is realizable";
                }
                return false;
            }
    return true;
}

MinimalityTrialResult falsify_minimality(const Subclass& s, int variables,
                                         std::uint64_t trials,
                                         std::uint64_t seed) {
    MinimalityTrialResult res;
    std::mt19937_64 rng(seed);
    GeneratorOptions gopts;
    gopts.variables = variables;
    gopts.max_scenario_product = 10'000'000;  // keeps the oracle enumeration fast
    for (std::uint64_t t = 0; t < trials; ++t) {
        Network n = random_network_over(s, gopts, rng);
        ++res.trials;
        std::string detail;
        if (!closure_is_minimal(n, &detail)) {
            res.counterexample = n;
            res.detail = detail;
            return res;
        }
    }
    res.detail = std::to_string(res.trials) + " trials, no counterexample";
    return res;
}

}  // namespace qcr
