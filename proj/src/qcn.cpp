#include "qcr/qcn.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>

namespace qcr {

Network::Network(std::shared_ptr<const MultiAlgebra> ma,
                 std::vector<std::string> variables)
    : ma_(std::move(ma)), vars_(std::move(variables)) {
    if (!ma_) throw algebra_error("network without a multi-algebra");
    const int n = size();
    edges_.assign(static_cast<std::size_t>(n) * n, ma_->universal());
    for (int x = 0; x < n; ++x) edges_[x * n + x] = ma_->identity();
}

int Network::variable_index(const std::string& v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end())
        throw algebra_error("network has no variable '" + v + "'");
    return static_cast<int>(it - vars_.begin());
}

void Network::set_edge(int x, int y, const MultiRelation& r) {
    if (r.ma != ma_.get())
        throw algebra_error("edge relation belongs to a different multi-algebra");
    edges_[x * size() + y] = r;
    if (x != y) edges_[y * size() + x] = mr_converse(r);
}

bool Network::tighten_edge(int x, int y, const MultiRelation& r) {
    MultiRelation next = mr_intersect(edge(x, y), r);
    if (next == edge(x, y)) return false;
    set_edge(x, y, next);
    return true;
}

std::shared_ptr<const MultiAlgebra> mono_multi_algebra(
    std::shared_ptr<const Algebra> alg) {
    static std::mutex mu;
    static std::map<const Algebra*, std::weak_ptr<const MultiAlgebra>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[alg.get()];
    if (auto existing = slot.lock()) return existing;
    // keep the component algebra alive alongside the wrapper
    struct Holder : MultiAlgebra {
        Holder(std::shared_ptr<const Algebra> a)
            : MultiAlgebra("mono(" + a->name() + ")", {a}, {}) {}
    };
    auto made = std::make_shared<Holder>(std::move(alg));
    slot = made;
    return made;
}

Network slice(const Network& n, int i) {
    if (i < 0 || i >= n.multi_algebra().arity())
        throw algebra_error("slice index out of range");
    auto mono = mono_multi_algebra(n.multi_algebra().component_ptr(i));
    Network out(mono, n.variables());
    for (int x = 0; x < n.size(); ++x)
        for (int y = x + 1; y < n.size(); ++y)
            out.set_edge(x, y, mono->make({n.edge(x, y).parts[i]}));
    return out;
}

bool refines(const Network& finer, const Network& coarser) {
    if (finer.variables() != coarser.variables() ||
        &finer.multi_algebra() != &coarser.multi_algebra())
        return false;
    for (int x = 0; x < finer.size(); ++x)
        for (int y = x + 1; y < finer.size(); ++y)
            if (!mr_subset(finer.edge(x, y), coarser.edge(x, y))) return false;
    return true;
}

bool is_scenario(const Network& n) {
    for (int x = 0; x < n.size(); ++x)
        for (int y = x + 1; y < n.size(); ++y)
            if (!n.edge(x, y).is_basic()) return false;
    return true;
}

Network apply_refinement(const MultiRefinement& h, const Network& n) {
    if (h.multi_algebra() != &n.multi_algebra())
        throw algebra_error("refinement and network use different multi-algebras");
    Network out = n;
    for (int x = 0; x < n.size(); ++x)
        for (int y = x + 1; y < n.size(); ++y)
            out.set_edge(x, y, h.apply(n.edge(x, y)));
    return out;
}

Network algebraic_closure(const Network& n) {
    Network c = n;
    const int nv = c.size();
    if (nv < 2) return c;
    std::deque<std::pair<int, int>> work;
    std::vector<char> queued(static_cast<std::size_t>(nv) * nv, 0);
    auto push = [&](int x, int y) {
        if (x > y) std::swap(x, y);
        if (!queued[x * nv + y]) {
            queued[x * nv + y] = 1;
            work.emplace_back(x, y);
        }
    };
    for (int x = 0; x < nv; ++x)
        for (int y = x + 1; y < nv; ++y) push(x, y);
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        queued[x * nv + y] = 0;
        // pair item: projection-close the edge itself
        MultiRelation closed = projection_closure(c.edge(x, y));
        if (!(closed == c.edge(x, y))) c.set_edge(x, y, closed);
        // triangle items with (x, y) as a premise, both orientations
        for (int z = 0; z < nv; ++z) {
            if (z == x || z == y) continue;
            if (c.tighten_edge(x, z, mr_compose(c.edge(x, y), c.edge(y, z))))
                push(x, z);
            if (c.tighten_edge(z, y, mr_compose(c.edge(z, x), c.edge(x, y))))
                push(z, y);
            if (c.tighten_edge(y, z, mr_compose(c.edge(y, x), c.edge(x, z))))
                push(y, z);
            if (c.tighten_edge(z, x, mr_compose(c.edge(z, y), c.edge(y, x))))
                push(z, x);
        }
    }
    return c;
}

bool is_trivially_inconsistent(const Network& n) {
    for (int x = 0; x < n.size(); ++x)
        for (int y = x + 1; y < n.size(); ++y)
            if (n.edge(x, y).has_empty_part()) return true;
    return false;
}

bool is_algebraically_closed(const Network& n) {
    for (int x = 0; x < n.size(); ++x)
        for (int y = 0; y < n.size(); ++y) {
            if (x == y) continue;
            if (!is_projection_closed(n.edge(x, y))) return false;
            for (int z = 0; z < n.size(); ++z) {
                if (z == x || z == y) continue;
                if (!mr_subset(n.edge(x, z),
                               mr_compose(n.edge(x, y), n.edge(y, z))))
                    return false;
            }
        }
    return true;
}

bool is_algebraically_consistent(const Network& n) {
    return !is_trivially_inconsistent(algebraic_closure(n));
}

bool is_component_consistent(const Network& n) {
    for (int i = 0; i < n.multi_algebra().arity(); ++i)
        if (!is_algebraically_consistent(slice(n, i))) return false;
    return true;
}

namespace {

/// Basic refinements of an edge relation; when `closed_only` is set, keeps
/// only projection-consistent ones.
std::vector<MultiRelation> basic_refinements(const MultiRelation& r,
                                             bool closed_only) {
    const MultiAlgebra& ma = *r.ma;
    const int m = ma.arity();
    std::vector<std::vector<int>> atoms(m);
    for (int i = 0; i < m; ++i) atoms[i] = atom_list(r.parts[i]);
    std::vector<MultiRelation> out;
    for (int i = 0; i < m; ++i)
        if (atoms[i].empty()) return out;
    std::vector<std::size_t> idx(m, 0);
    while (true) {
        std::vector<Bits> parts(m);
        for (int i = 0; i < m; ++i) parts[i] = Bits{1} << atoms[i][idx[i]];
        MultiRelation b{&ma, std::move(parts)};
        if (!closed_only || is_projection_consistent(b)) out.push_back(std::move(b));
        int i = m - 1;
        while (i >= 0 && ++idx[i] == atoms[i].size()) idx[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

bool backtrack_search(Network c, Network* witness) {
    const int nv = c.size();
    // choose the open edge with the fewest projection-consistent basic
    // refinements
    int best_x = -1, best_y = -1;
    std::vector<MultiRelation> best_cands;
    for (int x = 0; x < nv; ++x)
        for (int y = x + 1; y < nv; ++y) {
            if (c.edge(x, y).is_basic()) continue;
            auto cands = basic_refinements(c.edge(x, y), true);
            if (best_x < 0 || cands.size() < best_cands.size()) {
                best_x = x;
                best_y = y;
                best_cands = std::move(cands);
            }
        }
    if (best_x < 0) {
        // all edges basic; the network is its own closure, hence closed
        *witness = c;
        return true;
    }
    for (const auto& b : best_cands) {
        Network next = c;
        next.set_edge(best_x, best_y, b);
        next = algebraic_closure(next);
        if (is_trivially_inconsistent(next)) continue;
        if (backtrack_search(std::move(next), witness)) return true;
    }
    return false;
}

}  // namespace

std::vector<Network> enumerate_closed_scenarios(const Network& n,
                                                std::size_t limit) {
    std::vector<Network> out;
    const int nv = n.size();
    const MultiAlgebra& ma = n.multi_algebra();
    const int m = ma.arity();
    if (nv < 2) {
        out.push_back(n);
        return out;
    }
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_of(static_cast<std::size_t>(nv) * nv, -1);
    for (int x = 0; x < nv; ++x)
        for (int y = x + 1; y < nv; ++y) {
            edge_of[x * nv + y] = static_cast<int>(edges.size());
            edges.emplace_back(x, y);
        }
    // candidate basics per edge, projection-consistent (an exact filter: a
    // closed scenario has projection-closed edges)
    std::vector<std::vector<MultiRelation>> cands;
    for (auto [x, y] : edges) {
        cands.push_back(basic_refinements(n.edge(x, y), true));
        if (cands.back().empty()) return out;
    }
    // atoms of the current tuple: per edge and component, both orientations
    std::vector<std::vector<int>> fwd(edges.size(), std::vector<int>(m));
    std::vector<std::vector<int>> rev(edges.size(), std::vector<int>(m));
    auto load = [&](std::size_t e, std::size_t k) {
        for (int i = 0; i < m; ++i) {
            int a = atom_list(cands[e][k].parts[i]).front();
            fwd[e][i] = a;
            rev[e][i] = ma.component(i).converse_atom(a);
        }
    };
    // atom of the tuple on ordered pair (x, y), component i
    auto atom_at = [&](int x, int y, int i) {
        return x < y ? fwd[edge_of[x * nv + y]][i] : rev[edge_of[y * nv + x]][i];
    };
    auto triangles_ok = [&]() {
        for (int x = 0; x < nv; ++x)
            for (int y = 0; y < nv; ++y) {
                if (y == x) continue;
                for (int z = 0; z < nv; ++z) {
                    if (z == x || z == y) continue;
                    for (int i = 0; i < m; ++i) {
                        const Algebra& a = ma.component(i);
                        Bits comp = a.compose_atoms(atom_at(x, y, i),
                                                    atom_at(y, z, i));
                        if (!((comp >> atom_at(x, z, i)) & 1)) return false;
                    }
                }
            }
        return true;
    };
    std::vector<std::size_t> idx(edges.size(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) load(e, 0);
    while (true) {
        if (triangles_ok()) {
            Network s = n;
            for (std::size_t e = 0; e < edges.size(); ++e)
                s.set_edge(edges[e].first, edges[e].second, cands[e][idx[e]]);
            out.push_back(std::move(s));
            if (limit && out.size() >= limit) return out;
        }
        int e = static_cast<int>(edges.size()) - 1;
        while (e >= 0 && ++idx[e] == cands[e].size()) idx[e--] = 0;
        if (e < 0) break;
        for (std::size_t f = static_cast<std::size_t>(e); f < edges.size(); ++f)
            load(f, idx[f]);
    }
    return out;
}

Decision satisfiable(const Network& n, const SatOptions& opts) {
    Decision d;
    if (!opts.completeness_declared) {
        d.status = SatStatus::Refused;
        d.message =
            "refused: SAT/UNSAT labels require the formalism's declared "
            "completeness fact (algebraically closed scenarios are satisfiable)";
        return d;
    }
    if (n.size() < 2) {
        d.status = SatStatus::Sat;
        d.message = "networks with fewer than two variables are satisfiable by "
                    "convention";
        d.witness = n;
        return d;
    }
    switch (opts.method) {
        case SatMethod::Closure: {
            if (!opts.closure_certified) {
                d.status = SatStatus::Refused;
                d.message =
                    "refused: the closure method requires a tractability "
                    "certificate for a subclass containing the network";
                return d;
            }
            Network c = algebraic_closure(n);
            if (is_trivially_inconsistent(c)) {
                d.status = SatStatus::Unsat;
                d.message = "algebraic closure produced an empty relation";
            } else {
                d.status = SatStatus::Sat;
                d.message = "algebraically consistent; satisfiable by the "
                            "subclass tractability certificate";
            }
            return d;
        }
        case SatMethod::BruteForce: {
            auto found = enumerate_closed_scenarios(n, 1);
            if (found.empty()) {
                d.status = SatStatus::Unsat;
                d.message = "no algebraically closed scenario exists";
            } else {
                d.status = SatStatus::Sat;
                d.message = "found an algebraically closed scenario";
                d.witness = std::move(found.front());
            }
            return d;
        }
        case SatMethod::Backtrack: {
            Network c = algebraic_closure(n);
            if (is_trivially_inconsistent(c)) {
                d.status = SatStatus::Unsat;
                d.message = "algebraic closure produced an empty relation";
                return d;
            }
            Network witness = c;
            if (backtrack_search(std::move(c), &witness)) {
                d.status = SatStatus::Sat;
                d.message = "backtracking found an algebraically closed scenario";
                d.witness = std::move(witness);
            } else {
                d.status = SatStatus::Unsat;
                d.message = "backtracking exhausted all closed basic refinements";
            }
            return d;
        }
    }
    d.message = "unknown method";
    return d;
}

}  // namespace qcr
