#include "qcr/multialg.hpp"

#include <algorithm>
#include <sstream>

namespace qcr {

namespace {

void require_same(const MultiRelation& r, const MultiRelation& s) {
    if (r.ma == nullptr || s.ma == nullptr)
        throw algebra_error("multi-relation has no multi-algebra");
    if (r.ma != s.ma)
        throw algebra_error("mixing multi-relations of '" + r.ma->name() +
                            "' and '" + s.ma->name() + "'");
}

}  // namespace

Projection::Projection(const Algebra* source, const Algebra* target,
                       std::vector<Bits> table)
    : source_(source), target_(target), table_(std::move(table)) {
    if (!source_ || !target_) throw algebra_error("projection without algebras");
    if (static_cast<int>(table_.size()) != source_->atom_count())
        throw algebra_error("projection from '" + source_->name() +
                            "': table is not total on atoms");
    for (Bits b : table_)
        if (b & ~target_->universal_bits())
            throw algebra_error("projection into '" + target_->name() +
                                "': image uses undeclared atoms");
}

Relation Projection::apply(const Relation& r) const {
    if (r.alg != source_)
        throw algebra_error("projection applied to a relation of the wrong algebra");
    Bits out = 0;
    for (int a : atom_list(r.bits)) out |= table_[a];
    return {target_, out};
}

bool Projection::respects_converse() const {
    for (int a = 0; a < source_->atom_count(); ++a) {
        Bits conv_image = 0;
        for (int b : atom_list(table_[a]))
            conv_image |= Bits{1} << target_->converse_atom(b);
        if (table_[source_->converse_atom(a)] != conv_image) return false;
    }
    return true;
}

Projection Projection::inverse() const {
    std::vector<Bits> inv(target_->atom_count(), 0);
    for (int a = 0; a < source_->atom_count(); ++a)
        for (int b : atom_list(table_[a])) inv[b] |= Bits{1} << a;
    return Projection(target_, source_, std::move(inv));
}

Projection Projection::constant_full(const Algebra* source, const Algebra* target) {
    return Projection(source, target,
                      std::vector<Bits>(source->atom_count(), target->universal_bits()));
}

MultiAlgebra::MultiAlgebra(std::string name,
                           std::vector<std::shared_ptr<const Algebra>> components,
                           std::map<std::pair<int, int>, Projection> projections)
    : name_(std::move(name)),
      components_(std::move(components)),
      projections_(std::move(projections)) {
    const int m = arity();
    if (m < 1) throw algebra_error("multi-algebra '" + name_ + "' has no components");
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            auto it = projections_.find({i, j});
            if (it == projections_.end())
                throw algebra_error("multi-algebra '" + name_ + "': missing projection " +
                                    std::to_string(i) + " -> " + std::to_string(j));
            const Projection& p = it->second;
            if (p.source() != components_[i].get() || p.target() != components_[j].get())
                throw algebra_error("multi-algebra '" + name_ + "': projection " +
                                    std::to_string(i) + " -> " + std::to_string(j) +
                                    " has wrong component algebras");
            if (!p.respects_converse())
                throw algebra_error("multi-algebra '" + name_ + "': projection " +
                                    std::to_string(i) + " -> " + std::to_string(j) +
                                    " does not respect converse");
        }
}

const Projection& MultiAlgebra::projection(int i, int j) const {
    auto it = projections_.find({i, j});
    if (it == projections_.end())
        throw algebra_error("multi-algebra '" + name_ + "': no projection " +
                            std::to_string(i) + " -> " + std::to_string(j));
    return it->second;
}

MultiRelation MultiAlgebra::universal() const {
    std::vector<Bits> parts;
    for (const auto& c : components_) parts.push_back(c->universal_bits());
    return {this, std::move(parts)};
}

MultiRelation MultiAlgebra::empty() const {
    return {this, std::vector<Bits>(arity(), 0)};
}

MultiRelation MultiAlgebra::identity() const {
    std::vector<Bits> parts;
    for (const auto& c : components_)
        parts.push_back(Bits{1} << c->identity_atom());
    return {this, std::move(parts)};
}

MultiRelation MultiAlgebra::make(std::vector<Bits> parts) const {
    if (static_cast<int>(parts.size()) != arity())
        throw algebra_error("multi-relation arity mismatch for '" + name_ + "'");
    for (int i = 0; i < arity(); ++i)
        if (parts[i] & ~components_[i]->universal_bits())
            throw algebra_error("multi-relation part " + std::to_string(i) +
                                " uses undeclared atoms");
    return {this, std::move(parts)};
}

std::string MultiAlgebra::to_string(const MultiRelation& r) const {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < arity(); ++i) {
        if (i) os << " ; ";
        os << components_[i]->to_string({components_[i].get(), r.parts[i]});
    }
    os << ')';
    return os.str();
}

std::size_t MultiAlgebra::basic_count() const {
    std::size_t n = 1;
    for (const auto& c : components_) n *= static_cast<std::size_t>(c->atom_count());
    return n;
}

std::vector<MultiRelation> MultiAlgebra::basic_relations() const {
    std::vector<MultiRelation> out;
    out.reserve(basic_count());
    const int m = arity();
    std::vector<int> idx(m, 0);
    while (true) {
        std::vector<Bits> parts(m);
        for (int i = 0; i < m; ++i) parts[i] = Bits{1} << idx[i];
        out.push_back({this, std::move(parts)});
        int i = m - 1;
        while (i >= 0 && ++idx[i] == components_[i]->atom_count()) idx[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

MultiRelation mr_union(const MultiRelation& r, const MultiRelation& s) {
    require_same(r, s);
    MultiRelation out = r;
    for (std::size_t i = 0; i < out.parts.size(); ++i) out.parts[i] |= s.parts[i];
    return out;
}

MultiRelation mr_intersect(const MultiRelation& r, const MultiRelation& s) {
    require_same(r, s);
    MultiRelation out = r;
    for (std::size_t i = 0; i < out.parts.size(); ++i) out.parts[i] &= s.parts[i];
    return out;
}

MultiRelation mr_converse(const MultiRelation& r) {
    if (!r.ma) throw algebra_error("multi-relation has no multi-algebra");
    MultiRelation out = r;
    for (int i = 0; i < r.ma->arity(); ++i) {
        const Algebra* a = &r.ma->component(i);
        out.parts[i] = rel_converse({a, r.parts[i]}).bits;
    }
    return out;
}

MultiRelation mr_compose(const MultiRelation& r, const MultiRelation& s) {
    require_same(r, s);
    MultiRelation out = r;
    for (int i = 0; i < r.ma->arity(); ++i) {
        const Algebra* a = &r.ma->component(i);
        out.parts[i] = rel_compose({a, r.parts[i]}, {a, s.parts[i]}).bits;
    }
    return out;
}

bool mr_subset(const MultiRelation& r, const MultiRelation& s) {
    require_same(r, s);
    for (std::size_t i = 0; i < r.parts.size(); ++i)
        if (r.parts[i] & ~s.parts[i]) return false;
    return true;
}

MultiRelation projection_closure(const MultiRelation& r) {
    if (!r.ma) throw algebra_error("multi-relation has no multi-algebra");
    const MultiAlgebra& ma = *r.ma;
    const int m = ma.arity();
    MultiRelation cur = r;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                const Algebra* src = &ma.component(i);
                Bits image = ma.projection(i, j)
                                 .apply({src, cur.parts[i]})
                                 .bits;
                Bits next = cur.parts[j] & image;
                if (next != cur.parts[j]) {
                    cur.parts[j] = next;
                    changed = true;
                }
            }
    }
    return cur;
}

bool is_projection_closed(const MultiRelation& r) {
    return projection_closure(r) == r;
}

bool is_projection_consistent(const MultiRelation& r) {
    return !r.has_empty_part() && is_projection_closed(r);
}

std::vector<AntiTree> enumerate_anti_trees(int m, bool force) {
    if (m > 6 && !force)
        throw algebra_error("anti-tree enumeration over " + std::to_string(m) +
                            " components refused (limit 6); use force to override");
    std::vector<AntiTree> out;
    // parent[i] in {-1, 0..m-1}\{i}; exactly one -1 (the root); acyclic.
    std::vector<int> parent(m, -1);
    auto valid = [&]() {
        int roots = 0, root = -1;
        for (int i = 0; i < m; ++i)
            if (parent[i] == -1) { ++roots; root = i; }
        if (roots != 1) return false;
        for (int i = 0; i < m; ++i) {
            int steps = 0, v = i;
            while (v != root) {
                v = parent[v];
                if (v == -1 || ++steps > m) return false;
            }
        }
        return true;
    };
    // iterate all parent assignments in base (m+1): value m encodes "root"
    std::vector<int> digits(m, 0);
    while (true) {
        bool ok = true;
        for (int i = 0; i < m; ++i) {
            parent[i] = (digits[i] == m) ? -1 : digits[i];
            if (parent[i] == i) { ok = false; break; }
        }
        if (ok && valid()) {
            AntiTree t;
            t.parent = parent;
            for (int i = 0; i < m; ++i)
                if (parent[i] == -1) t.root = i;
            out.push_back(std::move(t));
        }
        int i = m - 1;
        while (i >= 0 && ++digits[i] > m) digits[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

namespace {

/// Path from node v to the root, inclusive of both.
std::vector<int> path_to_root(const AntiTree& t, int v) {
    std::vector<int> p{v};
    while (v != t.root) {
        v = t.parent[v];
        p.push_back(v);
    }
    return p;
}

/// Image of atom `b` of component i through the anti-tree chain from i to j.
Relation chain_image(const MultiAlgebra& ma, const AntiTree& t, int i, int j,
                     int atom) {
    auto pi = path_to_root(t, i);
    auto pj = path_to_root(t, j);
    // deepest common node: first element of pi present in pj
    std::size_t meet_i = 0, meet_j = 0;
    for (std::size_t a = 0; a < pi.size(); ++a) {
        auto it = std::find(pj.begin(), pj.end(), pi[a]);
        if (it != pj.end()) {
            meet_i = a;
            meet_j = static_cast<std::size_t>(it - pj.begin());
            break;
        }
    }
    const Algebra* cur_alg = &ma.component(i);
    Relation cur{cur_alg, Bits{1} << atom};
    for (std::size_t a = 0; a + 1 <= meet_i; ++a)
        cur = ma.projection(pi[a], pi[a + 1]).apply(cur);
    for (std::size_t b = meet_j; b > 0; --b)
        cur = ma.projection(pj[b - 1], pj[b]).inverse().apply(cur);
    return cur;
}

}  // namespace

bool is_plenary(const MultiAlgebra& ma, const AntiTree& t,
                std::string* counterexample) {
    const int m = ma.arity();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const Algebra& ai = ma.component(i);
            for (int a = 0; a < ai.atom_count(); ++a) {
                Relation chain = chain_image(ma, t, i, j, a);
                Bits direct = ma.projection(i, j).atom_image(a);
                if (chain.bits & ~direct) {
                    if (counterexample) {
                        std::ostringstream os;
                        os << "atom " << ai.atom_names()[a] << " of component " << i
                           << ": chain image into component " << j << " is "
                           << ma.component(j).to_string(chain)
                           << " which exceeds the direct image "
                           << ma.component(j).to_string({&ma.component(j), direct});
                        *counterexample = os.str();
                    }
                    return false;
                }
            }
        }
    return true;
}

std::vector<AntiTree> plenary_anti_trees(const MultiAlgebra& ma, bool force) {
    std::vector<AntiTree> out;
    for (const auto& t : enumerate_anti_trees(ma.arity(), force))
        if (is_plenary(ma, t)) out.push_back(t);
    return out;
}

std::optional<MultiRelation> antitree_basic_refinement(const MultiRelation& r,
                                                       const AntiTree& t) {
    if (!r.ma) throw algebra_error("multi-relation has no multi-algebra");
    const MultiAlgebra& ma = *r.ma;
    const int m = ma.arity();
    if (!is_projection_consistent(r)) return std::nullopt;
    std::vector<int> chosen(m, -1);
    chosen[t.root] = atom_list(r.parts[t.root]).front();
    // process nodes in order of decreasing depth proximity to the root
    std::vector<int> order;
    {
        std::vector<int> depth(m, 0);
        for (int v = 0; v < m; ++v)
            depth[v] = static_cast<int>(path_to_root(t, v).size());
        for (int v = 0; v < m; ++v) order.push_back(v);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return depth[a] < depth[b]; });
    }
    for (int v : order) {
        if (v == t.root) continue;
        int u = t.parent[v];
        // pick an atom of r_v whose image along the tree edge contains the
        // atom chosen at the parent
        const Projection& up = ma.projection(v, u);
        int pick = -1;
        for (int a : atom_list(r.parts[v])) {
            if ((up.atom_image(a) >> chosen[u]) & 1) { pick = a; break; }
        }
        if (pick < 0) return std::nullopt;
        chosen[v] = pick;
    }
    std::vector<Bits> parts(m);
    for (int v = 0; v < m; ++v) parts[v] = Bits{1} << chosen[v];
    MultiRelation basic{&ma, std::move(parts)};
    if (!is_projection_consistent(basic)) return std::nullopt;
    return basic;
}

std::shared_ptr<MultiAlgebra> weaken(
    const MultiAlgebra& ma, std::string new_name,
    const std::map<std::pair<int, int>, Projection>& replacements) {
    std::vector<std::shared_ptr<const Algebra>> comps;
    for (int i = 0; i < ma.arity(); ++i) comps.push_back(ma.component_ptr(i));
    std::map<std::pair<int, int>, Projection> projs;
    for (int i = 0; i < ma.arity(); ++i)
        for (int j = 0; j < ma.arity(); ++j) {
            if (i == j) continue;
            auto it = replacements.find({i, j});
            if (it == replacements.end()) {
                projs.emplace(std::make_pair(i, j), ma.projection(i, j));
                continue;
            }
            const Projection& orig = ma.projection(i, j);
            const Projection& repl = it->second;
            if (repl.source() != orig.source() || repl.target() != orig.target())
                throw algebra_error("weakening of '" + ma.name() +
                                    "': replacement projection has wrong algebras");
            for (int a = 0; a < ma.component(i).atom_count(); ++a)
                if (orig.atom_image(a) & ~repl.atom_image(a))
                    throw algebra_error(
                        "weakening of '" + ma.name() + "': projection " +
                        std::to_string(i) + " -> " + std::to_string(j) +
                        " is not atomwise weaker on atom " +
                        ma.component(i).atom_names()[a]);
            projs.emplace(std::make_pair(i, j), repl);
        }
    return std::make_shared<MultiAlgebra>(std::move(new_name), std::move(comps),
                                          std::move(projs));
}

bool is_tree_weakening(const MultiAlgebra& ma, const MultiAlgebra& weak,
                       const AntiTree& t) {
    if (ma.arity() != weak.arity()) return false;
    for (int i = 0; i < ma.arity(); ++i)
        if (&ma.component(i) != &weak.component(i)) return false;
    if (!is_plenary(ma, t)) return false;
    for (int i = 0; i < ma.arity(); ++i)
        for (int j = 0; j < ma.arity(); ++j) {
            if (i == j) continue;
            for (int a = 0; a < ma.component(i).atom_count(); ++a)
                if (ma.projection(i, j).atom_image(a) &
                    ~weak.projection(i, j).atom_image(a))
                    return false;
        }
    for (int v = 0; v < ma.arity(); ++v) {
        if (v == t.root) continue;
        int u = t.parent[v];
        for (int a = 0; a < ma.component(v).atom_count(); ++a)
            if (ma.projection(v, u).atom_image(a) !=
                weak.projection(v, u).atom_image(a))
                return false;
    }
    return true;
}

}  // namespace qcr
