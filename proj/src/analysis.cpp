#include "qcr/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace qcr {

namespace {

/// Dense operation tables of one algebra (converse and composition indexed
/// by relation bits), for tight enumeration loops.
struct DenseOps {
    const Algebra* alg;
    int n;
    std::vector<Bits> conv;  // 2^n
    std::vector<Bits> comp;  // 2^n * 2^n, row-major

    explicit DenseOps(const Algebra& a) : alg(&a), n(a.atom_count()) {
        if (n > 12)
            throw algebra_error("dense tables support at most 12 atoms");
        const std::size_t d = std::size_t{1} << n;
        conv.resize(d);
        for (std::size_t r = 0; r < d; ++r)
            conv[r] = rel_converse({alg, static_cast<Bits>(r)}).bits;
        comp.assign(d * d, 0);
        for (std::size_t r = 0; r < d; ++r) {
            for (int a2 = 0; a2 < n; ++a2) {
                Bits acc = 0;
                for (int a1 : atom_list(static_cast<Bits>(r)))
                    acc |= alg->compose_atoms(a1, a2);
                // build composition with arbitrary second argument by union
                for (std::size_t s = 0; s < d; ++s)
                    if ((s >> a2) & 1) comp[r * d + s] |= acc;
            }
        }
    }
    Bits compose(Bits r, Bits s) const {
        return comp[(static_cast<std::size_t>(r) << n) + s];
    }
};

/// Dense atomwise projection image table.
std::vector<Bits> dense_image(const Projection& p) {
    const int n = p.source()->atom_count();
    std::vector<Bits> img(std::size_t{1} << n, 0);
    for (std::size_t r = 0; r < img.size(); ++r)
        for (int a : atom_list(static_cast<Bits>(r))) img[r] |= p.atom_image(a);
    return img;
}

/// Composition-only closure of a 3-variable classical network with edges
/// a = N01, b = N02, c = N12; returns false when some edge becomes empty.
bool compose_close3(const DenseOps& ops, Bits& a, Bits& b, Bits& c) {
    while (true) {
        Bits a2 = a & ops.compose(b, ops.conv[c]);
        Bits b2 = b & ops.compose(a, c);
        Bits c2 = c & ops.compose(ops.conv[a], b);
        if (a2 == a && b2 == b && c2 == c) return a && b && c;
        a = a2; b = b2; c = c2;
        if (!(a && b && c)) return false;
    }
}

const MultiAlgebra* projection_source(const Subclass& s, const MultiAlgebra* ma) {
    const MultiAlgebra* use = ma ? ma : s.ma.get();
    if (use->arity() != s.ma->arity())
        throw algebra_error("projection override has a different arity");
    for (int i = 0; i < use->arity(); ++i)
        if (&use->component(i) != &s.ma->component(i))
            throw algebra_error("projection override has different components");
    return use;
}

/// Enumerates the product of the slice sets, calling f(parts). Stops early
/// when f returns false.
template <typename F>
std::uint64_t for_each_member(const Subclass& s, F&& f) {
    const int m = static_cast<int>(s.slices.size());
    std::vector<std::size_t> idx(m, 0);
    std::uint64_t count = 0;
    std::vector<Bits> parts(m);
    while (true) {
        for (int i = 0; i < m; ++i) parts[i] = s.slices[i].relations[idx[i]];
        ++count;
        if (!f(parts)) return count;
        int i = m - 1;
        while (i >= 0 && ++idx[i] == s.slices[i].relations.size()) idx[i--] = 0;
        if (i < 0) return count;
    }
}

std::string describe(const Algebra& a, Bits r) {
    return a.to_string({&a, r});
}

}  // namespace

PropertyReport check_slice_subclass(const SliceSet& s) {
    PropertyReport rep{"subclass(" + s.name + ")", true, "", 0};
    const Algebra& a = *s.alg;
    for (Bits r : s.relations) {
        ++rep.checked;
        Bits cr = rel_converse({&a, r}).bits;
        if (!s.contains(cr)) {
            rep.holds = false;
            rep.detail = "converse of " + describe(a, r) + " is missing";
            return rep;
        }
    }
    for (Bits r : s.relations)
        for (Bits r2 : s.relations) {
            ++rep.checked;
            Bits comp = rel_compose({&a, r}, {&a, r2}).bits;
            if (!s.contains(comp)) {
                rep.holds = false;
                rep.detail = "composition " + describe(a, r) + " ; " +
                             describe(a, r2) + " = " + describe(a, comp) +
                             " is missing";
                return rep;
            }
            if (!s.contains(r & r2)) {
                rep.holds = false;
                rep.detail = "intersection " + describe(a, r) + " & " +
                             describe(a, r2) + " is missing";
                return rep;
            }
        }
    rep.detail = std::to_string(s.relations.size()) + " relations closed under "
                 "composition, intersection and converse";
    return rep;
}

PropertyReport check_slice_basic_subclass(const SliceSet& s) {
    PropertyReport rep = check_slice_subclass(s);
    rep.property = "basic-" + rep.property;
    if (!rep.holds) return rep;
    const Algebra& a = *s.alg;
    for (int atom = 0; atom < a.atom_count(); ++atom) {
        ++rep.checked;
        if (!s.contains(Bits{1} << atom)) {
            rep.holds = false;
            rep.detail = "atom " + a.atom_names()[atom] + " is missing";
            return rep;
        }
    }
    if (!s.contains(a.universal_bits())) {
        rep.holds = false;
        rep.detail = "the universal relation is missing";
    }
    return rep;
}

PropertyReport check_superdistributive_composition(const Projection& p,
                                                   const std::vector<Bits>& rels) {
    PropertyReport rep{"superdistributive-composition(" + p.source()->name() +
                           " -> " + p.target()->name() + ")",
                       true, "", 0};
    const Algebra& src = *p.source();
    for (Bits r : rels)
        for (Bits r2 : rels) {
            Bits comp = rel_compose({&src, r}, {&src, r2}).bits;
            if (comp == 0) continue;
            ++rep.checked;
            Bits lhs = rel_compose(p.apply({&src, r}), p.apply({&src, r2})).bits;
            Bits rhs = p.apply({&src, comp}).bits;
            if (lhs & ~rhs) {
                rep.holds = false;
                rep.detail = "r = " + describe(src, r) + ", r' = " +
                             describe(src, r2) + ": image(r);image(r') = " +
                             describe(*p.target(), lhs) +
                             " exceeds image(r;r') = " +
                             describe(*p.target(), rhs);
                return rep;
            }
        }
    rep.detail = std::to_string(rep.checked) + " pairs";
    return rep;
}

PropertyReport check_superdistributive_intersection(const Projection& p,
                                                    const std::vector<Bits>& rels) {
    PropertyReport rep{"superdistributive-intersection(" + p.source()->name() +
                           " -> " + p.target()->name() + ")",
                       true, "", 0};
    const Algebra& src = *p.source();
    for (Bits r : rels)
        for (Bits r2 : rels) {
            if ((r & r2) == 0) continue;
            ++rep.checked;
            Bits lhs = p.apply({&src, r}).bits & p.apply({&src, r2}).bits;
            Bits rhs = p.apply({&src, r & r2}).bits;
            if (lhs & ~rhs) {
                rep.holds = false;
                rep.detail = "r = " + describe(src, r) + ", r' = " +
                             describe(src, r2) + ": image(r) & image(r') = " +
                             describe(*p.target(), lhs) +
                             " exceeds image(r & r') = " +
                             describe(*p.target(), rhs);
                return rep;
            }
        }
    rep.detail = std::to_string(rep.checked) + " pairs";
    return rep;
}

PropertyReport check_conv_closed(const Subclass& s, const MultiAlgebra* ma) {
    const MultiAlgebra* use = projection_source(s, ma);
    PropertyReport rep{"projection-closed-subclass(" + s.name + ")", true, "", 0};
    const int m = use->arity();
    rep.checked = for_each_member(s, [&](const std::vector<Bits>& parts) {
        std::vector<Bits> cur = parts;
        bool changed = true;
        while (changed) {
            changed = false;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (i == j) continue;
                    Bits img = use->projection(i, j)
                                   .apply({&use->component(i), cur[i]})
                                   .bits;
                    Bits next = cur[j] & img;
                    if (next != cur[j]) { cur[j] = next; changed = true; }
                }
        }
        for (int i = 0; i < m; ++i)
            if (!s.slices[i].contains(cur[i])) {
                std::ostringstream os;
                os << "projection closure of " << use->to_string({use, parts})
                   << " leaves the subclass at component " << i + 1;
                rep.holds = false;
                rep.detail = os.str();
                return false;
            }
        return true;
    });
    if (rep.holds)
        rep.detail = std::to_string(rep.checked) + " members closed";
    return rep;
}

PropertyReport check_conv_distributive(const Subclass& s, const MultiAlgebra* ma) {
    const MultiAlgebra* use = projection_source(s, ma);
    PropertyReport rep{"projection-distributive(" + s.name + ")", true, "", 0};
    for (int i = 0; i < use->arity() && rep.holds; ++i)
        for (int j = 0; j < use->arity() && rep.holds; ++j) {
            if (i == j) continue;
            const Projection& p = use->projection(i, j);
            auto sub =
                check_superdistributive_composition(p, s.slices[i].relations);
            rep.checked += sub.checked;
            if (!sub.holds) {
                rep.holds = false;
                rep.detail = sub.detail;
                break;
            }
            sub = check_superdistributive_intersection(p, s.slices[i].relations);
            rep.checked += sub.checked;
            if (!sub.holds) {
                rep.holds = false;
                rep.detail = sub.detail;
            }
        }
    if (rep.holds) rep.detail = std::to_string(rep.checked) + " pairs";
    return rep;
}

PropertyReport check_projection_images(const Subclass& s, const MultiAlgebra* ma) {
    const MultiAlgebra* use = projection_source(s, ma);
    PropertyReport rep{"projection-images-in-slices(" + s.name + ")", true, "", 0};
    for (int i = 0; i < use->arity(); ++i)
        for (int j = 0; j < use->arity(); ++j) {
            if (i == j) continue;
            const Projection& p = use->projection(i, j);
            for (Bits r : s.slices[i].relations) {
                ++rep.checked;
                Bits img = p.apply({&use->component(i), r}).bits;
                if (!s.slices[j].contains(img)) {
                    rep.holds = false;
                    rep.detail = "image of " + describe(use->component(i), r) +
                                 " under projection " + std::to_string(i + 1) +
                                 " -> " + std::to_string(j + 1) + " is " +
                                 describe(use->component(j), img) +
                                 ", not in slice " + s.slices[j].name;
                    return rep;
                }
            }
        }
    rep.detail = std::to_string(rep.checked) + " images";
    return rep;
}

PropertyReport check_dissociable(const Subclass& s, int i, int j,
                                 const DissociabilityOptions& opts) {
    const MultiAlgebra* use = projection_source(s, opts.ma);
    PropertyReport rep{"dissociable-bi-slice(" + s.name + "," +
                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                       true, "", 0};
    const auto& si = s.slices[i].relations;
    const auto& sj = s.slices[j].relations;
    const std::size_t pairs = si.size() * sj.size();
    if (pairs > 1024 && !opts.force && !opts.counterexample_only) {
        rep.holds = false;
        rep.detail = "refused: bi-slice has " + std::to_string(pairs) +
                     " relations (guard 1024); enable force to enumerate";
        return rep;
    }
    const Algebra& ai = use->component(i);
    const Algebra& aj = use->component(j);
    DenseOps ops_i(ai), ops_j(aj);
    auto img_ij = dense_image(use->projection(i, j));
    auto img_ji = dense_image(use->projection(j, i));
    // bi-slice as pairs
    std::vector<std::pair<Bits, Bits>> bi;
    bi.reserve(pairs);
    for (Bits r : si)
        for (Bits r2 : sj) bi.emplace_back(r, r2);

    auto proj_close = [&](Bits& a, Bits& b) {
        while (true) {
            Bits b2 = b & img_ij[a];
            Bits a2 = a & img_ji[b2];
            if (a2 == a && b2 == b) return;
            a = a2; b = b2;
        }
    };
    // full algebraic closure of the 3-variable pair network
    auto fully_consistent = [&](Bits a0, Bits b0, Bits a1, Bits b1, Bits a2,
                                Bits b2) {
        while (true) {
            Bits pa0 = a0, pb0 = b0, pa1 = a1, pb1 = b1, pa2 = a2, pb2 = b2;
            proj_close(a0, b0);
            proj_close(a1, b1);
            proj_close(a2, b2);
            if (!compose_close3(ops_i, a0, a1, a2)) return false;
            if (!compose_close3(ops_j, b0, b1, b2)) return false;
            if (pa0 == a0 && pb0 == b0 && pa1 == a1 && pb1 == b1 && pa2 == a2 &&
                pb2 == b2)
                return true;
        }
    };

    std::atomic<std::uint64_t> checked{0};
    std::atomic<bool> failed{false};
    std::mutex witness_mu;
    std::string witness;
    const int jobs = std::max(1, opts.jobs);
    auto worker = [&](std::size_t begin, std::size_t end) {
        std::uint64_t local = 0;
        for (std::size_t e0 = begin; e0 < end && !failed.load(); ++e0) {
            for (std::size_t e1 = 0; e1 < bi.size() && !failed.load(); ++e1)
                for (std::size_t e2 = 0; e2 < bi.size(); ++e2) {
                    ++local;
                    // phase 1: projection-close each edge
                    Bits a0 = bi[e0].first, b0 = bi[e0].second;
                    Bits a1 = bi[e1].first, b1 = bi[e1].second;
                    Bits a2 = bi[e2].first, b2 = bi[e2].second;
                    proj_close(a0, b0);
                    proj_close(a1, b1);
                    proj_close(a2, b2);
                    // phase 2: composition-only closure per component
                    bool ok_i = compose_close3(ops_i, a0, a1, a2);
                    bool ok_j = compose_close3(ops_j, b0, b1, b2);
                    bool trivially_inconsistent =
                        !ok_i || !ok_j || !a0 || !b0 || !a1 || !b1 || !a2 || !b2;
                    if (trivially_inconsistent) continue;
                    if (!fully_consistent(a0, b0, a1, b1, a2, b2)) {
                        bool expected = false;
                        if (failed.compare_exchange_strong(expected, true)) {
                            std::lock_guard<std::mutex> lock(witness_mu);
                            std::ostringstream os;
                            os << "3-variable network with edges xy = ("
                               << describe(ai, bi[e0].first) << " ; "
                               << describe(aj, bi[e0].second) << "), xz = ("
                               << describe(ai, bi[e1].first) << " ; "
                               << describe(aj, bi[e1].second) << "), yz = ("
                               << describe(ai, bi[e2].first) << " ; "
                               << describe(aj, bi[e2].second)
                               << ") is neither trivially inconsistent nor "
                                  "algebraically consistent after "
                                  "projection-then-composition closure";
                            witness = os.str();
                        }
                        checked += local;
                        return;
                    }
                }
        }
        checked += local;
    };
    if (jobs == 1) {
        worker(0, bi.size());
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (bi.size() + jobs - 1) / jobs;
        for (int t = 0; t < jobs; ++t) {
            std::size_t b = t * chunk, e = std::min(bi.size(), b + chunk);
            if (b >= e) break;
            threads.emplace_back(worker, b, e);
        }
        for (auto& th : threads) th.join();
    }
    rep.checked = checked.load();
    if (failed.load()) {
        rep.holds = false;
        rep.detail = witness;
    } else {
        rep.detail = std::to_string(rep.checked) + " networks";
    }
    return rep;
}

PropertyReport check_composition_stable(const SliceSet& s, const Refinement& h,
                                        int jobs) {
    PropertyReport rep{"composition-stable(" + s.name + "," + h.name() + ")",
                       true, "", 0};
    if (h.algebra() != s.alg)
        throw algebra_error("refinement and slice use different algebras");
    DenseOps ops(*s.alg);
    const auto& rels = s.relations;
    // A 3-variable network (a = N01, b = N02, c = N12) is consistent for
    // composition when no edge is empty and every triangle containment
    // already holds.
    auto closed3 = [&](Bits a, Bits b, Bits c) {
        return a && b && c && !(a & ~ops.compose(b, ops.conv[c])) &&
               !(b & ~ops.compose(a, c)) && !(c & ~ops.compose(ops.conv[a], b));
    };
    std::atomic<std::uint64_t> checked{0};
    std::atomic<bool> failed{false};
    std::mutex witness_mu;
    std::string witness;
    auto worker = [&](std::size_t begin, std::size_t end) {
        std::uint64_t local = 0;
        for (std::size_t ia = begin; ia < end && !failed.load(); ++ia)
            for (std::size_t ib = 0; ib < rels.size() && !failed.load(); ++ib)
                for (std::size_t ic = 0; ic < rels.size(); ++ic) {
                    if (!closed3(rels[ia], rels[ib], rels[ic])) continue;
                    ++local;
                    Bits ha = h.apply_bits(rels[ia]);
                    Bits hb = h.apply_bits(rels[ib]);
                    Bits hc = h.apply_bits(rels[ic]);
                    if (!closed3(ha, hb, hc)) {
                        bool expected = false;
                        if (failed.compare_exchange_strong(expected, true)) {
                            std::lock_guard<std::mutex> lock(witness_mu);
                            witness = "network N01 = " + describe(*s.alg, rels[ia]) +
                                      ", N02 = " + describe(*s.alg, rels[ib]) +
                                      ", N12 = " + describe(*s.alg, rels[ic]) +
                                      " is consistent but its refinement is not";
                        }
                        checked += local;
                        return;
                    }
                }
        checked += local;
    };
    const int njobs = std::max(1, jobs);
    if (njobs == 1) {
        worker(0, rels.size());
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (rels.size() + njobs - 1) / njobs;
        for (int t = 0; t < njobs; ++t) {
            std::size_t b = t * chunk, e = std::min(rels.size(), b + chunk);
            if (b >= e) break;
            threads.emplace_back(worker, b, e);
        }
        for (auto& th : threads) th.join();
    }
    rep.checked = checked.load();
    if (failed.load()) {
        rep.holds = false;
        rep.detail = witness;
    } else {
        rep.detail = std::to_string(rep.checked) + " consistent triangles stable";
    }
    return rep;
}

PropertyReport check_projection_stable(const Subclass& s,
                                       const MultiRefinement& h, int i, int j) {
    PropertyReport rep{"projection-stable(" + s.name + "," + h.name() + "," +
                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                       true, "", 0};
    const MultiAlgebra* ma = s.ma.get();
    if (h.multi_algebra() != ma)
        throw algebra_error("multi-refinement serves a different multi-algebra");
    auto img_ij = dense_image(ma->projection(i, j));
    auto img_ji = dense_image(ma->projection(j, i));
    // A pair is projection-consistent when both parts are non-empty and
    // already closed under the two projections.
    auto consistent = [&](Bits a, Bits b) {
        return a != 0 && b != 0 && (b & img_ij[a]) == b && (a & img_ji[b]) == a;
    };
    for (Bits r : s.slices[i].relations)
        for (Bits r2 : s.slices[j].relations) {
            if (!consistent(r, r2)) continue;
            ++rep.checked;
            if (!consistent(h.component(i).apply_bits(r),
                            h.component(j).apply_bits(r2))) {
                rep.holds = false;
                rep.detail = "pair (" + describe(ma->component(i), r) + " ; " +
                             describe(ma->component(j), r2) +
                             ") is projection-consistent but its refinement is not";
                return rep;
            }
        }
    rep.detail = std::to_string(rep.checked) + " consistent pairs stable";
    return rep;
}

PropertyReport check_conv_invariant(const Subclass& s, const MultiRefinement& h) {
    PropertyReport rep{"projection-invariant(" + s.name + "," + h.name() + ")",
                       true, "", 0};
    const MultiAlgebra* ma = s.ma.get();
    if (h.multi_algebra() != ma)
        throw algebra_error("multi-refinement serves a different multi-algebra");
    for (int i = 0; i < ma->arity(); ++i)
        for (int j = 0; j < ma->arity(); ++j) {
            if (i == j) continue;
            const Projection& p = ma->projection(i, j);
            for (Bits r : s.slices[i].relations) {
                ++rep.checked;
                Bits lhs = p.apply({&ma->component(i), r}).bits;
                Bits rhs = p.apply({&ma->component(i),
                                    h.component(i).apply_bits(r)})
                               .bits;
                if (lhs != rhs) {
                    rep.holds = false;
                    rep.detail = "image of " + describe(ma->component(i), r) +
                                 " changes under the refinement";
                    return rep;
                }
            }
        }
    rep.detail = std::to_string(rep.checked) + " images invariant";
    return rep;
}

std::string to_string(const TractabilityCertificate& c) {
    std::ostringstream os;
    os << "certificate: subclass " << c.subclass << " over " << c.formalism
       << " via " << c.route;
    if (!c.weakening.empty()) os << " (established under weakening " << c.weakening << ")";
    os << "\nstatus: " << (c.granted ? "GRANTED" : "REFUSED") << "\n";
    if (!c.granted) os << "reason: " << c.refusal << "\n";
    for (const auto& r : c.verified)
        os << "  verified " << r.property << ": " << (r.holds ? "ok" : "FAIL")
           << " (" << r.checked << " instances) " << r.detail << "\n";
    for (const auto& f : c.assumed)
        os << "  assumed " << f.property << ": " << f.statement << " ["
           << f.citation << "]\n";
    return os.str();
}

TractabilityCertificate certify_slicing(const Catalog& cat, const Subclass& s,
                                        const MultiAlgebra* weakening, int jobs) {
    TractabilityCertificate cert;
    cert.subclass = s.name;
    cert.formalism = s.ma->name();
    cert.route = "slicing";
    if (weakening) cert.weakening = weakening->name();
    auto refuse = [&](std::string why) {
        cert.granted = false;
        cert.refusal = std::move(why);
        return cert;
    };

    // 1. slices are basic subclasses
    for (const auto& sl : s.slices) {
        auto rep = check_slice_basic_subclass(sl);
        cert.verified.push_back(rep);
        if (!rep.holds) return refuse("slice " + sl.name + ": " + rep.detail);
    }
    // 2. superdistributivity of the (possibly weakened) projections; on
    //    failure, search for a dissociability counterexample
    {
        auto rep = check_conv_distributive(s, weakening);
        cert.verified.push_back(rep);
        if (!rep.holds) {
            DissociabilityOptions dopts;
            dopts.ma = weakening;
            dopts.jobs = jobs;
            dopts.counterexample_only = true;
            std::string why = "projection superdistributivity fails (" +
                              rep.detail + ")";
            if (s.ma->arity() == 2) {
                auto diss = check_dissociable(s, 0, 1, dopts);
                cert.verified.push_back(diss);
                if (!diss.holds)
                    why += "; dissociability counterexample: " + diss.detail;
            }
            return refuse(why);
        }
    }
    // 3. projection images stay inside the slices (gives projection closure)
    {
        auto rep = check_projection_images(s, weakening);
        cert.verified.push_back(rep);
        if (!rep.holds) return refuse(rep.detail);
        auto closed = check_conv_closed(s, weakening);
        cert.verified.push_back(closed);
        if (!closed.holds) return refuse(closed.detail);
    }
    // 4. declared minimality of each slice
    for (const auto& sl : s.slices) {
        const DeclaredFact* fact = nullptr;
        try {
            fact = cat.subclass(sl.name).fact("minimal");
        } catch (const algebra_error&) {
        }
        if (!fact)
            return refuse("slice " + sl.name +
                          " has no declared minimality fact on record");
        cert.assumed.push_back(*fact);
    }
    // 5. plenary anti-tree; when a weakening is used it must be a tree
    //    weakening along one of them
    {
        auto trees = plenary_anti_trees(*s.ma);
        if (trees.empty())
            return refuse("the formalism has no plenary anti-tree");
        if (weakening) {
            bool found = false;
            for (const auto& t : trees)
                if (is_tree_weakening(*s.ma, *weakening, t)) { found = true; break; }
            if (!found)
                return refuse("the weakening does not preserve the projections "
                              "of any plenary anti-tree");
        }
        PropertyReport rep{"plenary-anti-tree(" + s.ma->name() + ")", true,
                           std::to_string(trees.size()) + " plenary anti-trees",
                           static_cast<std::uint64_t>(trees.size())};
        cert.verified.push_back(rep);
    }
    // 6. declared completeness of the formalism
    {
        const DeclaredFact* fact = cat.completeness(s.ma->name());
        if (!fact)
            return refuse("no declared completeness fact for " + s.ma->name());
        cert.assumed.push_back(*fact);
    }
    cert.granted = true;
    return cert;
}

TractabilityCertificate certify_refinement(const Catalog& cat, const Subclass& s,
                                           const MultiRefinement& h,
                                           const Subclass& target,
                                           const TractabilityCertificate& target_cert,
                                           int jobs) {
    (void)cat;
    TractabilityCertificate cert;
    cert.subclass = s.name;
    cert.formalism = s.ma->name();
    cert.route = "refinement(" + h.name() + " -> " + target.name + ")";
    auto refuse = [&](std::string why) {
        cert.granted = false;
        cert.refusal = std::move(why);
        return cert;
    };
    if (!target_cert.granted || target_cert.subclass != target.name)
        return refuse("target subclass " + target.name +
                      " does not hold a granted certificate");
    if (s.ma != target.ma)
        return refuse("source and target subclasses live in different formalisms");
    if (h.multi_algebra() != s.ma.get())
        return refuse("the refinement serves a different multi-algebra");

    const int m = s.ma->arity();
    // 1. slices are subclasses
    for (const auto& sl : s.slices) {
        auto rep = check_slice_subclass(sl);
        cert.verified.push_back(rep);
        if (!rep.holds) return refuse("slice " + sl.name + ": " + rep.detail);
    }
    // 2. refined relations land in the target slices
    for (int i = 0; i < m; ++i) {
        PropertyReport rep{"refinement-images-in-target(" + s.slices[i].name +
                               " -> " + target.slices[i].name + ")",
                           true, "", 0};
        for (Bits r : s.slices[i].relations) {
            ++rep.checked;
            Bits hr = h.component(i).apply_bits(r);
            if (!target.slices[i].contains(hr)) {
                rep.holds = false;
                rep.detail = "refined relation " +
                             s.ma->component(i).to_string(
                                 {&s.ma->component(i), hr}) +
                             " is outside the target slice";
                break;
            }
        }
        if (rep.holds) rep.detail = std::to_string(rep.checked) + " images";
        cert.verified.push_back(rep);
        if (!rep.holds) return refuse(rep.detail);
    }
    // 3. composition stability of each slice
    for (int i = 0; i < m; ++i) {
        auto rep = check_composition_stable(s.slices[i], h.component(i), jobs);
        cert.verified.push_back(rep);
        if (!rep.holds) return refuse(rep.detail);
    }
    // 4. projection stability of each bi-slice
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto rep = check_projection_stable(s, h, i, j);
            cert.verified.push_back(rep);
            if (!rep.holds) return refuse(rep.detail);
        }
    // 5. projection images stay inside the slices (projection closure of s)
    {
        auto rep = check_projection_images(s);
        cert.verified.push_back(rep);
        if (!rep.holds) return refuse(rep.detail);
        auto closed = check_conv_closed(s);
        cert.verified.push_back(closed);
        if (!closed.holds) return refuse(closed.detail);
    }
    for (const auto& f : target_cert.assumed) cert.assumed.push_back(f);
    cert.granted = true;
    return cert;
}

}  // namespace qcr
