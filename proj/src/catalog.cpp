#include "qcr/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "qcr/io.hpp"

#ifndef QCR_DATA_DIR
#define QCR_DATA_DIR ""
#endif

namespace qcr {

namespace fs = std::filesystem;

bool SliceSet::contains(Bits b) const {
    if (b == 0) return true;  // implicit member, needed for intersection closure
    return std::binary_search(relations.begin(), relations.end(), b);
}

bool Subclass::contains(const MultiRelation& r) const {
    if (r.ma != ma.get()) return false;
    for (std::size_t i = 0; i < slices.size(); ++i)
        if (!slices[i].contains(r.parts[i])) return false;
    return true;
}

const DeclaredFact* Subclass::fact(const std::string& property) const {
    for (const auto& f : facts)
        if (f.property == property) return &f;
    return nullptr;
}

std::string default_catalog_directory() {
    if (const char* env = std::getenv("QCR_CATALOG_DIR"); env && *env)
        return env;
    return QCR_DATA_DIR;
}

namespace {

SliceSet make_slice(std::string name, const Algebra* alg, std::vector<Bits> rels) {
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
    if (!rels.empty() && rels.front() == 0) rels.erase(rels.begin());
    return SliceSet{std::move(name), alg, std::move(rels)};
}

/// All non-empty relations of an algebra (algebras up to 16 atoms).
std::vector<Bits> all_relations(const Algebra& alg) {
    std::vector<Bits> out;
    for (Bits b = 1; b <= alg.universal_bits(); ++b) out.push_back(b);
    return out;
}

}  // namespace

Catalog Catalog::load(const std::string& directory) {
    Catalog cat;
    const std::string dir =
        directory.empty() ? default_catalog_directory() : directory;
    if (dir.empty() || !fs::is_directory(dir))
        throw algebra_error("catalog directory '" + dir + "' does not exist");
    std::vector<fs::path> algs, malgs, subs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension().string();
        if (ext == ".alg") algs.push_back(entry.path());
        else if (ext == ".malg") malgs.push_back(entry.path());
        else if (ext == ".sub") subs.push_back(entry.path());
    }
    std::sort(algs.begin(), algs.end());
    std::sort(malgs.begin(), malgs.end());
    std::sort(subs.begin(), subs.end());
    AlgebraResolver resolver = [&cat](const std::string& name) {
        auto it = cat.algebras_.find(name);
        return it == cat.algebras_.end() ? nullptr : it->second;
    };
    for (const auto& p : algs) {
        std::ifstream in(p);
        auto a = parse_algebra(in);
        cat.algebras_[a->name()] = a;
    }
    for (const auto& p : malgs) {
        std::ifstream in(p);
        auto m = parse_multi_algebra(in, resolver);
        cat.multis_[m->name()] = m;
    }
    for (const auto& p : subs) {
        std::ifstream in(p);
        auto table = parse_slice_table(in, resolver);
        auto alg = cat.algebras_.at(table.algebra_name);
        auto mono = mono_multi_algebra(alg);
        Subclass s;
        s.name = table.name;
        s.ma = mono;
        s.slices.push_back(make_slice(table.name, alg.get(), table.relations));
        cat.multis_[mono->name()] = mono;
        cat.subclasses_[s.name] = std::move(s);
    }
    cat.register_builtins();
    return cat;
}

void Catalog::register_builtins() {
    // --- refinements over PA: map to the strict part where possible ---
    if (auto it = algebras_.find("PA"); it != algebras_.end()) {
        const Algebra& pa = *it->second;
        const Bits lt = Bits{1} << pa.atom_index("<");
        const Bits eq = Bits{1} << pa.atom_index("=");
        const Bits gt = Bits{1} << pa.atom_index(">");
        std::vector<Bits> t(8, 0);
        t[lt] = lt;
        t[eq] = eq;
        t[gt] = gt;
        t[lt | eq] = lt;
        t[lt | gt] = lt | gt;
        t[eq | gt] = gt;
        t[lt | eq | gt] = lt | gt;
        refinements_.emplace("h_max",
                             Refinement("h_max", it->second.get(), std::move(t)));
        completeness_["mono(PA)"] =
            DeclaredFact{"complete",
                         "algebraically closed scenarios over PA are satisfiable",
                         "van Beek 1992"};
    }

    // --- RCC8 predicate subclasses and refinements ---
    auto rcc8_it = algebras_.find("RCC8");
    if (rcc8_it != algebras_.end()) {
        const auto rcc8 = rcc8_it->second;
        const Algebra& a = *rcc8;
        auto bit = [&](const char* n) { return Bits{1} << a.atom_index(n); };
        const Bits DC = bit("DC"), EC = bit("EC"), PO = bit("PO"), TPP = bit("TPP"),
                   NTPP = bit("NTPP"), TPPI = bit("TPPI"), NTPPI = bit("NTPPI"),
                   EQ = bit("EQ");
        auto in_n8 = [&](Bits r) {
            return !(r & PO) && (r & (TPP | NTPP)) && (r & (TPPI | NTPPI));
        };
        auto in_np8 = [&](Bits r) {
            if (in_n8(r)) return true;
            for (Bits r1 : {Bits{0}, DC})
                for (Bits r2 : {NTPP, NTPPI})
                    if (r == (r1 | EC | r2 | EQ)) return true;
            return false;
        };
        auto in_p8 = [&](Bits r) { return !in_np8(r); };
        auto in_h8 = [&](Bits r) {
            if (!in_p8(r)) return false;
            if (((r & (NTPP | EQ)) == (NTPP | EQ)) && !(r & TPP)) return false;
            if (((r & (NTPPI | EQ)) == (NTPPI | EQ)) && !(r & TPPI)) return false;
            return true;
        };
        auto in_q8 = [&](Bits r) {
            if (!in_p8(r)) return false;
            if ((r & EQ) && (r & (TPP | NTPP | TPPI | NTPPI)) && !(r & PO))
                return false;
            return true;
        };
        auto in_c8 = [&](Bits r) {
            if (!in_p8(r)) return false;
            if ((r & EC) && (r & (TPP | NTPP | TPPI | NTPPI | EQ)) && !(r & PO))
                return false;
            return true;
        };
        auto mono = mono_multi_algebra(rcc8);
        multis_[mono->name()] = mono;
        auto add_pred = [&](const std::string& name, auto pred) {
            std::vector<Bits> rels;
            for (Bits r : all_relations(a))
                if (pred(r)) rels.push_back(r);
            Subclass s;
            s.name = name;
            s.ma = mono;
            s.slices.push_back(make_slice(name, &a, std::move(rels)));
            subclasses_[name] = std::move(s);
        };
        add_pred("N8", in_n8);
        add_pred("NP8", in_np8);
        add_pred("P8", in_p8);
        add_pred("H8", in_h8);
        add_pred("Q8", in_q8);
        add_pred("C8", in_c8);

        // refinements mapping non-basic relations to a preferred atom; the
        // case order matters. Relations whose case falls through (none occur
        // inside the matching subclass) map to themselves.
        auto make_h = [&](const std::string& name, bool variant_c8) {
            std::vector<Bits> t(256, 0);
            for (Bits r = 0; r < 256; ++r) {
                Bits h;
                if (popcount_bits(r) <= 1) h = r;
                else if (r & DC) h = DC;
                else if (!variant_c8 && (r & EC)) h = EC;
                else if (r & PO) h = PO;
                else if (variant_c8 && (r & NTPP)) h = NTPP;
                else if (variant_c8 && (r & NTPPI)) h = NTPPI;
                else if (r & TPP) h = TPP;
                else if (r & TPPI) h = TPPI;
                else h = r;  // outside the subclass this refinement serves
                t[r] = h;
            }
            refinements_.emplace(name, Refinement(name, rcc8.get(), std::move(t)));
        };
        make_h("h_H8", false);
        make_h("h_Q8", false);  // identical table; both names kept
        make_h("h_C8", true);
        completeness_["mono(RCC8)"] =
            DeclaredFact{"complete",
                         "algebraically closed scenarios over RCC8 are satisfiable",
                         "Renz & Nebel 1999"};
    }

    // --- declared minimality of the distributive subclasses ---
    for (const char* n : {"PA_s", "RCC8_s"}) {
        if (auto it = subclasses_.find(n); it != subclasses_.end())
            it->second.facts.push_back(DeclaredFact{
                "minimal",
                "algebraic closure computes minimal networks over this subclass",
                "Long & Li 2015"});
    }

    // --- product subclasses over STC ---
    auto stc_it = multis_.find("STC");
    if (stc_it != multis_.end() && rcc8_it != algebras_.end() &&
        algebras_.count("PA")) {
        auto stc = stc_it->second;
        const Algebra* rcc8 = &stc->component(0);
        const Algebra* pa = &stc->component(1);
        auto product = [&](const std::string& name, const SliceSet& s1,
                           const SliceSet& s2) {
            Subclass s;
            s.name = name;
            s.ma = stc;
            s.slices = {s1, s2};
            subclasses_[name] = std::move(s);
        };
        SliceSet pa_full = make_slice("PA", pa, all_relations(*pa));
        auto slice_of = [&](const std::string& n) -> const SliceSet* {
            auto it = subclasses_.find(n);
            return it == subclasses_.end() ? nullptr : &it->second.slices[0];
        };
        if (auto* rs = slice_of("RCC8_s")) {
            if (auto* ps = slice_of("PA_s")) product("RCC8s_x_PAs", *rs, *ps);
        }
        for (const char* n : {"H8", "Q8", "C8"})
            if (auto* ss = slice_of(n)) {
                // slices must use the same algebra object as the product
                if (ss->alg == rcc8)
                    product(std::string(n) + "_x_PA", *ss, pa_full);
            }
        completeness_["STC"] = DeclaredFact{
            "complete",
            "algebraically closed scenarios over the size-topology product are "
            "satisfiable",
            "Gerevini & Renz 2002"};
    }
}

std::shared_ptr<const Algebra> Catalog::algebra(const std::string& name) const {
    auto it = algebras_.find(name);
    if (it == algebras_.end())
        throw algebra_error("catalog has no algebra '" + name + "'");
    return it->second;
}

namespace {

/// Builds the temporal-sequence product of m copies of a point algebra:
/// adjacent moments are linked by continuity (a strict order can persist or
/// collapse to equality; equality can evolve anywhere), distant moments are
/// unconstrained.
std::shared_ptr<const MultiAlgebra> build_tpc(std::shared_ptr<const Algebra> pa,
                                              int m, const std::string& name) {
    const Algebra& a = *pa;
    const Bits lt = Bits{1} << a.atom_index("<");
    const Bits eq = Bits{1} << a.atom_index("=");
    const Bits gt = Bits{1} << a.atom_index(">");
    std::vector<Bits> adjacent(3);
    adjacent[a.atom_index("<")] = lt | eq;
    adjacent[a.atom_index("=")] = lt | eq | gt;
    adjacent[a.atom_index(">")] = gt | eq;
    std::vector<std::shared_ptr<const Algebra>> comps(m, pa);
    std::map<std::pair<int, int>, Projection> projs;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            if (std::abs(i - j) == 1)
                projs.emplace(std::make_pair(i, j),
                              Projection(pa.get(), pa.get(), adjacent));
            else
                projs.emplace(std::make_pair(i, j),
                              Projection::constant_full(pa.get(), pa.get()));
        }
    return std::make_shared<MultiAlgebra>(name, std::move(comps), std::move(projs));
}

/// Builds the scale-sequence product of m copies of a point algebra, scales
/// totally ordered from finest (1) to coarsest (m): toward coarser scales a
/// strict order may collapse to equality; toward finer scales equality may
/// resolve arbitrarily.
std::shared_ptr<const MultiAlgebra> build_spc(std::shared_ptr<const Algebra> pa,
                                              int m, const std::string& name) {
    const Algebra& a = *pa;
    const Bits lt = Bits{1} << a.atom_index("<");
    const Bits eq = Bits{1} << a.atom_index("=");
    const Bits gt = Bits{1} << a.atom_index(">");
    std::vector<Bits> up(3), down(3);
    up[a.atom_index("<")] = lt | eq;
    up[a.atom_index("=")] = eq;
    up[a.atom_index(">")] = gt | eq;
    down[a.atom_index("<")] = lt;
    down[a.atom_index("=")] = lt | eq | gt;
    down[a.atom_index(">")] = gt;
    std::vector<std::shared_ptr<const Algebra>> comps(m, pa);
    std::map<std::pair<int, int>, Projection> projs;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            projs.emplace(std::make_pair(i, j),
                          Projection(pa.get(), pa.get(), i < j ? up : down));
        }
    return std::make_shared<MultiAlgebra>(name, std::move(comps), std::move(projs));
}

}  // namespace

std::shared_ptr<const MultiAlgebra> Catalog::multi_algebra(
    const std::string& name) const {
    auto it = multis_.find(name);
    if (it != multis_.end()) return it->second;
    // weakening: <base>|full:i:j[,full:k:l...]
    if (auto bar = name.find('|'); bar != std::string::npos) {
        auto base = multi_algebra(name.substr(0, bar));
        std::map<std::pair<int, int>, Projection> repl;
        std::string spec = name.substr(bar + 1);
        std::size_t pos = 0;
        while (pos < spec.size()) {
            auto end = spec.find(',', pos);
            if (end == std::string::npos) end = spec.size();
            std::string item = spec.substr(pos, end - pos);
            pos = end + 1;
            int i, j;
            if (std::sscanf(item.c_str(), "full:%d:%d", &i, &j) != 2)
                throw algebra_error("bad weakening spec '" + item +
                                    "' (expected full:i:j)");
            --i; --j;
            if (i < 0 || j < 0 || i >= base->arity() || j >= base->arity() || i == j)
                throw algebra_error("weakening spec '" + item +
                                    "': bad component indices");
            repl.emplace(std::make_pair(i, j),
                         Projection::constant_full(&base->component(i),
                                                   &base->component(j)));
        }
        auto weak = weaken(*base, name, repl);
        multis_[name] = weak;
        return weak;
    }
    if (name.rfind("mono(", 0) == 0 && name.back() == ')') {
        auto mono = mono_multi_algebra(algebra(name.substr(5, name.size() - 6)));
        multis_[name] = mono;
        return mono;
    }
    for (const char* prefix : {"TPC", "SPC"}) {
        if (name.rfind(prefix, 0) == 0) {
            int m = 0;
            try {
                m = std::stoi(name.substr(3));
            } catch (...) {
                continue;
            }
            if (m < 2 || m > 9)
                throw algebra_error("'" + name + "': arity must be in 2..9");
            auto pa = algebra("PA");
            auto built = (prefix[0] == 'T') ? build_tpc(pa, m, name)
                                            : build_spc(pa, m, name);
            multis_[name] = built;
            return built;
        }
    }
    throw algebra_error("catalog has no multi-algebra '" + name + "'");
}

const Subclass& Catalog::subclass(const std::string& name) const {
    auto it = subclasses_.find(name);
    if (it == subclasses_.end())
        throw algebra_error("catalog has no subclass '" + name + "'");
    return it->second;
}

const Refinement& Catalog::refinement(const std::string& name) const {
    auto it = refinements_.find(name);
    if (it == refinements_.end())
        throw algebra_error("catalog has no refinement '" + name + "'");
    return it->second;
}

MultiRefinement Catalog::multi_refinement(
    const std::string& spec, std::shared_ptr<const MultiAlgebra> ma) const {
    std::vector<std::string> names;
    std::string cur;
    for (char c : spec) {
        if (c == ',') {
            names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    names.push_back(cur);
    if (static_cast<int>(names.size()) != ma->arity())
        throw algebra_error("multi-refinement '" + spec + "': expected " +
                            std::to_string(ma->arity()) + " component names");
    std::vector<Refinement> comps;
    for (int i = 0; i < ma->arity(); ++i) {
        if (names[i] == "id")
            comps.push_back(Refinement::identity(&ma->component(i)));
        else
            comps.push_back(refinement(names[i]));
        if (comps.back().algebra() != &ma->component(i))
            throw algebra_error("multi-refinement '" + spec + "': component " +
                                std::to_string(i + 1) + " refines the wrong algebra");
    }
    return MultiRefinement(spec, ma.get(), std::move(comps));
}

const DeclaredFact* Catalog::completeness(
    const std::string& multi_algebra_name) const {
    auto it = completeness_.find(multi_algebra_name);
    if (it != completeness_.end()) return &it->second;
    // sequence families share one declared fact
    static const DeclaredFact tpc_fact{
        "complete",
        "algebraically closed scenarios over temporal sequences are satisfiable",
        "continuity of point sequences (declared)"};
    static const DeclaredFact spc_fact{
        "complete",
        "algebraically closed scenarios over scale sequences are satisfiable",
        "granularity conversion semantics (declared)"};
    if (multi_algebra_name.rfind("TPC", 0) == 0) return &tpc_fact;
    if (multi_algebra_name.rfind("SPC", 0) == 0) return &spc_fact;
    return nullptr;
}

std::vector<std::string> Catalog::algebra_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : algebras_) out.push_back(n);
    return out;
}

std::vector<std::string> Catalog::multi_algebra_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : multis_) out.push_back(n);
    return out;
}

std::vector<std::string> Catalog::subclass_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : subclasses_) out.push_back(n);
    return out;
}

std::vector<std::string> Catalog::refinement_names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : refinements_) out.push_back(n);
    return out;
}

}  // namespace qcr
