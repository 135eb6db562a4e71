// qcr: command-line front end for qualitative constraint reasoning over
// multi-algebras.
//
// Exit codes: 0 success / SAT / property holds; 1 UNSAT / property fails;
// 2 usage error or refusal.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "qcr/analysis.hpp"
#include "qcr/catalog.hpp"
#include "qcr/io.hpp"
#include "qcr/oracle.hpp"
#include "qcr/qcn.hpp"

using namespace qcr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitRefused = 2;

Network load_network(const Catalog& cat, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open network file: " + path);
    return parse_network(in, [&](const std::string& name) {
        return cat.multi_algebra(name);
    });
}

int default_jobs() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

void print_report(const PropertyReport& r) {
    std::cout << r.property << ": " << (r.holds ? "holds" : "FAILS")
              << " (" << r.checked << " instances checked)\n";
    if (!r.detail.empty()) std::cout << "  " << r.detail << "\n";
}

// ---- catalog ----

int cmd_catalog_list(const Catalog& cat) {
    std::cout << "algebras:\n";
    for (const auto& n : cat.algebra_names()) std::cout << "  " << n << "\n";
    std::cout << "multi-algebras:\n";
    for (const auto& n : cat.multi_algebra_names()) std::cout << "  " << n << "\n";
    std::cout << "subclasses:\n";
    for (const auto& n : cat.subclass_names()) std::cout << "  " << n << "\n";
    std::cout << "refinements:\n";
    for (const auto& n : cat.refinement_names()) std::cout << "  " << n << "\n";
    return kExitOk;
}

int cmd_catalog_show(const Catalog& cat, const std::string& name) {
    for (const auto& a : cat.algebra_names()) {
        if (a != name) continue;
        auto alg = cat.algebra(name);
        std::cout << "algebra " << alg->name() << "\n  atoms:";
        for (const auto& at : alg->atom_names()) std::cout << " " << at;
        std::cout << "\n  identity: "
                  << alg->atom_names()[alg->identity_atom()] << "\n";
        return kExitOk;
    }
    for (const auto& m : cat.multi_algebra_names()) {
        if (m != name) continue;
        auto ma = cat.multi_algebra(name);
        std::cout << "multi-algebra " << ma->name() << "\n  components:";
        for (int i = 0; i < ma->arity(); ++i)
            std::cout << " " << ma->component(i).name();
        std::cout << "\n";
        return kExitOk;
    }
    for (const auto& s : cat.subclass_names()) {
        if (s != name) continue;
        const Subclass& sub = cat.subclass(name);
        std::cout << "subclass " << sub.name << " over " << sub.ma->name()
                  << "\n";
        for (std::size_t i = 0; i < sub.slices.size(); ++i) {
            const SliceSet& sl = sub.slices[i];
            std::cout << "  slice " << (i + 1) << " (" << sl.alg->name()
                      << "): " << sl.size() << " relations\n";
            for (Bits b : sl.relations) {
                Relation r{sl.alg, b};
                std::cout << "    " << sl.alg->to_string(r) << "\n";
            }
        }
        for (const auto& f : sub.facts)
            std::cout << "  declared " << f.property << ": " << f.statement
                      << " [" << f.citation << "]\n";
        return kExitOk;
    }
    for (const auto& r : cat.refinement_names()) {
        if (r != name) continue;
        const Refinement& h = cat.refinement(name);
        const Algebra& alg = *h.algebra();
        std::cout << "refinement " << h.name() << " on " << alg.name() << "\n";
        for (Bits b = 1; b < (Bits{1} << alg.atom_count()); ++b) {
            Bits img = h.apply_bits(b);
            if (img != b)
                std::cout << "  " << alg.to_string({&alg, b}) << " -> "
                          << alg.to_string({&alg, img}) << "\n";
        }
        std::cout << "  (all other relations map to themselves)\n";
        return kExitOk;
    }
    std::cerr << "unknown catalog entry: " << name << "\n";
    return kExitRefused;
}

// ---- axioms ----

int cmd_axioms(const Catalog& cat, const std::string& name) {
    auto alg = cat.algebra(name);
    AxiomReport rep = alg->check_axioms();
    for (const auto& r : rep.results) {
        std::cout << r.family << ": " << (r.passed ? "pass" : "FAIL");
        if (!r.witness.empty()) std::cout << "  [" << r.witness << "]";
        std::cout << "\n";
    }
    if (rep.all_passed()) {
        std::cout << "all axioms hold\n";
        return kExitOk;
    }
    return kExitFail;
}

// ---- closure / scenarios ----

int cmd_closure(const Catalog& cat, const std::string& file) {
    Network n = load_network(cat, file);
    Network c = algebraic_closure(n);
    std::cout << write_network(c);
    if (is_trivially_inconsistent(c)) {
        std::cout << "# algebraically inconsistent (some part empty)\n";
        return kExitFail;
    }
    std::cout << "# algebraically consistent\n";
    return kExitOk;
}

int cmd_scenarios(const Catalog& cat, const std::string& file,
                  std::size_t limit) {
    Network n = load_network(cat, file);
    auto scen = enumerate_closed_scenarios(n, limit);
    for (const auto& s : scen) std::cout << write_network(s) << "\n";
    std::cout << "# " << scen.size() << " algebraically closed scenario(s)";
    if (limit != 0 && scen.size() == limit) std::cout << " (limit reached)";
    std::cout << "\n";
    return scen.empty() ? kExitFail : kExitOk;
}

// ---- sat ----

int cmd_sat(const Catalog& cat, const std::string& file,
            const std::string& method, const std::string& subclass_name,
            const std::string& weaken_name, int jobs, bool force) {
    Network n = load_network(cat, file);

    SatOptions opts;
    if (method == "closure")
        opts.method = SatMethod::Closure;
    else if (method == "backtrack")
        opts.method = SatMethod::Backtrack;
    else if (method == "bruteforce")
        opts.method = SatMethod::BruteForce;
    else {
        std::cerr << "unknown method: " << method
                  << " (expected closure|backtrack|bruteforce)\n";
        return kExitRefused;
    }

    const std::string& formalism = n.multi_algebra().name();
    if (const DeclaredFact* f = cat.completeness(formalism)) {
        opts.completeness_declared = true;
        std::cout << "# completeness of " << formalism << ": " << f->statement
                  << " [" << f->citation << "]\n";
    } else if (force) {
        opts.completeness_declared = true;
        std::cout << "# completeness of " << formalism
                  << " assumed by --force\n";
    }

    if (opts.method == SatMethod::Closure) {
        if (force) {
            opts.closure_certified = true;
            std::cout << "# closure method soundness assumed by --force\n";
        } else if (!subclass_name.empty()) {
            const Subclass& s = cat.subclass(subclass_name);
            for (int x = 0; x < n.size(); ++x)
                for (int y = x + 1; y < n.size(); ++y)
                    if (!s.contains(n.edge(x, y))) {
                        std::cout << "refused: edge " << n.variables()[x]
                                  << " " << n.variables()[y]
                                  << " is outside subclass " << s.name << "\n";
                        return kExitRefused;
                    }
            const MultiAlgebra* weak = nullptr;
            std::shared_ptr<const MultiAlgebra> weak_keep;
            if (!weaken_name.empty()) {
                weak_keep = cat.multi_algebra(weaken_name);
                weak = weak_keep.get();
            }
            TractabilityCertificate cert = certify_slicing(cat, s, weak, jobs);
            if (!cert.granted) {
                std::cout << to_string(cert);
                std::cout << "refused: no tractability certificate for "
                          << s.name << "\n";
                return kExitRefused;
            }
            std::cout << "# closure method certified for subclass " << s.name
                      << "\n";
            opts.closure_certified = true;
        }
    }

    Decision d = satisfiable(n, opts);
    switch (d.status) {
        case SatStatus::Sat:
            std::cout << "SAT\n";
            if (d.witness) std::cout << write_network(*d.witness);
            return kExitOk;
        case SatStatus::Unsat:
            std::cout << "UNSAT\n";
            return kExitFail;
        case SatStatus::Refused:
            std::cout << "refused: " << d.message << "\n";
            return kExitRefused;
    }
    return kExitRefused;
}

// ---- analyze ----

int cmd_analyze(const Catalog& cat, const std::string& subclass_name,
                const std::string& property, const std::string& weaken_name,
                const std::string& refinement_spec, int slice_index,
                std::vector<int> pair, int jobs, bool force) {
    const Subclass& s = cat.subclass(subclass_name);
    const MultiAlgebra* maov = nullptr;
    std::shared_ptr<const MultiAlgebra> keep;
    if (!weaken_name.empty()) {
        keep = cat.multi_algebra(weaken_name);
        maov = keep.get();
    }
    if (pair.empty()) pair = {1, 2};
    if (pair.size() != 2 || pair[0] < 1 || pair[1] < 1 ||
        pair[0] > s.ma->arity() || pair[1] > s.ma->arity()) {
        std::cerr << "--pair needs two 1-based component indices\n";
        return kExitRefused;
    }
    int pi = pair[0] - 1, pj = pair[1] - 1;

    auto need_refinement = [&]() -> std::optional<MultiRefinement> {
        if (refinement_spec.empty()) {
            std::cerr << "property '" << property << "' needs --refinement\n";
            return std::nullopt;
        }
        return cat.multi_refinement(refinement_spec, s.ma);
    };

    PropertyReport rep;
    if (property == "subclass") {
        if (slice_index < 1 ||
            slice_index > static_cast<int>(s.slices.size())) {
            std::cerr << "--slice needs a 1-based slice index\n";
            return kExitRefused;
        }
        rep = check_slice_subclass(s.slices[slice_index - 1]);
    } else if (property == "basic-subclass") {
        if (slice_index < 1 ||
            slice_index > static_cast<int>(s.slices.size())) {
            std::cerr << "--slice needs a 1-based slice index\n";
            return kExitRefused;
        }
        rep = check_slice_basic_subclass(s.slices[slice_index - 1]);
    } else if (property == "conv-closed") {
        rep = check_conv_closed(s, maov);
    } else if (property == "conv-distributive") {
        rep = check_conv_distributive(s, maov);
    } else if (property == "projection-images") {
        rep = check_projection_images(s, maov);
    } else if (property == "dissociable") {
        DissociabilityOptions opts;
        opts.ma = maov;
        opts.jobs = jobs;
        opts.force = force;
        rep = check_dissociable(s, pi, pj, opts);
    } else if (property == "composition-stable") {
        auto h = need_refinement();
        if (!h) return kExitRefused;
        if (slice_index < 1 ||
            slice_index > static_cast<int>(s.slices.size())) {
            std::cerr << "--slice needs a 1-based slice index\n";
            return kExitRefused;
        }
        rep = check_composition_stable(s.slices[slice_index - 1],
                                       h->component(slice_index - 1), jobs);
    } else if (property == "projection-stable") {
        auto h = need_refinement();
        if (!h) return kExitRefused;
        rep = check_projection_stable(s, *h, pi, pj);
    } else if (property == "conv-invariant") {
        auto h = need_refinement();
        if (!h) return kExitRefused;
        rep = check_conv_invariant(s, *h);
    } else {
        std::cerr << "unknown property: " << property
                  << " (expected subclass|basic-subclass|conv-closed|"
                     "conv-distributive|projection-images|dissociable|"
                     "composition-stable|projection-stable|conv-invariant)\n";
        return kExitRefused;
    }
    print_report(rep);
    return rep.holds ? kExitOk : kExitFail;
}

// ---- certify ----

int cmd_certify_slicing(const Catalog& cat, const std::string& subclass_name,
                        const std::string& weaken_name, int jobs) {
    const Subclass& s = cat.subclass(subclass_name);
    const MultiAlgebra* weak = nullptr;
    std::shared_ptr<const MultiAlgebra> keep;
    if (!weaken_name.empty()) {
        keep = cat.multi_algebra(weaken_name);
        weak = keep.get();
    }
    TractabilityCertificate cert = certify_slicing(cat, s, weak, jobs);
    std::cout << to_string(cert);
    return cert.granted ? kExitOk : kExitFail;
}

int cmd_certify_refinement(const Catalog& cat, const std::string& subclass_name,
                           const std::string& target_name,
                           const std::string& refinement_spec,
                           const std::string& target_weaken, int jobs) {
    const Subclass& s = cat.subclass(subclass_name);
    const Subclass& target = cat.subclass(target_name);
    MultiRefinement h = cat.multi_refinement(refinement_spec, s.ma);
    const MultiAlgebra* weak = nullptr;
    std::shared_ptr<const MultiAlgebra> keep;
    if (!target_weaken.empty()) {
        keep = cat.multi_algebra(target_weaken);
        weak = keep.get();
    }
    TractabilityCertificate target_cert =
        certify_slicing(cat, target, weak, jobs);
    if (!target_cert.granted) {
        std::cout << to_string(target_cert);
        std::cout << "refused: target subclass " << target.name
                  << " holds no certificate\n";
        return kExitFail;
    }
    TractabilityCertificate cert =
        certify_refinement(cat, s, h, target, target_cert, jobs);
    std::cout << to_string(cert);
    return cert.granted ? kExitOk : kExitFail;
}

// ---- oracle ----

int cmd_oracle_sat(const Catalog& cat, const std::string& file, bool prune,
                   std::uint64_t max_scenarios) {
    Network n = load_network(cat, file);
    OracleOptions opts;
    opts.prune = prune;
    opts.max_scenarios = max_scenarios;
    OracleResult r = brute_force_sat(n, opts);
    if (!r.decided) {
        std::cout << "undecided after " << r.scenarios_checked
                  << " scenarios (bound reached)\n";
        return kExitRefused;
    }
    std::cout << (r.sat ? "SAT" : "UNSAT") << " (" << r.scenarios_checked
              << " scenarios checked)\n";
    if (r.witness) std::cout << write_network(*r.witness);
    return r.sat ? kExitOk : kExitFail;
}

int cmd_oracle_minimal(const Catalog& cat, const std::string& file) {
    Network n = load_network(cat, file);
    Network m = minimal_network(n);
    std::cout << write_network(m);
    return is_trivially_inconsistent(m) ? kExitFail : kExitOk;
}

int cmd_oracle_falsify(const Catalog& cat, const std::string& subclass_name,
                       std::uint64_t trials, int vars, std::uint64_t seed) {
    const Subclass& s = cat.subclass(subclass_name);
    MinimalityTrialResult r = falsify_minimality(s, vars, trials, seed);
    std::cout << r.detail << "\n";
    if (r.counterexample) {
        std::cout << "counterexample network:\n"
                  << write_network(*r.counterexample);
        return kExitFail;
    }
    std::cout << "no counterexample in " << r.trials << " trials (vars="
              << vars << ", seed=" << seed << ")\n";
    return kExitOk;
}

// ---- suite: reproduce the bundled worked examples ----

int cmd_suite(const Catalog& cat, int jobs) {
    int failures = 0;
    auto item = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << "\n";
        if (!ok) ++failures;
    };
    std::string dir = default_catalog_directory();
    if (const char* env = std::getenv("QCR_CATALOG_DIR")) dir = env;

    item("axioms: PA", cat.algebra("PA")->check_axioms().all_passed());
    item("axioms: RCC8", cat.algebra("RCC8")->check_axioms().all_passed());

    {
        auto rcc8 = cat.algebra("RCC8");
        auto rel = [&](const char* a) {
            return Relation{rcc8.get(), Bits{1} << rcc8->atom_index(a)};
        };
        Relation got = rel_compose(rel("EC"), rel("NTPP"));
        Bits want = (Bits{1} << rcc8->atom_index("PO")) |
                    (Bits{1} << rcc8->atom_index("TPP")) |
                    (Bits{1} << rcc8->atom_index("NTPP"));
        item("composition: EC ; NTPP = {PO,TPP,NTPP}", got.bits == want);
    }

    {
        auto stc = cat.multi_algebra("STC");
        const Algebra& rc = stc->component(0);
        const Algebra& pa = stc->component(1);
        Bits tpp = Bits{1} << rc.atom_index("TPP");
        Bits le = (Bits{1} << pa.atom_index("<")) | (Bits{1} << pa.atom_index("="));
        Bits lt = Bits{1} << pa.atom_index("<");
        Bits gt = Bits{1} << pa.atom_index(">");
        MultiRelation a = projection_closure(stc->make({tpp, le}));
        item("projection closure: (TPP, {<,=}) -> (TPP, {<})",
             a.parts == std::vector<Bits>({tpp, lt}));
        MultiRelation b = projection_closure(stc->make({tpp, gt}));
        item("projection closure: (TPP, {>}) -> empty", b.has_empty_part());
        std::ifstream in(dir + "/networks/tpc_sequence.qcn");
        Network n = parse_network(
            in, [&](const std::string& m) { return cat.multi_algebra(m); });
        Network c = algebraic_closure(n);
        item("sequence formalism: contradictory order chain closes to empty",
             is_trivially_inconsistent(c));
    }

    {
        std::ifstream in(dir + "/networks/stc_closed_unsat.qcn");
        Network n = parse_network(
            in, [&](const std::string& m) { return cat.multi_algebra(m); });
        bool closed = is_algebraically_closed(n) && !is_trivially_inconsistent(n);
        OracleResult r = brute_force_sat(n);
        item("closed size-topology network is unsatisfiable",
             closed && r.decided && !r.sat);
        Network n2 = n;
        int y = n.variable_index("y"), z = n.variable_index("z");
        MultiRelation e = n.edge(y, z);
        e.parts[0] |= Bits{1} << n.multi_algebra().component(0).atom_index("DC");
        n2.set_edge(y, z, e);
        OracleResult r2 = brute_force_sat(n2);
        item("adding DC to one topological part restores satisfiability",
             is_algebraically_consistent(n2) && r2.decided && r2.sat);
    }

    {
        std::ifstream in(dir + "/networks/pa_closure_vs_minimal.qcn");
        Network n = parse_network(
            in, [&](const std::string& m) { return cat.multi_algebra(m); });
        std::ifstream in2(dir + "/networks/pa_minimal.qcn");
        Network want = parse_network(
            in2, [&](const std::string& m) { return cat.multi_algebra(m); });
        Network c = algebraic_closure(n);
        Network m = minimal_network(n);
        item("point-order network: minimal network matches the reference",
             m == want);
        item("point-order network: closure strictly contains the minimal network",
             refines(m, c) && !(c == m));
    }

    {
        auto weak = cat.multi_algebra("STC|full:2:1");
        TractabilityCertificate cert = certify_slicing(
            cat, cat.subclass("RCC8s_x_PAs"), weak.get(), jobs);
        item("slicing certificate: RCC8s_x_PAs under STC|full:2:1",
             cert.granted);
        for (const char* sc : {"H8_x_PA", "Q8_x_PA", "C8_x_PA"}) {
            const Subclass& s = cat.subclass(sc);
            std::string hn = std::string("h_") +
                             std::string(sc).substr(0, std::string(sc).find('_'));
            MultiRefinement h = cat.multi_refinement(hn + ",h_max", s.ma);
            TractabilityCertificate rc = certify_refinement(
                cat, s, h, cat.subclass("RCC8s_x_PAs"), cert, jobs);
            item(std::string("refinement certificate: ") + sc +
                     " -> RCC8s_x_PAs via " + hn + ",h_max",
                 rc.granted);
        }
        TractabilityCertificate refusal =
            certify_slicing(cat, cat.subclass("H8_x_PA"), nullptr, jobs);
        item("slicing refusal: H8_x_PA is not dissociable on its own",
             !refusal.granted);
    }

    {
        MinimalityTrialResult pa =
            falsify_minimality(cat.subclass("PA_s"), 4, 50, 1);
        MinimalityTrialResult rc =
            falsify_minimality(cat.subclass("RCC8_s"), 4, 50, 1);
        item("minimality sampling: PA_s closure minimal (50 trials)",
             !pa.counterexample.has_value());
        item("minimality sampling: RCC8_s closure minimal (50 trials)",
             !rc.counterexample.has_value());
        std::ifstream in(dir + "/networks/pa_closure_vs_minimal.qcn");
        Network n = parse_network(
            in, [&](const std::string& m) { return cat.multi_algebra(m); });
        item("minimality sampling: full point algebra has a counterexample",
             !closure_is_minimal(n));
    }

    std::cout << (failures == 0 ? "suite: all items pass\n"
                                : "suite: " + std::to_string(failures) +
                                      " item(s) FAILED\n");
    return failures == 0 ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qualitative constraint reasoning over multi-algebras"};
    app.require_subcommand(1);

    int jobs = default_jobs();
    bool force = false;
    app.add_option("--jobs", jobs, "worker threads for exhaustive checks");
    app.add_flag("--force", force, "lift enumeration guards / soundness gates");

    // catalog
    auto* catalog_cmd = app.add_subcommand("catalog", "list or show catalog entries");
    catalog_cmd->require_subcommand(1);
    auto* cat_list = catalog_cmd->add_subcommand("list", "list all entries");
    std::string show_name;
    auto* cat_show = catalog_cmd->add_subcommand("show", "show one entry");
    cat_show->add_option("name", show_name)->required();

    // axioms
    std::string axioms_name;
    auto* axioms_cmd = app.add_subcommand("axioms", "check the relation-algebra axioms");
    axioms_cmd->add_option("algebra", axioms_name)->required();

    // closure
    std::string closure_file;
    auto* closure_cmd = app.add_subcommand("closure", "print the algebraic closure of a network");
    closure_cmd->add_option("file", closure_file)->required();

    // sat
    std::string sat_file, sat_method = "backtrack", sat_subclass, sat_weaken;
    auto* sat_cmd = app.add_subcommand("sat", "decide satisfiability of a network");
    sat_cmd->add_option("file", sat_file)->required();
    sat_cmd->add_option("--method", sat_method, "closure|backtrack|bruteforce");
    sat_cmd->add_option("--subclass", sat_subclass,
                        "certified subclass justifying the closure method");
    sat_cmd->add_option("--weaken", sat_weaken,
                        "tree weakening used for certification");

    // scenarios
    std::string scen_file;
    std::size_t scen_limit = 0;
    auto* scen_cmd = app.add_subcommand("scenarios", "enumerate algebraically closed scenarios");
    scen_cmd->add_option("file", scen_file)->required();
    scen_cmd->add_option("--limit", scen_limit, "stop after this many (0 = all)");

    // analyze
    std::string an_subclass, an_property, an_weaken, an_refinement;
    int an_slice = 1;
    std::vector<int> an_pair;
    auto* an_cmd = app.add_subcommand("analyze", "exhaustively check one subclass property");
    an_cmd->add_option("--subclass", an_subclass)->required();
    an_cmd->add_option("--property", an_property)->required();
    an_cmd->add_option("--weaken", an_weaken, "multi-algebra override (weakening)");
    an_cmd->add_option("--refinement", an_refinement,
                       "comma-separated component refinements, e.g. h_H8,h_max");
    an_cmd->add_option("--slice", an_slice, "1-based slice index");
    an_cmd->add_option("--pair", an_pair, "two 1-based component indices")
        ->expected(2);

    // certify
    auto* cert_cmd = app.add_subcommand("certify", "assemble a tractability certificate");
    cert_cmd->require_subcommand(1);
    std::string cs_subclass, cs_weaken;
    auto* cert_slicing = cert_cmd->add_subcommand("slicing", "slicing route");
    cert_slicing->add_option("--subclass", cs_subclass)->required();
    cert_slicing->add_option("--weaken", cs_weaken);
    std::string cr_subclass, cr_target, cr_refinement, cr_weaken;
    auto* cert_refine = cert_cmd->add_subcommand("refinement", "refinement route");
    cert_refine->add_option("--subclass", cr_subclass)->required();
    cert_refine->add_option("--target", cr_target)->required();
    cert_refine->add_option("--refinement", cr_refinement)->required();
    cert_refine->add_option("--weaken", cr_weaken,
                            "tree weakening for the target's certificate");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "independent reference implementations");
    oracle_cmd->require_subcommand(1);
    std::string os_file;
    bool os_prune = false;
    std::uint64_t os_max = 0;
    auto* oracle_sat = oracle_cmd->add_subcommand("sat", "pure exhaustive satisfiability");
    oracle_sat->add_option("file", os_file)->required();
    oracle_sat->add_flag("--prune", os_prune, "enable triangle pruning");
    oracle_sat->add_option("--max-scenarios", os_max, "abort bound (0 = none)");
    std::string om_file;
    auto* oracle_min = oracle_cmd->add_subcommand("minimal", "scenario-enumeration minimal network");
    oracle_min->add_option("file", om_file)->required();
    std::string of_subclass;
    std::uint64_t of_trials = 100, of_seed = 0;
    int of_vars = 4;
    auto* oracle_fals = oracle_cmd->add_subcommand(
        "falsify-minimality", "randomized search for closure != minimal");
    oracle_fals->add_option("--subclass", of_subclass)->required();
    oracle_fals->add_option("--trials", of_trials);
    oracle_fals->add_option("--vars", of_vars);
    oracle_fals->add_option("--seed", of_seed);

    // suite
    auto* suite_cmd = app.add_subcommand(
        "suite", "run every bundled reproduction item and report pass/fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitRefused;
    }

    try {
        Catalog cat = Catalog::load();
        if (cat_list->parsed()) return cmd_catalog_list(cat);
        if (cat_show->parsed()) return cmd_catalog_show(cat, show_name);
        if (axioms_cmd->parsed()) return cmd_axioms(cat, axioms_name);
        if (closure_cmd->parsed()) return cmd_closure(cat, closure_file);
        if (sat_cmd->parsed())
            return cmd_sat(cat, sat_file, sat_method, sat_subclass, sat_weaken,
                           jobs, force);
        if (scen_cmd->parsed()) return cmd_scenarios(cat, scen_file, scen_limit);
        if (an_cmd->parsed())
            return cmd_analyze(cat, an_subclass, an_property, an_weaken,
                               an_refinement, an_slice, an_pair, jobs, force);
        if (cert_slicing->parsed())
            return cmd_certify_slicing(cat, cs_subclass, cs_weaken, jobs);
        if (cert_refine->parsed())
            return cmd_certify_refinement(cat, cr_subclass, cr_target,
                                          cr_refinement, cr_weaken, jobs);
        if (oracle_sat->parsed()) return cmd_oracle_sat(cat, os_file, os_prune, os_max);
        if (oracle_min->parsed()) return cmd_oracle_minimal(cat, om_file);
        if (oracle_fals->parsed())
            return cmd_oracle_falsify(cat, of_subclass, of_trials, of_vars,
                                      of_seed);
        if (suite_cmd->parsed()) return cmd_suite(cat, jobs);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRefused;
    }
    return kExitRefused;
}
