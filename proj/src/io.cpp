#include "qcr/io.hpp"

#include <istream>
#include <map>
#include <sstream>

namespace qcr {

namespace {

/// Reads non-blank, non-comment lines.
std::vector<std::string> significant_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(begin, end - begin + 1));
    }
    return out;
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

/// Splits a `{a,b,c}` set literal (whitespace inside tolerated after
/// tokenization has been undone by joining); `{}` is the empty set.
std::vector<std::string> set_atoms(const std::string& literal) {
    std::string s = literal;
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw parse_error("expected a {..} set literal, got '" + literal + "'");
    s = s.substr(1, s.size() - 2);
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

/// Joins tokens from `from` to the end (set literals may contain spaces).
std::string join_from(const std::vector<std::string>& tok, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < tok.size(); ++i) out += tok[i];
    return out;
}

Bits parse_relation_bits(const Algebra& alg, const std::string& literal) {
    if (literal == "*") return alg.universal_bits();
    Bits b = 0;
    for (const auto& a : set_atoms(literal)) b |= Bits{1} << alg.atom_index(a);
    return b;
}

}  // namespace

std::shared_ptr<const Algebra> parse_algebra(std::istream& in) {
    auto lines = significant_lines(in);
    std::string name, identity;
    std::vector<std::string> atoms;
    std::map<std::string, std::string> conv;
    std::map<std::pair<std::string, std::string>, std::string> comp;
    for (const auto& line : lines) {
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "algebra" && tok.size() == 2) {
            name = tok[1];
        } else if (tok[0] == "atoms") {
            atoms.assign(tok.begin() + 1, tok.end());
        } else if (tok[0] == "identity" && tok.size() == 2) {
            identity = tok[1];
        } else if (tok[0] == "converse" && tok.size() == 4 && tok[2] == "->") {
            conv[tok[1]] = tok[3];
        } else if (tok[0] == "compose" && tok.size() >= 5 && tok[3] == "->") {
            comp[{tok[1], tok[2]}] = join_from(tok, 4);
        } else {
            throw parse_error("algebra file: cannot parse line '" + line + "'");
        }
    }
    if (name.empty()) throw parse_error("algebra file: missing 'algebra <name>'");
    if (atoms.empty()) throw parse_error("algebra '" + name + "': missing atoms");
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        index[atoms[i]] = static_cast<int>(i);
    std::vector<int> conv_table(atoms.size(), -1);
    for (const auto& [a, b] : conv) {
        if (!index.count(a) || !index.count(b))
            throw parse_error("algebra '" + name + "': converse uses unknown atom");
        conv_table[index[a]] = index[b];
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (conv_table[i] < 0)
            throw parse_error("algebra '" + name + "': no converse for atom '" +
                              atoms[i] + "'");
    const int n = static_cast<int>(atoms.size());
    std::vector<std::vector<Bits>> comp_table(n, std::vector<Bits>(n, 0));
    int entries = 0;
    for (const auto& [ab, lit] : comp) {
        if (!index.count(ab.first) || !index.count(ab.second))
            throw parse_error("algebra '" + name + "': compose uses unknown atom");
        Bits b = 0;
        if (lit == "*") {
            b = (n == 64) ? ~Bits{0} : ((Bits{1} << n) - 1);
        } else {
            for (const auto& a : set_atoms(lit)) {
                if (!index.count(a))
                    throw parse_error("algebra '" + name +
                                      "': compose result uses unknown atom '" + a + "'");
                b |= Bits{1} << index[a];
            }
        }
        comp_table[index[ab.first]][index[ab.second]] = b;
        ++entries;
    }
    if (entries != n * n)
        throw parse_error("algebra '" + name + "': composition table is not total (" +
                          std::to_string(entries) + " of " + std::to_string(n * n) +
                          " entries)");
    return std::make_shared<Algebra>(name, atoms, identity, std::move(conv_table),
                                     std::move(comp_table));
}

std::shared_ptr<const MultiAlgebra> parse_multi_algebra(
    std::istream& in, const AlgebraResolver& algebras) {
    auto lines = significant_lines(in);
    std::string name;
    std::vector<std::shared_ptr<const Algebra>> comps;
    // collected atomwise images, per ordered pair
    std::map<std::pair<int, int>, std::vector<Bits>> tables;
    for (const auto& line : lines) {
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "multialgebra" && tok.size() == 2) {
            name = tok[1];
        } else if (tok[0] == "components") {
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto a = algebras(tok[i]);
                if (!a) throw parse_error("unknown component algebra '" + tok[i] + "'");
                comps.push_back(std::move(a));
            }
        } else if (tok[0] == "projection" && tok.size() >= 6 && tok[4] == "->") {
            if (comps.empty())
                throw parse_error("multi-algebra file: 'components' must come "
                                  "before projections");
            if (tok[2].empty() || tok[2].back() != ':')
                throw parse_error("projection line: expected 'projection i j: ...'");
            int i = std::stoi(tok[1]) - 1;
            int j = std::stoi(tok[2].substr(0, tok[2].size() - 1)) - 1;
            const int m = static_cast<int>(comps.size());
            if (i < 0 || j < 0 || i >= m || j >= m || i == j)
                throw parse_error("projection line: bad component indices");
            auto& table = tables[{i, j}];
            if (table.empty()) table.assign(comps[i]->atom_count(), ~Bits{0});
            std::string target = join_from(tok, 5);
            Bits image;
            if (target == "FULL")
                image = comps[j]->universal_bits();
            else
                image = parse_relation_bits(*comps[j], target);
            if (tok[3] == "ALL") {
                for (auto& b : table) b = image;
            } else {
                table[comps[i]->atom_index(tok[3])] = image;
            }
        } else {
            throw parse_error("multi-algebra file: cannot parse line '" + line + "'");
        }
    }
    if (name.empty())
        throw parse_error("multi-algebra file: missing 'multialgebra <name>'");
    const int m = static_cast<int>(comps.size());
    std::map<std::pair<int, int>, Projection> projections;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            auto it = tables.find({i, j});
            if (it == tables.end())
                throw parse_error("multi-algebra '" + name + "': missing projection " +
                                  std::to_string(i + 1) + " -> " + std::to_string(j + 1));
            for (int a = 0; a < comps[i]->atom_count(); ++a)
                if (it->second[a] == ~Bits{0})
                    throw parse_error("multi-algebra '" + name + "': projection " +
                                      std::to_string(i + 1) + " -> " +
                                      std::to_string(j + 1) + " undefined on atom '" +
                                      comps[i]->atom_names()[a] + "'");
            projections.emplace(std::make_pair(i, j),
                                Projection(comps[i].get(), comps[j].get(),
                                           it->second));
        }
    return std::make_shared<MultiAlgebra>(name, std::move(comps),
                                          std::move(projections));
}

SliceTable parse_slice_table(std::istream& in, const AlgebraResolver& algebras) {
    auto lines = significant_lines(in);
    SliceTable out;
    std::shared_ptr<const Algebra> alg;
    for (const auto& line : lines) {
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "subclass" && tok.size() == 4 && tok[2] == "of") {
            out.name = tok[1];
            out.algebra_name = tok[3];
            alg = algebras(tok[3]);
            if (!alg) throw parse_error("unknown algebra '" + tok[3] + "'");
        } else if (tok[0] == "relation" && tok.size() >= 2) {
            if (!alg)
                throw parse_error("subclass file: 'subclass <name> of <algebra>' "
                                  "must come first");
            out.relations.push_back(parse_relation_bits(*alg, join_from(tok, 1)));
        } else {
            throw parse_error("subclass file: cannot parse line '" + line + "'");
        }
    }
    if (out.name.empty())
        throw parse_error("subclass file: missing 'subclass <name> of <algebra>'");
    return out;
}

Network parse_network(std::istream& in, const MultiAlgebraResolver& mas) {
    auto lines = significant_lines(in);
    std::shared_ptr<const MultiAlgebra> ma;
    std::vector<std::string> vars;
    std::optional<Network> net;
    for (const auto& line : lines) {
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (tok[0] == "network" && tok.size() == 3 && tok[1] == "over") {
            ma = mas(tok[2]);
            if (!ma) throw parse_error("unknown multi-algebra '" + tok[2] + "'");
        } else if (tok[0] == "vars") {
            if (!ma) throw parse_error("network file: 'network over <name>' "
                                       "must come first");
            vars.assign(tok.begin() + 1, tok.end());
            net.emplace(ma, vars);
        } else if (tok.size() >= 4 && tok[2] == ":") {
            if (!net) throw parse_error("network file: 'vars' must come before edges");
            int x, y;
            try {
                x = net->variable_index(tok[0]);
                y = net->variable_index(tok[1]);
            } catch (const std::exception& e) {
                throw parse_error(std::string("network file: ") + e.what());
            }
            if (x == y) throw parse_error("network file: reflexive edge on '" +
                                          tok[0] + "'");
            // split the remainder on ';' into per-component literals
            std::string rest = join_from(tok, 3);
            std::vector<std::string> parts_lit;
            std::string cur;
            for (char ch : rest) {
                if (ch == ';') {
                    parts_lit.push_back(cur);
                    cur.clear();
                } else {
                    cur += ch;
                }
            }
            parts_lit.push_back(cur);
            if (static_cast<int>(parts_lit.size()) != ma->arity())
                throw parse_error("edge '" + tok[0] + " " + tok[1] + "': expected " +
                                  std::to_string(ma->arity()) + " ';'-separated parts");
            std::vector<Bits> parts(ma->arity());
            for (int i = 0; i < ma->arity(); ++i) {
                try {
                    parts[i] = parse_relation_bits(ma->component(i), parts_lit[i]);
                } catch (const parse_error&) {
                    throw;
                } catch (const std::exception& e) {
                    throw parse_error("edge '" + tok[0] + " " + tok[1] + "': " +
                                      e.what());
                }
            }
            net->tighten_edge(x, y, ma->make(std::move(parts)));
        } else {
            throw parse_error("network file: cannot parse line '" + line + "'");
        }
    }
    if (!net) throw parse_error("network file: missing 'vars' line");
    return std::move(*net);
}

std::string write_network(const Network& n) {
    std::ostringstream os;
    os << "network over " << n.multi_algebra().name() << "\n";
    os << "vars";
    for (const auto& v : n.variables()) os << ' ' << v;
    os << "\n";
    const MultiAlgebra& ma = n.multi_algebra();
    for (int x = 0; x < n.size(); ++x)
        for (int y = x + 1; y < n.size(); ++y) {
            const MultiRelation& r = n.edge(x, y);
            if (r == ma.universal()) continue;
            os << n.variables()[x] << ' ' << n.variables()[y] << " : ";
            for (int i = 0; i < ma.arity(); ++i) {
                if (i) os << " ; ";
                const Algebra& a = ma.component(i);
                if (r.parts[i] == a.universal_bits())
                    os << '*';
                else
                    os << a.to_string({&a, r.parts[i]});
            }
            os << "\n";
        }
    return os.str();
}

}  // namespace qcr
