/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/left_system.hh>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using std::map;
using std::nullopt;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace eppa
{
    namespace
    {
        auto is_identity_constant(const optional<string> & c) -> bool
        {
            return ! c || *c == "1";
        }

        auto inverse_name(const string & g) -> string
        {
            if (g == "1")
                return g;
            if (g.size() > 3 && g.substr(g.size() - 3) == "^-1")
                return g.substr(0, g.size() - 3);
            return g + "^-1";
        }

        auto fresh_name(const LeftSystem & sys, const string & base) -> string
        {
            for (int k = 1 ; ; ++k) {
                string candidate = base + "!" + std::to_string(k);
                if (! sys.find_variable(candidate))
                    return candidate;
            }
        }
    }

    auto LeftSystem::add_variable(const string & name) -> int
    {
        if (auto v = find_variable(name))
            return *v;
        variables.push_back(name);
        return int(variables.size()) - 1;
    }

    auto LeftSystem::find_variable(const string & name) const -> optional<int>
    {
        auto i = std::find(variables.begin(), variables.end(), name);
        if (i == variables.end())
            return nullopt;
        return int(i - variables.begin());
    }

    auto LeftSystem::slots() const -> vector<string>
    {
        vector<string> result;
        for (auto & eq : equations)
            if (std::find(result.begin(), result.end(), eq.slot) == result.end())
                result.push_back(eq.slot);
        return result;
    }

    auto LeftSystem::constants() const -> vector<string>
    {
        vector<string> result;
        for (auto & eq : equations)
            if (eq.constant && std::find(result.begin(), result.end(), *eq.constant) == result.end())
                result.push_back(*eq.constant);
        return result;
    }

    auto to_string(const LeftSystem & sys, const Equation & eq) -> string
    {
        string result = sys.variables.at(eq.lhs) + " " + eq.slot + " = ";
        if (eq.var)
            result += sys.variables.at(*eq.var) + " ";
        if (eq.constant)
            result += *eq.constant + " ";
        else if (! eq.var)
            result += "1 ";
        return result + eq.slot;
    }

    auto FiniteContext::constant(const string & name) const -> Perm
    {
        if (name == "1")
            return Perm::identity(group.degree());
        if (auto c = constants.find(name) ; c != constants.end())
            return c->second;
        if (name.size() > 3 && name.substr(name.size() - 3) == "^-1")
            return constant(name.substr(0, name.size() - 3)).inverse();
        throw InputError("unknown constant '" + name + "'");
    }

    auto FiniteContext::subgroup(const string & slot) const -> PermGroup
    {
        if (auto s = subgroups.find(slot) ; s != subgroups.end())
            return s->second;
        if (slot == "H0")
            return PermGroup{group.degree(), {}, {Perm::identity(group.degree())}};
        throw InputError("unknown subgroup slot '" + slot + "'");
    }

    auto materialize(const CosetSpec & spec, long cap) -> FiniteContext
    {
        if (! spec.images)
            throw InputError("cannot materialize a coset spec over a free group");
        if (spec.images->size() != spec.generators.size())
            throw InputError("coset spec has " + std::to_string(spec.images->size()) + " images for "
                    + std::to_string(spec.generators.size()) + " generators");

        FiniteQuotient q{spec.degree, spec.generators, *spec.images};
        FiniteContext result;
        result.group = close_group(spec.degree, *spec.images, cap);
        for (auto & [name, words] : spec.subgroups)
            result.subgroups.emplace(name, subgroup_image(words, q, cap));
        for (auto & [name, word] : spec.constants)
            result.constants.emplace(name, quotient_image(word, q));
        return result;
    }

    auto induce(const CosetSpec & spec, const FiniteQuotient & q) -> CosetSpec
    {
        CosetSpec result = spec;
        vector<Perm> images;
        for (auto & g : spec.generators) {
            auto i = std::find(q.names.begin(), q.names.end(), g);
            if (i == q.names.end())
                throw InputError("quotient has no image for generator '" + g + "'");
            images.push_back(q.images.at(i - q.names.begin()));
        }
        result.images = images;
        result.degree = q.degree;
        return result;
    }

    namespace
    {
        struct CompiledEquation
        {
            int lhs;
            optional<int> var;
            Perm g;
            Perm g_inverse;
            PermGroup h;
        };

        auto compile(const FiniteContext & ctx, const LeftSystem & sys) -> vector<CompiledEquation>
        {
            vector<CompiledEquation> result;
            for (auto & eq : sys.equations) {
                if (eq.lhs < 0 || eq.lhs >= int(sys.variables.size()) || (eq.var && (*eq.var < 0 || *eq.var >= int(sys.variables.size()))))
                    throw InputError("equation refers to an unknown variable");
                auto g = ctx.constant(eq.constant.value_or("1"));
                result.push_back(CompiledEquation{eq.lhs, eq.var, g, g.inverse(), ctx.subgroup(eq.slot)});
            }
            return result;
        }

        // u H = v g H, or u H = g H with no var
        auto holds(const CompiledEquation & eq, const Perm & u, const Perm * v) -> bool
        {
            if (! v)
                return eq.h.contains(eq.g_inverse * u);
            return eq.h.contains(eq.g_inverse * v->inverse() * u);
        }
    }

    auto solve_left_system(const FiniteContext & ctx, const LeftSystem & sys) -> optional<vector<Perm>>
    {
        auto eqs = compile(ctx, sys);
        auto & elements = ctx.group.elements();
        int m = sys.variables.size(), size = elements.size();

        vector<vector<char>> domains(m, vector<char>(size, 1));
        for (auto & eq : eqs) {
            if (eq.var && *eq.var != eq.lhs)
                continue;
            for (int e = 0 ; e < size ; ++e) {
                auto & u = elements[e];
                if (domains[eq.lhs][e] && ! holds(eq, u, eq.var ? &u : nullptr))
                    domains[eq.lhs][e] = 0;
            }
        }

        // binary constraints with their support tables, both directions
        struct Arc
        {
            int x, y;
            vector<vector<char>> ok;
        };
        vector<Arc> arcs;
        vector<vector<int>> watching(m);
        for (auto & eq : eqs) {
            if (! eq.var || *eq.var == eq.lhs)
                continue;
            Arc fwd{eq.lhs, *eq.var, vector<vector<char>>(size, vector<char>(size, 0))};
            Arc back{*eq.var, eq.lhs, vector<vector<char>>(size, vector<char>(size, 0))};
            for (int e = 0 ; e < size ; ++e)
                for (int f = 0 ; f < size ; ++f)
                    if (holds(eq, elements[e], &elements[f]))
                        fwd.ok[e][f] = back.ok[f][e] = 1;
            for (auto * a : {&fwd, &back}) {
                watching[a->y].push_back(arcs.size());
                arcs.push_back(std::move(*a));
            }
        }

        // watching[y]: arcs to revise when the domain of y shrinks
        auto revise_all = [&] (vector<vector<char>> & doms, vector<int> queue) -> bool {
            vector<char> queued(arcs.size(), 0);
            for (int a : queue)
                queued[a] = 1;
            while (! queue.empty()) {
                int a = queue.back();
                queue.pop_back();
                queued[a] = 0;
                auto & arc = arcs[a];
                bool changed = false, any = false;
                for (int e = 0 ; e < size ; ++e) {
                    if (! doms[arc.x][e])
                        continue;
                    bool supported = false;
                    for (int f = 0 ; f < size && ! supported ; ++f)
                        supported = doms[arc.y][f] && arc.ok[e][f];
                    if (supported)
                        any = true;
                    else
                        doms[arc.x][e] = 0, changed = true;
                }
                if (! any)
                    return false;
                if (changed)
                    for (int b : watching[arc.x])
                        if (! queued[b])
                            queued[b] = 1, queue.push_back(b);
            }
            return true;
        };

        vector<int> values(m, -1);
        std::function<bool (vector<vector<char>> &)> assign = [&] (vector<vector<char>> & doms) -> bool {
            // variables in order, so the first solution is the least
            int x = std::find(values.begin(), values.end(), -1) - values.begin();
            if (x == m)
                return true;
            for (int e = 0 ; e < size ; ++e) {
                if (! doms[x][e])
                    continue;
                auto next = doms;
                std::fill(next[x].begin(), next[x].end(), 0);
                next[x][e] = 1;
                values[x] = e;
                if (revise_all(next, watching[x]) && assign(next))
                    return true;
                values[x] = -1;
            }
            return false;
        };

        {
            vector<int> all(arcs.size());
            for (unsigned a = 0 ; a < arcs.size() ; ++a)
                all[a] = a;
            if (! revise_all(domains, all))
                return nullopt;
        }

        if (! assign(domains))
            return nullopt;
        vector<Perm> result;
        for (int v : values)
            result.push_back(elements[v]);
        return result;
    }

    auto satisfies(const FiniteContext & ctx, const LeftSystem & sys, const vector<Perm> & values) -> bool
    {
        if (values.size() != sys.variables.size())
            return false;
        for (auto & eq : compile(ctx, sys)) {
            if (! ctx.group.contains(values[eq.lhs]))
                return false;
            if (! holds(eq, values[eq.lhs], eq.var ? &values[*eq.var] : nullptr))
                return false;
        }
        return true;
    }

    auto encode_nonmembership(const string & gamma, const string & eta, const string & slot) -> LeftSystem
    {
        LeftSystem result;
        int x = result.add_variable("x");
        result.equations.push_back(Equation{x, slot, nullopt, gamma});
        result.equations.push_back(Equation{x, slot, nullopt, eta});
        return result;
    }

    auto encode_no_translate(const vector<string> & gammas, const vector<string> & etas, const vector<string> & slots) -> LeftSystem
    {
        if (gammas.size() != etas.size() || gammas.size() != slots.size())
            throw InputError("encode_no_translate needs equally many cosets on both sides");
        LeftSystem result;
        int x = result.add_variable("x");
        for (unsigned j = 0 ; j < gammas.size() ; ++j) {
            int xj = result.add_variable("x" + std::to_string(j + 1));
            result.equations.push_back(Equation{xj, slots[j], nullopt, gammas[j]});
            result.equations.push_back(Equation{xj, slots[j], x, etas[j]});
        }
        return result;
    }

    auto normalize_system(const LeftSystem & sys, NormalStage stage) -> LeftSystem
    {
        LeftSystem star = sys;
        bool needs_y = std::any_of(sys.equations.begin(), sys.equations.end(), [] (const Equation & e) { return ! e.var; });
        if (needs_y) {
            int y = star.add_variable(fresh_name(sys, "y"));
            for (auto & eq : star.equations)
                if (! eq.var)
                    eq.var = y;
        }
        if (stage == NormalStage::star)
            return star;

        LeftSystem result;
        result.variables = star.variables;
        for (auto & eq : star.equations) {
            if (is_identity_constant(eq.constant)) {
                result.equations.push_back(Equation{eq.lhs, eq.slot, eq.var, nullopt});
                continue;
            }
            if (eq.slot == "H0") {
                result.equations.push_back(eq);
                continue;
            }
            int fresh = result.add_variable(fresh_name(result, result.variables[eq.lhs]));
            result.equations.push_back(Equation{eq.lhs, eq.slot, fresh, nullopt});
            result.equations.push_back(Equation{fresh, "H0", eq.var, eq.constant});
        }
        return result;
    }

    auto is_prime_normal(const LeftSystem & sys) -> bool
    {
        for (auto & eq : sys.equations) {
            if (! eq.var)
                return false;
            if (! is_identity_constant(eq.constant) && eq.slot != "H0")
                return false;
        }
        return true;
    }

    auto system_to_gadget(const LeftSystem & sys) -> GadgetBundle
    {
        if (! is_prime_normal(sys))
            throw InputError("gadget construction needs a prime-normal system");

        GadgetBundle result;
        result.slots.push_back("H0");
        for (auto & s : sys.slots())
            if (s != "H0")
                result.slots.push_back(s);
        for (auto & eq : sys.equations)
            if (! is_identity_constant(eq.constant))
                for (auto & g : {*eq.constant, inverse_name(*eq.constant)})
                    if (std::find(result.constants.begin(), result.constants.end(), g) == result.constants.end())
                        result.constants.push_back(g);

        int n = int(result.slots.size()) - 1;
        auto slot_index = [&] (const string & s) {
            return int(std::find(result.slots.begin(), result.slots.end(), s) - result.slots.begin());
        };

        vector<string> names;
        vector<vector<Element>> const_elements;
        for (auto & x : sys.variables) {
            result.coset_elements.emplace_back();
            for (auto & s : result.slots) {
                result.coset_elements.back().push_back(names.size());
                names.push_back(x + "." + s);
            }
            const_elements.emplace_back();
            for (auto & g : result.constants) {
                const_elements.back().push_back(names.size());
                names.push_back(x + "." + g + ".H0");
            }
        }
        auto const_index = [&] (const string & g) {
            return int(std::find(result.constants.begin(), result.constants.end(), g) - result.constants.begin());
        };

        // R_t tuples per variable, in equation order
        vector<std::pair<vector<int>, Tuple>> formal;
        for (int x = 0 ; x < int(sys.variables.size()) ; ++x) {
            vector<int> t;
            Tuple tuple;
            for (int i = 0 ; i <= n ; ++i) {
                t.push_back(i);
                tuple.push_back(result.coset_elements[x][i]);
            }
            for (auto & eq : sys.equations) {
                int i = slot_index(eq.slot);
                bool plain = is_identity_constant(eq.constant);
                if (eq.lhs == x) {
                    t.push_back(i);
                    tuple.push_back(plain ? result.coset_elements[*eq.var][i] : const_elements[*eq.var][const_index(*eq.constant)]);
                }
                if (*eq.var == x && ! (plain && eq.lhs == x)) {
                    t.push_back(i);
                    tuple.push_back(plain ? result.coset_elements[eq.lhs][i] : const_elements[eq.lhs][const_index(inverse_name(*eq.constant))]);
                }
            }
            if (int(t.size()) > 2 * int(sys.equations.size()) + n + 1)
                throw VerificationFailure("formal relation longer than the gadget bound");
            formal.emplace_back(t, tuple);
        }

        vector<Symbol> symbols;
        for (int i = 0 ; i <= n ; ++i)
            symbols.push_back(Symbol{"S" + std::to_string(i), 1});
        symbols.push_back(Symbol{"U", 2});
        for (auto & g : result.constants)
            symbols.push_back(Symbol{"B[" + g + "]", 2});
        vector<vector<int>> kinds;
        for (auto & [t, _] : formal)
            if (std::find(kinds.begin(), kinds.end(), t) == kinds.end())
                kinds.push_back(t);
        std::sort(kinds.begin(), kinds.end());
        auto kind_name = [] (const vector<int> & t) {
            string s = "R[";
            for (unsigned j = 0 ; j < t.size() ; ++j)
                s += (j ? "," : "") + std::to_string(t[j]);
            return s + "]";
        };
        for (auto & t : kinds)
            symbols.push_back(Symbol{kind_name(t), int(t.size())});
        // name order, as when read back from a file
        std::sort(symbols.begin(), symbols.end(), [] (const Symbol & a, const Symbol & b) { return a.name < b.name; });
        result.language = Signature{symbols};
        auto sym = [&] (const string & name) { return *result.language.find(name); };

        vector<set<Tuple>> tables(symbols.size());
        for (int x = 0 ; x < int(sys.variables.size()) ; ++x) {
            for (int i = 0 ; i <= n ; ++i)
                tables[sym("S" + std::to_string(i))].insert(Tuple{result.coset_elements[x][i]});
            for (unsigned g = 0 ; g < result.constants.size() ; ++g) {
                tables[sym("S0")].insert(Tuple{const_elements[x][g]});
                tables[sym("B[" + result.constants[g] + "]")].insert(Tuple{result.coset_elements[x][0], const_elements[x][g]});
            }
        }
        for (int a = 0 ; a < int(names.size()) ; ++a)
            for (int b = 0 ; b < int(names.size()) ; ++b)
                tables[sym("U")].insert(Tuple{a, b});
        for (auto & [t, tuple] : formal)
            tables[sym(kind_name(t))].insert(tuple);

        result.t = Structure{result.language, names, tables};
        if (! is_gaifman_clique(result.t))
            throw VerificationFailure("gadget is not a Gaifman clique");

        result.d_description = "D: disjoint cosets G/H_i for slots";
        for (auto & s : result.slots)
            result.d_description += " " + s;
        result.d_description += "; S<i> = cosets of slot i; U = D x D; B[g] = {(hH0, hgH0)}; "
            "R[t] = {(g_1 H_t1, ..., g_m H_tm) : the cosets meet}";
        return result;
    }

    auto gadget_target(const GadgetBundle & g, const FiniteContext & ctx) -> Structure
    {
        auto & elements = ctx.group.elements();
        int size = elements.size(), n = int(g.slots.size()) - 1;

        // coset_of[i][e]: element id of elements[e] H_i
        vector<vector<int>> coset_of(n + 1, vector<int>(size, -1));
        vector<string> names;
        for (int i = 0 ; i <= n ; ++i) {
            auto h = ctx.subgroup(g.slots[i]);
            for (int e = 0 ; e < size ; ++e) {
                if (coset_of[i][e] != -1)
                    continue;
                int id = names.size();
                names.push_back(g.slots[i] + ":" + std::to_string(e));
                for (auto & k : h.elements())
                    coset_of[i][*ctx.group.index_of(elements[e] * k)] = id;
            }
        }

        auto & symbols = g.language.symbols();
        vector<set<Tuple>> tables(symbols.size());
        for (unsigned s = 0 ; s < symbols.size() ; ++s) {
            auto & name = symbols[s].name;
            if (name == "U") {
                for (int a = 0 ; a < int(names.size()) ; ++a)
                    for (int b = 0 ; b < int(names.size()) ; ++b)
                        tables[s].insert(Tuple{a, b});
            }
            else if (name[0] == 'S') {
                int i = std::stoi(name.substr(1));
                for (int e = 0 ; e < size ; ++e)
                    tables[s].insert(Tuple{coset_of[i][e]});
            }
            else if (name[0] == 'B') {
                auto k = ctx.constant(name.substr(2, name.size() - 3));
                for (int e = 0 ; e < size ; ++e)
                    tables[s].insert(Tuple{coset_of[0][e], coset_of[0][*ctx.group.index_of(elements[e] * k)]});
            }
            else {
                // R[i1,...,im]
                vector<int> t;
                string inner = name.substr(2, name.size() - 3);
                size_t start = 0;
                while (start <= inner.size()) {
                    auto comma = inner.find(',', start);
                    if (comma == string::npos)
                        comma = inner.size();
                    t.push_back(std::stoi(inner.substr(start, comma - start)));
                    start = comma + 1;
                }
                for (int e = 0 ; e < size ; ++e) {
                    Tuple tuple;
                    for (int i : t)
                        tuple.push_back(coset_of[i][e]);
                    tables[s].insert(tuple);
                }
            }
        }
        return Structure{g.language, names, tables};
    }

    auto hl_separate(const CosetSpec & spec, const LeftSystem & sys, int max_degree, long budget,
            optional<unsigned long> seed) -> SeparationResult
    {
        SeparationResult result;
        int k = spec.generators.size();

        auto test = [&] (int degree, const vector<Perm> & images) -> bool {
            ++result.tried;
            FiniteQuotient q{degree, spec.generators, images};
            try {
                auto ctx = materialize(induce(spec, q));
                if (! solve_left_system(ctx, sys)) {
                    result.quotient = q;
                    result.status = SearchStatus::found;
                    return true;
                }
            }
            catch (const CapExceeded &) {
            }
            return false;
        };

        for (int degree = 1 ; degree <= max_degree ; ++degree) {
            vector<Perm> perms;
            vector<int> line(degree);
            for (int i = 0 ; i < degree ; ++i)
                line[i] = i;
            do
                perms.emplace_back(line);
            while (std::next_permutation(line.begin(), line.end()));

            vector<int> odometer(k, 0);
            while (true) {
                if (result.tried >= budget) {
                    result.status = SearchStatus::budget;
                    return result;
                }
                if (seed && result.tried >= budget / 2)
                    break;
                vector<Perm> images;
                for (int j : odometer)
                    images.push_back(perms[j]);
                if (test(degree, images))
                    return result;
                int j = k - 1;
                while (j >= 0 && ++odometer[j] == int(perms.size()))
                    odometer[j--] = 0;
                if (j < 0)
                    break;
            }
            if (seed && result.tried >= budget / 2)
                break;
        }

        if (seed && result.tried >= budget / 2 && max_degree >= 1) {
            std::mt19937_64 rng{*seed};
            vector<int> line(max_degree);
            while (result.tried < budget) {
                vector<Perm> images;
                for (int j = 0 ; j < k ; ++j) {
                    for (int i = 0 ; i < max_degree ; ++i)
                        line[i] = i;
                    std::shuffle(line.begin(), line.end(), rng);
                    images.emplace_back(line);
                }
                if (test(max_degree, images))
                    return result;
            }
            result.status = SearchStatus::budget;
            return result;
        }

        result.status = SearchStatus::none;
        return result;
    }
}
