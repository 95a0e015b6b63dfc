/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/structure.hh>

#include <algorithm>
#include <set>

using std::map;
using std::nullopt;
using std::optional;
using std::pair;
using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace eppa
{
    Signature::Signature(vector<Symbol> symbols) :
        _symbols(std::move(symbols))
    {
        set<string> seen;
        for (auto & s : _symbols) {
            if (s.arity < 1)
                throw InputError("symbol '" + s.name + "' has arity " + to_string(s.arity) + " < 1");
            if (! seen.insert(s.name).second)
                throw InputError("duplicate symbol '" + s.name + "'");
        }
    }

    auto Signature::find(const string & name) const -> optional<int>
    {
        for (int i = 0 ; i < size() ; ++i)
            if (_symbols[i].name == name)
                return i;
        return nullopt;
    }

    auto Signature::max_arity() const -> int
    {
        int result = 0;
        for (auto & s : _symbols)
            result = std::max(result, s.arity);
        return result;
    }

    Structure::Structure(Signature signature, vector<string> names, vector<set<Tuple>> tables) :
        _signature(std::move(signature)),
        _names(std::move(names)),
        _tables(std::move(tables))
    {
        if (int(_tables.size()) != _signature.size())
            throw InputError("table count does not match signature");
        for (int e = 0 ; e < int(_names.size()) ; ++e)
            if (! _index.emplace(_names[e], e).second)
                throw InputError("duplicate element id '" + _names[e] + "'");
        for (int s = 0 ; s < _signature.size() ; ++s)
            for (auto & t : _tables[s]) {
                if (int(t.size()) != _signature[s].arity)
                    throw InputError("tuple of wrong arity for symbol '" + _signature[s].name + "'");
                for (auto e : t)
                    if (e < 0 || e >= int(_names.size()))
                        throw InputError("tuple entry out of range for symbol '" + _signature[s].name + "'");
            }
    }

    auto Structure::find(const string & name) const -> optional<Element>
    {
        auto i = _index.find(name);
        if (i == _index.end())
            return nullopt;
        return i->second;
    }

    auto Structure::at(const string & name) const -> Element
    {
        auto e = find(name);
        if (! e)
            throw InputError("unknown element id '" + name + "'");
        return *e;
    }

    auto Structure::tuple_count() const -> long
    {
        long result = 0;
        for (auto & t : _tables)
            result += long(t.size());
        return result;
    }

    auto Structure::named_table(int symbol) const -> set<vector<string>>
    {
        set<vector<string>> result;
        for (auto & t : _tables[symbol]) {
            vector<string> named;
            for (auto e : t)
                named.push_back(_names[e]);
            result.insert(std::move(named));
        }
        return result;
    }

    auto same_up_to_order(const Structure & a, const Structure & b) -> bool
    {
        if (a.signature() != b.signature() || a.size() != b.size())
            return false;
        for (auto & n : a.names())
            if (! b.find(n))
                return false;
        for (int s = 0 ; s < a.signature().size() ; ++s)
            if (a.named_table(s) != b.named_table(s))
                return false;
        return true;
    }

    StructureBuilder::StructureBuilder(Signature signature) :
        _signature(std::move(signature)),
        _tables(_signature.size())
    {
    }

    auto StructureBuilder::add_element(const string & name) -> Element
    {
        auto [i, inserted] = _index.emplace(name, int(_names.size()));
        if (inserted)
            _names.push_back(name);
        return i->second;
    }

    auto StructureBuilder::add_tuple(const string & symbol, const vector<string> & names) -> StructureBuilder &
    {
        auto s = _signature.find(symbol);
        if (! s)
            throw InputError("unknown symbol '" + symbol + "'");
        Tuple t;
        for (auto & n : names) {
            auto i = _index.find(n);
            if (i == _index.end())
                throw InputError("unknown element id '" + n + "'");
            t.push_back(i->second);
        }
        return add_tuple(*s, t);
    }

    auto StructureBuilder::add_tuple(int symbol, const Tuple & t) -> StructureBuilder &
    {
        if (int(t.size()) != _signature[symbol].arity)
            throw InputError("tuple of wrong arity for symbol '" + _signature[symbol].name + "'");
        _tables[symbol].insert(t);
        return *this;
    }

    auto StructureBuilder::build() const -> Structure
    {
        return Structure{_signature, _names, _tables};
    }

    auto validate_structure(const RawStructure & raw) -> ValidationReport
    {
        ValidationReport report;

        map<string, int> arity;
        for (auto & [name, a] : raw.signature) {
            if (a < 1)
                report.findings.push_back("symbol '" + name + "' has arity " + to_string(a) + " < 1");
            if (! arity.emplace(name, a).second)
                report.findings.push_back("duplicate symbol '" + name + "'");
        }

        set<string> ids;
        for (auto & d : raw.domain)
            if (! ids.insert(d).second)
                report.findings.push_back("duplicate element id '" + d + "'");

        for (auto & [name, tuples] : raw.relations) {
            auto a = arity.find(name);
            if (a == arity.end()) {
                report.findings.push_back("relation '" + name + "' is not in the signature");
                continue;
            }
            set<vector<string>> seen;
            for (auto & t : tuples) {
                string shown = "(";
                for (unsigned i = 0 ; i < t.size() ; ++i)
                    shown += (i ? "," : "") + t[i];
                shown += ")";
                if (int(t.size()) != a->second)
                    report.findings.push_back("arity mismatch in '" + name + "': " + shown + " has " + to_string(t.size())
                            + " entries, expected " + to_string(a->second));
                for (auto & e : t)
                    if (! ids.contains(e))
                        report.findings.push_back("unknown id '" + e + "' in '" + name + "' tuple " + shown);
                if (! seen.insert(t).second)
                    report.findings.push_back("duplicate tuple in '" + name + "': " + shown);
            }
        }

        if (report.valid()) {
            auto s = build_structure(raw);
            auto full = natural_factorization(s);
            auto unary = unary_factorization(s);
            if (full.classes != unary.classes)
                report.warnings.push_back("factorization by singleton partial isomorphisms (" + to_string(full.classes.size())
                        + " classes) differs from factorization by unary predicates (" + to_string(unary.classes.size())
                        + " classes); the former is used");
        }

        return report;
    }

    auto build_structure(const RawStructure & raw) -> Structure
    {
        vector<Symbol> symbols;
        for (auto & [name, a] : raw.signature)
            symbols.push_back(Symbol{name, a});
        std::sort(symbols.begin(), symbols.end(), [] (const Symbol & a, const Symbol & b) { return a.name < b.name; });

        StructureBuilder builder{Signature{symbols}};
        for (auto & d : raw.domain) {
            if (builder.has_element(d))
                throw InputError("duplicate element id '" + d + "'");
            builder.add_element(d);
        }
        for (auto & [name, tuples] : raw.relations)
            for (auto & t : tuples) {
                // duplicates are a validation finding, not silently merged
                builder.add_tuple(name, t);
            }
        auto s = builder.build();

        for (auto & [name, tuples] : raw.relations) {
            auto sym = s.signature().find(name);
            if (sym && long(s.table(*sym).size()) != long(tuples.size()))
                throw InputError("duplicate tuple in relation '" + name + "'");
        }
        return s;
    }

    auto to_raw(const Structure & s) -> RawStructure
    {
        RawStructure raw;
        for (auto & sym : s.signature().symbols())
            raw.signature.emplace_back(sym.name, sym.arity);
        raw.domain = s.names();
        for (int i = 0 ; i < s.signature().size() ; ++i) {
            vector<vector<string>> tuples;
            for (auto & t : s.table(i)) {
                vector<string> named;
                for (auto e : t)
                    named.push_back(s.name(e));
                tuples.push_back(std::move(named));
            }
            raw.relations.emplace_back(s.signature()[i].name, std::move(tuples));
        }
        return raw;
    }

    auto induced_substructure(const Structure & s, const vector<Element> & elements) -> Structure
    {
        vector<int> position(s.size(), -1);
        vector<string> names;
        for (auto e : elements) {
            if (e < 0 || e >= s.size())
                throw InputError("element index out of range");
            if (position[e] != -1)
                throw InputError("element '" + s.name(e) + "' listed twice");
            position[e] = int(names.size());
            names.push_back(s.name(e));
        }

        vector<set<Tuple>> tables(s.signature().size());
        for (int sym = 0 ; sym < s.signature().size() ; ++sym)
            for (auto & t : s.table(sym)) {
                Tuple mapped;
                for (auto e : t) {
                    if (position[e] == -1)
                        break;
                    mapped.push_back(position[e]);
                }
                if (mapped.size() == t.size())
                    tables[sym].insert(std::move(mapped));
            }

        return Structure{s.signature(), std::move(names), std::move(tables)};
    }

    auto induced_substructure(const Structure & s, const vector<string> & names) -> Structure
    {
        vector<Element> elements;
        for (auto & n : names)
            elements.push_back(s.at(n));
        return induced_substructure(s, elements);
    }

    auto is_induced_substructure(const Structure & sub, const Structure & s) -> bool
    {
        if (sub.signature() != s.signature())
            return false;
        for (auto & n : sub.names())
            if (! s.find(n))
                return false;
        return same_up_to_order(induced_substructure(s, sub.names()), sub);
    }

    auto make_graph(const vector<string> & names, const vector<pair<string, string>> & edges, const string & symbol) -> Structure
    {
        StructureBuilder builder{Signature{{Symbol{symbol, 2}}}};
        for (auto & n : names)
            builder.add_element(n);
        for (auto & [a, b] : edges) {
            if (a == b)
                throw InputError("graph edge '" + a + "' is a loop");
            builder.add_tuple(symbol, {a, b});
            builder.add_tuple(symbol, {b, a});
        }
        return builder.build();
    }

    namespace
    {
        auto factorize_by(const Structure & c, const vector<int> & symbols) -> Factorization
        {
            Factorization result;
            result.class_of.assign(c.size(), -1);
            vector<vector<bool>> signatures;
            for (Element e = 0 ; e < c.size() ; ++e) {
                vector<bool> sig;
                for (auto s : symbols)
                    sig.push_back(c.holds(s, Tuple(c.signature()[s].arity, e)));
                auto existing = std::find(signatures.begin(), signatures.end(), sig);
                if (existing == signatures.end()) {
                    result.class_of[e] = int(result.classes.size());
                    result.classes.push_back({e});
                    result.representatives.push_back(e);
                    signatures.push_back(sig);
                }
                else {
                    result.class_of[e] = int(existing - signatures.begin());
                    result.classes[result.class_of[e]].push_back(e);
                }
            }
            return result;
        }
    }

    auto natural_factorization(const Structure & c) -> Factorization
    {
        vector<int> symbols;
        for (int s = 0 ; s < c.signature().size() ; ++s)
            symbols.push_back(s);
        return factorize_by(c, symbols);
    }

    auto unary_factorization(const Structure & c) -> Factorization
    {
        vector<int> symbols;
        for (int s = 0 ; s < c.signature().size() ; ++s)
            if (c.signature()[s].arity == 1)
                symbols.push_back(s);
        return factorize_by(c, symbols);
    }

    namespace
    {
        auto check_embedding_map(const Structure & over, const Structure & into, const vector<Element> & embed, const string & which) -> void
        {
            if (over.signature() != into.signature())
                throw SignatureMismatch("amalgamation inputs (" + which + ")");
            if (int(embed.size()) != over.size())
                throw InputError("embedding into " + which + " is not total");
            set<Element> image;
            for (auto e : embed) {
                if (e < 0 || e >= into.size())
                    throw InputError("embedding into " + which + " leaves the target domain");
                if (! image.insert(e).second)
                    throw InputError("embedding into " + which + " is not injective");
            }
            vector<int> back(into.size(), -1);
            for (int i = 0 ; i < over.size() ; ++i)
                back[embed[i]] = i;
            for (int s = 0 ; s < over.signature().size() ; ++s) {
                for (auto & t : over.table(s)) {
                    Tuple m;
                    for (auto e : t)
                        m.push_back(embed[e]);
                    if (! into.holds(s, m))
                        throw InputError("map into " + which + " does not preserve '" + over.signature()[s].name + "'");
                }
                for (auto & t : into.table(s)) {
                    Tuple m;
                    for (auto e : t) {
                        if (back[e] == -1)
                            break;
                        m.push_back(back[e]);
                    }
                    if (m.size() == t.size() && ! over.holds(s, m))
                        throw InputError("map into " + which + " does not reflect '" + over.signature()[s].name + "'");
                }
            }
        }
    }

    auto free_amalgamation(const Structure & c1, const Structure & c2, const Structure & over,
            const vector<Element> & embed1, const vector<Element> & embed2) -> Structure
    {
        check_embedding_map(over, c1, embed1, "C1");
        check_embedding_map(over, c2, embed2, "C2");

        StructureBuilder builder{c1.signature()};
        for (auto & n : c1.names())
            builder.add_element(n);

        // C2 element -> amalgam element
        vector<Element> from2(c2.size(), -1);
        for (int i = 0 ; i < over.size() ; ++i)
            from2[embed2[i]] = embed1[i];
        for (Element e = 0 ; e < c2.size() ; ++e)
            if (from2[e] == -1) {
                string name = c2.name(e);
                while (builder.has_element(name))
                    name += "#2";
                from2[e] = builder.add_element(name);
            }

        for (int s = 0 ; s < c1.signature().size() ; ++s) {
            for (auto & t : c1.table(s))
                builder.add_tuple(s, t);
            for (auto & t : c2.table(s)) {
                Tuple m;
                for (auto e : t)
                    m.push_back(from2[e]);
                builder.add_tuple(s, m);
            }
        }
        return builder.build();
    }

    auto free_amalgamation(const Structure & c1, const Structure & c2, const Structure & over) -> Structure
    {
        vector<Element> e1, e2;
        for (auto & n : over.names()) {
            auto a = c1.find(n), b = c2.find(n);
            if (! a || ! b)
                throw InputError("amalgamation base element '" + n + "' missing from an input");
            e1.push_back(*a);
            e2.push_back(*b);
        }
        return free_amalgamation(c1, c2, over, e1, e2);
    }

    auto is_gaifman_clique(const Structure & t) -> bool
    {
        int n = t.size();
        vector<vector<bool>> covered(n, vector<bool>(n, false));
        for (int s = 0 ; s < t.signature().size() ; ++s) {
            if (t.signature()[s].arity < 2)
                continue;
            for (auto & tuple : t.table(s))
                for (auto a : tuple)
                    for (auto b : tuple)
                        covered[a][b] = true;
        }
        for (int a = 0 ; a < n ; ++a)
            for (int b = a + 1 ; b < n ; ++b)
                if (! covered[a][b])
                    return false;
        return true;
    }
}
