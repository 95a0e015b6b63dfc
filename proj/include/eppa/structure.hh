/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_STRUCTURE_HH
#define EPPA_GUARD_EPPA_STRUCTURE_HH 1

#include <eppa/errors.hh>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace eppa
{
    /// Elements of a structure are referred to by their position in the
    /// canonical domain order.
    using Element = int;
    using Tuple = std::vector<Element>;

    struct Symbol
    {
        std::string name;
        int arity;

        auto operator<=>(const Symbol &) const = default;
    };

    /// A finite relational language. Symbol order is canonical and fixes every
    /// iteration order downstream.
    class Signature
    {
        private:
            std::vector<Symbol> _symbols;

        public:
            Signature() = default;
            explicit Signature(std::vector<Symbol> symbols);

            auto size() const -> int { return int(_symbols.size()); }
            auto operator[](int i) const -> const Symbol & { return _symbols[i]; }
            auto symbols() const -> const std::vector<Symbol> & { return _symbols; }
            auto find(const std::string & name) const -> std::optional<int>;
            auto max_arity() const -> int;

            auto operator==(const Signature &) const -> bool = default;
    };

    /// A finite relational structure. Immutable once built.
    class Structure
    {
        private:
            Signature _signature;
            std::vector<std::string> _names;
            std::unordered_map<std::string, Element> _index;
            std::vector<std::set<Tuple>> _tables;

        public:
            Structure() = default;

            /// Throws InputError on duplicate ids, out of range entries or
            /// arity mismatches.
            Structure(Signature signature, std::vector<std::string> names, std::vector<std::set<Tuple>> tables);

            auto signature() const -> const Signature & { return _signature; }
            auto size() const -> int { return int(_names.size()); }
            auto name(Element e) const -> const std::string & { return _names[e]; }
            auto names() const -> const std::vector<std::string> & { return _names; }
            auto find(const std::string & name) const -> std::optional<Element>;
            auto at(const std::string & name) const -> Element;
            auto table(int symbol) const -> const std::set<Tuple> & { return _tables[symbol]; }
            auto tables() const -> const std::vector<std::set<Tuple>> & { return _tables; }
            auto holds(int symbol, const Tuple & t) const -> bool { return _tables[symbol].contains(t); }
            auto tuple_count() const -> long;

            /// Tuples rendered with element names, per symbol.
            auto named_table(int symbol) const -> std::set<std::vector<std::string>>;

            auto operator==(const Structure & other) const -> bool
            {
                return _signature == other._signature && _names == other._names && _tables == other._tables;
            }
    };

    /// Same signature, same set of ids, same named tuples; domain order ignored.
    auto same_up_to_order(const Structure & a, const Structure & b) -> bool;

    /// Incremental construction by element name.
    class StructureBuilder
    {
        private:
            Signature _signature;
            std::vector<std::string> _names;
            std::unordered_map<std::string, Element> _index;
            std::vector<std::set<Tuple>> _tables;

        public:
            explicit StructureBuilder(Signature signature);

            auto add_element(const std::string & name) -> Element;
            auto has_element(const std::string & name) const -> bool { return _index.contains(name); }
            auto add_tuple(const std::string & symbol, const std::vector<std::string> & names) -> StructureBuilder &;
            auto add_tuple(int symbol, const Tuple & t) -> StructureBuilder &;
            auto build() const -> Structure;
    };

    /// A structure as read from a file, before any checking.
    struct RawStructure
    {
        std::vector<std::pair<std::string, int>> signature;
        std::vector<std::string> domain;
        std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> relations;
    };

    struct ValidationReport
    {
        std::vector<std::string> findings;
        /// Non-fatal: places where unary-predicate classes differ from the
        /// singleton-partial-isomorphism classes.
        std::vector<std::string> warnings;

        auto valid() const -> bool { return findings.empty(); }
    };

    auto validate_structure(const RawStructure & raw) -> ValidationReport;

    /// Throws InputError listing the findings if invalid.
    auto build_structure(const RawStructure & raw) -> Structure;

    auto to_raw(const Structure & s) -> RawStructure;

    auto induced_substructure(const Structure & s, const std::vector<Element> & elements) -> Structure;
    auto induced_substructure(const Structure & s, const std::vector<std::string> & names) -> Structure;

    /// True if every id of `sub` occurs in `s` and the structure induced on
    /// those ids equals `sub` (tuples compared by name).
    auto is_induced_substructure(const Structure & sub, const Structure & s) -> bool;

    /// Simple graph: one binary symbol "E", both orientations stored, no loops.
    auto make_graph(const std::vector<std::string> & names, const std::vector<std::pair<std::string, std::string>> & edges,
            const std::string & symbol = "E") -> Structure;

    struct Factorization
    {
        std::vector<std::vector<Element>> classes;
        std::vector<Element> representatives;
        std::vector<int> class_of;
    };

    /// a ~ b iff {(a, b)} is a partial isomorphism, i.e. every constant tuple
    /// R(a, ..., a) holds exactly when R(b, ..., b) does.
    auto natural_factorization(const Structure & c) -> Factorization;

    /// Classes by unary predicates only, for the validation cross-check.
    auto unary_factorization(const Structure & c) -> Factorization;

    /// Embeddings are given as maps from elements of `over` into C1 and C2.
    /// Result domain: C1 in its order, then C2 minus the image of `over`,
    /// renamed with a "#2" suffix on id collisions.
    auto free_amalgamation(const Structure & c1, const Structure & c2, const Structure & over,
            const std::vector<Element> & embed1, const std::vector<Element> & embed2) -> Structure;

    /// Identity embeddings by element name.
    auto free_amalgamation(const Structure & c1, const Structure & c2, const Structure & over) -> Structure;

    auto is_gaifman_clique(const Structure & t) -> bool;
}

#endif
