/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_PARTIAL_ISO_HH
#define EPPA_GUARD_EPPA_PARTIAL_ISO_HH 1

#include <eppa/structure.hh>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eppa
{
    /// A finite injective map on the elements of some base structure, kept
    /// sorted by source element.
    class PartialIso
    {
        private:
            std::vector<std::pair<Element, Element>> _graph;

        public:
            PartialIso() = default;
            /// Sorts; throws InputError if not a function or not injective.
            explicit PartialIso(std::vector<std::pair<Element, Element>> graph);

            auto graph() const -> const std::vector<std::pair<Element, Element>> & { return _graph; }
            auto size() const -> int { return int(_graph.size()); }
            auto empty() const -> bool { return _graph.empty(); }
            auto apply(Element a) const -> std::optional<Element>;
            auto preimage(Element b) const -> std::optional<Element>;
            auto domain() const -> std::vector<Element>;
            auto range() const -> std::vector<Element>;

            /// p ⊆ 1_C
            auto is_identity_restriction() const -> bool;
            /// graph inclusion
            auto extends(const PartialIso & smaller) const -> bool;

            auto operator<=>(const PartialIso & other) const = default;
    };

    /// Canonical order: by domain size, then lexicographically by graph.
    auto canonical_less(const PartialIso & a, const PartialIso & b) -> bool;

    auto is_partial_iso(const Structure & c, const std::vector<std::pair<Element, Element>> & m) -> bool;
    auto is_partial_iso(const Structure & c, const PartialIso & p) -> bool;

    /// {(a, p(q(a))) : a ∈ dom q, q(a) ∈ dom p}
    auto compose_partial(const PartialIso & p, const PartialIso & q) -> PartialIso;
    auto invert_partial(const PartialIso & p) -> PartialIso;

    auto to_string(const Structure & c, const PartialIso & p) -> std::string;

    /// An inverse-closed set of partial isomorphisms of one base structure.
    /// Each member is paired with its inverse; the first member of each pair
    /// in canonical order is the pair's representative and names one free
    /// generator "p<index>". Self-inverse members are their own pair.
    class PartialIsoSet
    {
        private:
            std::shared_ptr<const Structure> _base;
            std::vector<PartialIso> _members;
            std::vector<int> _inverse;
            std::vector<int> _generator_of;
            std::vector<int> _sign_of;
            std::vector<int> _generator_members;
            bool _nonidentity = true;

        public:
            PartialIsoSet() = default;
            PartialIsoSet(std::shared_ptr<const Structure> base, std::vector<PartialIso> members, bool nonidentity);

            auto base() const -> const Structure & { return *_base; }
            auto base_ptr() const -> const std::shared_ptr<const Structure> & { return _base; }
            auto nonidentity() const -> bool { return _nonidentity; }
            auto size() const -> int { return int(_members.size()); }
            auto operator[](int k) const -> const PartialIso & { return _members[k]; }
            auto members() const -> const std::vector<PartialIso> & { return _members; }
            auto inverse_of(int k) const -> int { return _inverse[k]; }
            auto find(const PartialIso & p) const -> std::optional<int>;

            /// Free generators: one per inverse pair.
            auto generator_count() const -> int { return int(_generator_members.size()); }
            auto generator_member(int g) const -> int { return _generator_members[g]; }
            auto generator_of(int k) const -> int { return _generator_of[k]; }
            auto sign_of(int k) const -> int { return _sign_of[k]; }
            auto generator_names() const -> std::vector<std::string>;
    };

    /// All partial isomorphisms with |dom| ≤ max_dom (default |C|), in
    /// canonical order. With `nonidentity`, restrictions of the identity
    /// (including the empty map) are dropped, giving P_C. Throws CapExceeded
    /// beyond `cap` members.
    auto enumerate_partial_isos(std::shared_ptr<const Structure> c, std::optional<int> max_dom = std::nullopt,
            bool nonidentity = true, long cap = 1000000) -> PartialIsoSet;

    auto enumerate_partial_isos(const Structure & c, std::optional<int> max_dom = std::nullopt,
            bool nonidentity = true, long cap = 1000000) -> PartialIsoSet;

    /// Members with no proper one-point extension inside the set's base.
    auto maximal_members(const PartialIsoSet & ps) -> std::vector<int>;
}

#endif
