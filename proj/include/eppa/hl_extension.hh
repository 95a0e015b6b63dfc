/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_HL_EXTENSION_HH
#define EPPA_GUARD_EPPA_HL_EXTENSION_HH 1

#include <eppa/action_search.hh>
#include <eppa/group.hh>
#include <eppa/homomorphism.hh>
#include <eppa/partial_iso.hh>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eppa
{
    /// (D, φ) over a base C. The elements of C are found in D by id; φ is
    /// indexed by the members of P_C.
    struct HLExtension
    {
        std::shared_ptr<const Structure> base;
        Structure ext;
        PartialIsoSet pc;
        std::vector<Element> embed;
        std::vector<std::optional<Perm>> phi;

        HLExtension() = default;
        /// Looks up every base id in `ext`. Missing images are filled from
        /// the inverse member when it has one.
        HLExtension(std::shared_ptr<const Structure> base, Structure ext, PartialIsoSet pc,
                std::vector<std::optional<Perm>> phi);

        auto image(int member) const -> const Perm &;
        /// φ of each free generator of P_C, in generator order.
        auto generator_images() const -> std::vector<Perm>;
    };

    struct HLReport
    {
        bool substructure = false;
        bool automorphisms = false;
        bool extends = false;
        bool involution = false;
        bool complete = false;
        bool t_free = false;
        bool minimal = false;
        std::vector<std::string> findings;
        std::vector<std::string> warnings;
        std::optional<TFreeResult> t_witness;

        /// Every check except minimality.
        auto is_extension() const -> bool
        {
            return substructure && automorphisms && extends && involution && complete && t_free;
        }
        auto all() const -> bool { return is_extension() && minimal; }
    };

    auto verify_hl_extension(const HLExtension & e, const std::vector<Structure> & forbidden) -> HLReport;

    /// Closure of the points of C under the group generated by φ(P_C).
    auto closure_of_base(const HLExtension & e) -> std::vector<Element>;
    auto is_minimal(const HLExtension & e) -> bool;

    /// The restriction of a non-minimal extension to the closure of C.
    auto shrink_to_closure(const HLExtension & e) -> HLExtension;

    struct ExtensionSearchResult
    {
        SearchStatus status = SearchStatus::none;
        std::optional<HLExtension> extension;
        int max_size = 0;
        int refuted_up_to = 0;
        long nodes = 0;
    };

    /// Least-size minimal T-free HL-extension with at most `max_size` points.
    /// Each pair {p, p^-1} is extended through the first maximal member of
    /// P_C containing p, which loses no solutions.
    auto find_hl_extension(std::shared_ptr<const Structure> c, const std::vector<Structure> & forbidden,
            int max_size, long budget = 50000000) -> ExtensionSearchResult;

    struct CoherenceReport
    {
        bool base_nested = false;
        bool ext_nested = false;
        bool restricts = false;
        long order_k1 = 0;
        long order_k2 = 0;
        bool coherent = false;
        std::vector<std::string> findings;
    };

    /// Matches P_{C1} members with members of P_{C2} by id, checks D1 ⊆ D2,
    /// φ2(p) ⊇ φ1(p), and |⟨φ2(P_{C1})⟩| = |⟨φ1(P_{C1})⟩|.
    auto check_coherent(const HLExtension & e1, const HLExtension & e2, long cap = 20000) -> CoherenceReport;

    /// Bounded search for a minimal T-free HL-extension of C2 coherent with
    /// e1. The search starts from the free amalgamation of D1 and C2 over C1
    /// with both parts kept induced.
    auto find_coherent_extension(std::shared_ptr<const Structure> c2, const HLExtension & e1,
            const std::vector<Structure> & forbidden, int max_size, long budget = 50000000) -> ExtensionSearchResult;

    /// The same search from a given structure containing D1 and C2, by id,
    /// as induced substructures; new tuples may not lie inside either.
    auto find_coherent_extension(std::shared_ptr<const Structure> c2, const HLExtension & e1, const Structure & start,
            const std::vector<Structure> & forbidden, int max_size, long budget = 50000000) -> ExtensionSearchResult;

    /// Member of `to` with the same graph as member `k` of `from`, by id.
    auto translate_member(const PartialIsoSet & from, int k, const PartialIsoSet & to) -> std::optional<int>;
}

#endif
