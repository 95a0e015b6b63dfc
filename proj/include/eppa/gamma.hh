/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_GAMMA_HH
#define EPPA_GUARD_EPPA_GAMMA_HH 1

#include <eppa/group.hh>
#include <eppa/hl_extension.hh>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eppa
{
    /// The coset structure G*/K_1 ⊔ ... ⊔ G*/K_n, where G* is the finite image
    /// of F(P_C) under a quotient and K_i the image of H_i, optionally
    /// enlarged. Elements that are images of points of C keep their ids and
    /// come first, in the order of C.
    struct GammaN
    {
        std::shared_ptr<const Structure> base;
        PartialIsoSet pc;
        Factorization factorization;
        FiniteQuotient quotient;
        PermGroup group;
        /// The subgroup K_i whose cosets form class i.
        std::vector<PermGroup> subgroups;

        Structure structure;
        /// Per element: class index and index into group.elements() of a
        /// coset representative.
        std::vector<int> class_of;
        std::vector<int> representative;
        StructureMap pi;
        /// Left multiplication, per member of P_C.
        std::vector<Perm> Phi;
        std::optional<StructureMap> psi;

        auto as_extension() const -> HLExtension;
    };

    /// Throws NotEmbedding if π is not an embedding, CapExceeded if G* is
    /// too large, InputError if the quotient lacks a generator.
    auto build_gamma_N(std::shared_ptr<const Structure> c, const FiniteQuotient & q, long cap = 20000) -> GammaN;

    /// `enlarge[i]` are extra elements of G* generating, together with the
    /// image of H_i, the subgroup whose cosets form class i.
    auto build_gamma_N(std::shared_ptr<const Structure> c, const PartialIsoSet & pc, const FiniteQuotient & q,
            const std::vector<std::vector<Perm>> & enlarge, long cap = 20000) -> GammaN;

    struct CoverResult
    {
        GammaN gamma;
        bool shrunk = false;
        bool psi_onto = false;
        bool psi_homomorphism = false;
        bool commutes = false;
        HLReport gamma_report;
    };

    /// Γ_N for the kernels of the action of φ(P_C) on D, with ψ onto D.
    /// Every check is run; a failing one raises VerificationFailure.
    auto canonical_cover(const HLExtension & e, const std::vector<Structure> & forbidden, long cap = 20000) -> CoverResult;

    struct GammaFragment
    {
        Structure structure;
        std::vector<int> class_of;
        std::vector<Word> words;
        std::vector<std::string> labels;
    };

    /// Cosets gH_i of the infinite coset structure for reduced words g of
    /// length at most `radius`, with the relations witnessed by such g.
    auto gamma_fragment(std::shared_ptr<const Structure> c, int radius, long cap = 100000) -> GammaFragment;

    /// Member index of {a_i -> c}, or -1 for c = a_i.
    auto singleton_member(const PartialIsoSet & pc, Element a, Element c) -> int;
}

#endif
