/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_HOMOMORPHISM_HH
#define EPPA_GUARD_EPPA_HOMOMORPHISM_HH 1

#include <eppa/structure.hh>

#include <optional>
#include <vector>

namespace eppa
{
    /// Total map from source elements to target elements, by index.
    struct StructureMap
    {
        std::vector<Element> images;

        auto operator==(const StructureMap &) const -> bool = default;
    };

    auto is_homomorphism(const Structure & source, const Structure & target, const StructureMap & m) -> bool;

    /// Injective homomorphism that also reflects every relation.
    auto is_embedding(const Structure & source, const Structure & target, const StructureMap & m) -> bool;

    auto compose(const StructureMap & outer, const StructureMap & inner) -> StructureMap;

    /// Lexicographically least homomorphism in the canonical orders of both
    /// domains, by backtracking with forward checking. Throws
    /// SignatureMismatch.
    auto find_homomorphism(const Structure & source, const Structure & target) -> std::optional<StructureMap>;

    struct TFreeResult
    {
        bool free = true;
        /// Index into the forbidden list and the homomorphism found.
        std::optional<int> which;
        std::optional<StructureMap> witness;
    };

    auto is_t_free(const Structure & s, const std::vector<Structure> & forbidden) -> TFreeResult;
}

#endif
