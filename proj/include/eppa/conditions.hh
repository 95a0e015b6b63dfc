/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_CONDITIONS_HH
#define EPPA_GUARD_EPPA_CONDITIONS_HH 1

#include <eppa/left_system.hh>
#include <eppa/partial_iso.hh>

#include <string>
#include <vector>

namespace eppa
{
    /// Left systems over the free group on P_C whose joint unsolvability
    /// says that the coset map into the quotient structure is an embedding
    /// and that no forbidden structure maps into the quotient structure.
    struct ConditionSystems
    {
        /// Generators are those of P_C, slots H1..Hn are the stabilizers of
        /// the representatives, constants p<k> are the members.
        CosetSpec spec;
        std::vector<LeftSystem> systems;
        /// "C1 ...", "C2 ..." or "C3 ..." per system.
        std::vector<std::string> labels;
    };

    /// Each point c of class i is named by the member {a_i -> c}, or by 1
    /// for c = a_i. A homomorphism from T exists iff one of the C3 systems
    /// is solvable, so each class assignment and witness choice gets its own
    /// system. Throws CapExceeded past `cap` systems.
    auto encode_extension_conditions(const PartialIsoSet & pc, const std::vector<Structure> & forbidden,
            long cap = 200000) -> ConditionSystems;
}

#endif
