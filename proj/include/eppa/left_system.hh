/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_LEFT_SYSTEM_HH
#define EPPA_GUARD_EPPA_LEFT_SYSTEM_HH 1

#include <eppa/action_search.hh>
#include <eppa/group.hh>
#include <eppa/structure.hh>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eppa
{
    /// x_lhs H = x_var g H, where a missing var means the coset gH itself and
    /// a missing constant means the identity.
    struct Equation
    {
        int lhs = 0;
        std::string slot;
        std::optional<int> var;
        std::optional<std::string> constant;

        auto operator<=>(const Equation &) const = default;
    };

    /// Slot "H0" always denotes the trivial subgroup. A constant "g^-1"
    /// denotes the inverse of the constant g, and "1" the identity.
    struct LeftSystem
    {
        std::vector<std::string> variables;
        std::vector<Equation> equations;

        auto add_variable(const std::string & name) -> int;
        auto find_variable(const std::string & name) const -> std::optional<int>;
        auto slots() const -> std::vector<std::string>;
        auto constants() const -> std::vector<std::string>;

        auto operator==(const LeftSystem &) const -> bool = default;
    };

    auto to_string(const LeftSystem & sys, const Equation & eq) -> std::string;

    /// Subgroups and constants given as words over named generators. With
    /// `images` set the group is the finite permutation group they generate;
    /// otherwise it is the free group on the generators.
    struct CosetSpec
    {
        std::vector<std::string> generators;
        std::map<std::string, std::vector<Word>> subgroups;
        std::map<std::string, Word> constants;
        std::optional<std::vector<Perm>> images;
        int degree = 0;
    };

    /// A finite group with materialized subgroups and constants.
    struct FiniteContext
    {
        PermGroup group;
        std::map<std::string, PermGroup> subgroups;
        std::map<std::string, Perm> constants;

        auto constant(const std::string & name) const -> Perm;
        /// "H0" is the trivial subgroup unless given.
        auto subgroup(const std::string & slot) const -> PermGroup;
    };

    /// Throws InputError for a free spec, CapExceeded past `cap` elements.
    auto materialize(const CosetSpec & spec, long cap = 5040) -> FiniteContext;

    /// The same subgroups and constants with generators sent to the given
    /// permutations.
    auto induce(const CosetSpec & spec, const FiniteQuotient & q) -> CosetSpec;

    /// Lexicographically least solution: variables in order, candidate
    /// values in the sorted element order of the group.
    auto solve_left_system(const FiniteContext & ctx, const LeftSystem & sys) -> std::optional<std::vector<Perm>>;

    /// Direct coset test of every equation.
    auto satisfies(const FiniteContext & ctx, const LeftSystem & sys, const std::vector<Perm> & values) -> bool;

    /// {x H = γH, x H = ηH}: unsolvable iff γ^-1 η ∉ H.
    auto encode_nonmembership(const std::string & gamma, const std::string & eta, const std::string & slot) -> LeftSystem;

    /// {x_j H_j = γ_j H_j, x_j H_j = x η_j H_j}: unsolvable iff no g has
    /// γ_j H_j = g η_j H_j for every j.
    auto encode_no_translate(const std::vector<std::string> & gammas, const std::vector<std::string> & etas,
            const std::vector<std::string> & slots) -> LeftSystem;

    enum class NormalStage
    {
        star,
        prime
    };

    /// star: equations x H = gH become x H = y g H for one fresh y.
    /// prime: each x H_i = y g H_i with g or H_i nontrivial becomes
    /// x H_i = x' H_i, x' H0 = y g H0.
    auto normalize_system(const LeftSystem & sys, NormalStage stage) -> LeftSystem;

    /// A prime-normal system must have only these two equation shapes.
    auto is_prime_normal(const LeftSystem & sys) -> bool;

    struct GadgetBundle
    {
        std::vector<std::string> slots;
        std::vector<std::string> constants;
        Signature language;
        Structure t;
        std::string d_description;
        /// Per variable, the element x.H<i> for each slot index i.
        std::vector<std::vector<Element>> coset_elements;
    };

    /// The structure of formal cosets. Slots are H0 then the slots of the
    /// system in order; constants are closed under inverse.
    auto system_to_gadget(const LeftSystem & sys) -> GadgetBundle;

    /// The finite coset structure over a finite context in the gadget's
    /// language; a homomorphism from the gadget exists iff the system is
    /// solvable.
    auto gadget_target(const GadgetBundle & g, const FiniteContext & ctx) -> Structure;

    struct SeparationResult
    {
        SearchStatus status = SearchStatus::none;
        std::optional<FiniteQuotient> quotient;
        long tried = 0;
    };

    /// First quotient of degree ≤ max_degree, by degree and then by
    /// generator images in one-line order, under which the induced finite
    /// system has no solution. With a seed, candidates beyond half the budget
    /// are drawn at random at the largest degree.
    auto hl_separate(const CosetSpec & spec, const LeftSystem & sys, int max_degree, long budget = 1000000,
            std::optional<unsigned long> seed = std::nullopt) -> SeparationResult;
}

#endif
