/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_ACTION_SEARCH_HH
#define EPPA_GUARD_EPPA_ACTION_SEARCH_HH 1

#include <eppa/group.hh>
#include <eppa/structure.hh>

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace eppa
{
    /// Searches for permutations of a set of points extending given partial
    /// maps on an initial structure, where the relations are the orbit of the
    /// initial relations. Points beyond the initial ones are created only as
    /// images of existing points under a generator, so every completed
    /// action is the closure of the initial points, and each one is reached
    /// along exactly one path.
    struct ActionProblem
    {
        Signature signature;
        int initial_size = 0;
        std::vector<std::set<Tuple>> initial_tables;

        /// Per initial point, a bit mask of frozen regions. No tuple may be
        /// added with every entry inside one region.
        std::vector<std::uint32_t> regions;

        /// Per generator, the pairs it is required to contain.
        std::vector<std::vector<std::pair<Element, Element>>> generator_maps;

        std::vector<Structure> forbidden;

        /// Words over generator indices that must act trivially. Used only
        /// to prune; a solution must still pass `accept`.
        std::vector<Word> relators;

        /// Final check on a completed action, if set.
        std::function<bool (const std::vector<Perm> &, int)> accept;

        int max_size = 0;
        long budget = 50000000;
    };

    struct ActionSolution
    {
        int size = 0;
        std::vector<Perm> perms;
        std::vector<std::set<Tuple>> tables;
    };

    enum class SearchStatus
    {
        found,
        none,
        budget
    };

    auto to_string(SearchStatus s) -> const char *;

    struct ActionResult
    {
        SearchStatus status = SearchStatus::none;
        std::optional<ActionSolution> solution;
        long nodes = 0;
        /// Largest size bound that was exhausted without a solution.
        int refuted_up_to = 0;
    };

    /// Tries size bounds from the initial size upwards, so the first solution
    /// has the least possible number of points. Within a bound, slots are
    /// filled in (point, generator, direction) order with existing points
    /// tried in ascending order before a new one.
    auto search_action(const ActionProblem & problem) -> ActionResult;
}

#endif
