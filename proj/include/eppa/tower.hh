/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_TOWER_HH
#define EPPA_GUARD_EPPA_TOWER_HH 1

#include <eppa/hl_extension.hh>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eppa
{
    struct TowerOptions
    {
        int max_size = 12;
        long budget = 5000000;
        /// Triples (D, D', E) with D ≠ D' processed per level.
        int triple_cap = 64;
    };

    /// D ⊆ D' ⊆ D_n and a minimal HL-extension (E, φ) of D inside D_n, with
    /// the coherent extension E' of D' chosen for it, if one was found.
    struct TripleRecord
    {
        std::vector<std::string> d, d_prime;
        HLExtension e;
        std::optional<HLExtension> e_prime;
        SearchStatus status = SearchStatus::none;
    };

    struct LevelChecks
    {
        bool t_free = false;
        bool minimal = false;
        bool coherent = false;
        bool nested = false;
        std::vector<std::string> findings;

        auto all() const -> bool { return t_free && minimal && coherent && nested; }
    };

    struct TowerLevel
    {
        int index = 1;
        std::shared_ptr<const Structure> c;
        HLExtension ext;
        Structure z;
        std::vector<TripleRecord> triples;
        /// Every triple was enumerated and got its E'.
        bool triples_complete = false;
        /// C_{n+1}, the free amalgamation of Z_n and F_{n+1} over F_n.
        Structure next_c;
        LevelChecks checks;
    };

    struct TowerResult
    {
        std::vector<TowerLevel> levels;
        /// found: every requested level was built; budget: a search bound
        /// stopped the construction early.
        SearchStatus status = SearchStatus::found;
        std::vector<std::string> findings;
    };

    /// Throws InputError if a forbidden structure is not a Gaifman clique or
    /// the seed chain is not increasing and T-free. A chain shorter than
    /// `levels` is continued with its last member.
    auto build_tower(const std::vector<Structure> & seed, const std::vector<Structure> & forbidden, int levels,
            const TowerOptions & options = TowerOptions{}) -> TowerResult;

    struct LevelStatistics
    {
        int index = 1;
        long k_order = 0;
        int d_size = 0;
        std::vector<int> orbit_sizes;
        /// K_{n-1} embeds in K_n by the order criterion; unset at level 1.
        std::optional<bool> embeds;
        std::optional<CoherenceReport> link;
    };

    struct ChainReport
    {
        std::vector<LevelStatistics> levels;
        bool certified = false;
    };

    auto chain_report(const TowerResult & tower, long cap = 20000) -> ChainReport;
}

#endif
