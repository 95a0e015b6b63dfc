/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_FIXTURES_HH
#define EPPA_GUARD_EPPA_FIXTURES_HH 1

#include <eppa/hl_extension.hh>
#include <eppa/io.hh>

#include <string>
#include <utility>
#include <vector>

namespace eppa
{
    /// The non-coherence example over {R/2, S/4}. The S-blocks of T and D1
    /// hold the 4-tuples of pairwise distinct elements; with `literal` they
    /// hold every 4-tuple, loops included, which puts S-tuples on C1 inside
    /// D1.
    auto s4_t(bool literal = false) -> Structure;
    auto s4_c2() -> Structure;
    auto s4_c1() -> Structure;
    auto s4_d1(bool literal = false) -> Structure;
    auto s4_extension(bool literal = false) -> HLExtension;

    auto graph_edge() -> Structure;
    auto graph_path_3() -> Structure;
    /// The 5-cycle for n = 3, K_{n-1} for larger n, two isolated points for
    /// n = 2.
    auto kn_free_seed(int n) -> Structure;
    /// K_n on "k0".."k<n-1>", as a forbidden pattern.
    auto complete_graph(int n) -> Structure;
    auto relation_free_pair() -> Structure;

    /// File name and content per emitted file. Throws InputError for an
    /// unknown name.
    auto fixture_files(const std::string & name, int n = 3) -> std::vector<std::pair<std::string, Json>>;
    auto fixture_names() -> std::vector<std::string>;
}

#endif
