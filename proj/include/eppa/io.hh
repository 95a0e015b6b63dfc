/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_IO_HH
#define EPPA_GUARD_EPPA_IO_HH 1

#include <eppa/gamma.hh>
#include <eppa/hl_extension.hh>
#include <eppa/left_system.hh>
#include <eppa/structure.hh>
#include <eppa/tower.hh>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace eppa
{
    using Json = nlohmann::json;

    /// Whole file; throws InputError if unreadable or not JSON.
    auto read_json_file(const std::filesystem::path & path) -> Json;
    auto read_file_bytes(const std::filesystem::path & path) -> std::string;
    auto write_json_file(const std::filesystem::path & path, const Json & j) -> void;

    /// Sorted keys, two-space indent, trailing newline.
    auto canonical_dump(const Json & j) -> std::string;
    auto sha256_hex(const std::string & bytes) -> std::string;

    auto raw_from_json(const Json & j) -> RawStructure;
    auto structure_from_json(const Json & j) -> Structure;
    auto structure_to_json(const Structure & s) -> Json;

    auto partial_iso_to_json(const Structure & c, const PartialIso & p) -> Json;
    auto partial_iso_from_json(const Structure & c, const Json & j) -> PartialIso;
    auto partial_iso_set_to_json(const PartialIsoSet & ps) -> Json;

    auto perm_to_json(const Perm & p) -> Json;
    /// A permutation of a structure as [[from, to], ...] by element id.
    auto named_perm_to_json(const Structure & d, const Perm & p) -> Json;
    auto named_perm_from_json(const Structure & d, const Json & j) -> Perm;

    /// "base" may be a file name relative to `dir` or an inline structure.
    auto extension_from_json(const Json & j, const std::filesystem::path & dir = ".") -> HLExtension;
    auto extension_to_json(const HLExtension & e) -> Json;

    /// Generator names are taken in the order given, or sorted when empty.
    auto quotient_from_json(const Json & j, const std::vector<std::string> & names = {}) -> FiniteQuotient;
    auto quotient_to_json(const FiniteQuotient & q) -> Json;

    struct SystemFile
    {
        CosetSpec spec;
        LeftSystem system;
    };

    /// {"generators": [...] or "group": {"degree": k, "generators": {name: images}},
    ///  "subgroups": {"H1": {"gens": [word, ...]}}, "constants": {"g": word},
    ///  "variables": [...] (optional), "equations": [{"lhs", "slot", "rhs": {"var", "const"}}]}
    auto system_from_json(const Json & j) -> SystemFile;
    auto system_to_json(const SystemFile & f) -> Json;
    auto spec_to_json(const CosetSpec & spec) -> Json;
    auto equations_to_json(const LeftSystem & sys) -> Json;

    auto hl_report_to_json(const HLReport & r) -> Json;
    auto coherence_to_json(const CoherenceReport & r) -> Json;
    auto gamma_to_json(const GammaN & g) -> Json;
    auto tower_level_to_json(const TowerLevel & level) -> Json;
    auto chain_report_to_json(const ChainReport & r) -> Json;
}

#endif
