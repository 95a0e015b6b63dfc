/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/io.hh>

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

using std::optional;
using std::string;
using std::vector;

namespace fs = std::filesystem;

namespace eppa
{
    auto read_file_bytes(const fs::path & path) -> string
    {
        std::ifstream in{path, std::ios::binary};
        if (! in)
            throw InputError("cannot read '" + path.string() + "'");
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto read_json_file(const fs::path & path) -> Json
    {
        auto bytes = read_file_bytes(path);
        try {
            return Json::parse(bytes);
        }
        catch (const Json::parse_error & e) {
            throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
        }
    }

    auto write_json_file(const fs::path & path, const Json & j) -> void
    {
        std::ofstream out{path, std::ios::binary};
        if (! out)
            throw InputError("cannot write '" + path.string() + "'");
        out << canonical_dump(j);
    }

    auto canonical_dump(const Json & j) -> string
    {
        // nlohmann::json objects are std::map backed, so keys come out sorted
        return j.dump(2) + "\n";
    }

    auto sha256_hex(const string & bytes) -> string
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        if (! EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr))
            throw std::runtime_error("sha256 failed");
        std::ostringstream s;
        for (unsigned i = 0 ; i < length ; ++i)
            s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
        return s.str();
    }

    namespace
    {
        auto need(const Json & j, const string & key, const string & what) -> const Json &
        {
            if (! j.is_object() || ! j.contains(key))
                throw InputError(what + " lacks '" + key + "'");
            return j.at(key);
        }

        template <typename T_>
        auto get(const Json & j, const string & what) -> T_
        {
            try {
                return j.get<T_>();
            }
            catch (const Json::exception & e) {
                throw InputError("malformed " + what + ": " + e.what());
            }
        }

        auto pairs_to_json(const Structure & c, const vector<std::pair<Element, Element>> & graph) -> Json
        {
            Json result = Json::array();
            for (auto & [a, b] : graph)
                result.push_back(Json::array({c.name(a), c.name(b)}));
            return result;
        }

        auto pairs_from_json(const Structure & c, const Json & j) -> vector<std::pair<Element, Element>>
        {
            vector<std::pair<Element, Element>> result;
            for (auto & pr : get<vector<vector<string>>>(j, "map")) {
                if (pr.size() != 2)
                    throw InputError("map entries must be [from, to] pairs");
                auto a = c.find(pr[0]), b = c.find(pr[1]);
                if (! a || ! b)
                    throw InputError("map entry [" + pr[0] + ", " + pr[1] + "] names an unknown element");
                result.emplace_back(*a, *b);
            }
            return result;
        }
    }

    auto raw_from_json(const Json & j) -> RawStructure
    {
        RawStructure raw;
        for (auto & [name, arity] : get<std::map<string, int>>(need(j, "signature", "structure"), "signature"))
            raw.signature.emplace_back(name, arity);
        raw.domain = get<vector<string>>(need(j, "domain", "structure"), "domain");
        if (j.contains("relations"))
            for (auto & [name, tuples] : get<std::map<string, vector<vector<string>>>>(j.at("relations"), "relations"))
                raw.relations.emplace_back(name, tuples);
        return raw;
    }

    auto structure_from_json(const Json & j) -> Structure
    {
        return build_structure(raw_from_json(j));
    }

    auto structure_to_json(const Structure & s) -> Json
    {
        Json sig = Json::object(), rel = Json::object();
        for (int r = 0 ; r < s.signature().size() ; ++r) {
            sig[s.signature()[r].name] = s.signature()[r].arity;
            Json tuples = Json::array();
            for (auto & t : s.table(r)) {
                Json tuple = Json::array();
                for (auto e : t)
                    tuple.push_back(s.name(e));
                tuples.push_back(tuple);
            }
            rel[s.signature()[r].name] = tuples;
        }
        return Json{{"signature", sig}, {"domain", s.names()}, {"relations", rel}};
    }

    auto partial_iso_to_json(const Structure & c, const PartialIso & p) -> Json
    {
        return Json{{"map", pairs_to_json(c, p.graph())}};
    }

    auto partial_iso_from_json(const Structure & c, const Json & j) -> PartialIso
    {
        return PartialIso{pairs_from_json(c, need(j, "map", "partial isomorphism"))};
    }

    auto partial_iso_set_to_json(const PartialIsoSet & ps) -> Json
    {
        Json result = Json::array();
        for (int k = 0 ; k < ps.size() ; ++k) {
            auto j = partial_iso_to_json(ps.base(), ps[k]);
            j["name"] = "p" + std::to_string(k);
            j["inverse"] = "p" + std::to_string(ps.inverse_of(k));
            result.push_back(j);
        }
        return result;
    }

    auto perm_to_json(const Perm & p) -> Json
    {
        return Json(p.images());
    }

    auto named_perm_to_json(const Structure & d, const Perm & p) -> Json
    {
        vector<std::pair<Element, Element>> graph;
        for (int x = 0 ; x < p.degree() ; ++x)
            graph.emplace_back(x, p(x));
        return pairs_to_json(d, graph);
    }

    auto named_perm_from_json(const Structure & d, const Json & j) -> Perm
    {
        vector<int> images(d.size(), -1);
        for (auto & [a, b] : pairs_from_json(d, j)) {
            if (images[a] != -1)
                throw InputError("automorphism maps " + d.name(a) + " twice");
            images[a] = b;
        }
        for (int x = 0 ; x < d.size() ; ++x)
            if (images[x] == -1)
                throw InputError("automorphism is not total at " + d.name(x));
        return Perm{images};
    }

    auto extension_from_json(const Json & j, const fs::path & dir) -> HLExtension
    {
        auto & b = need(j, "base", "extension");
        auto base = std::make_shared<const Structure>(b.is_string()
                ? structure_from_json(read_json_file(dir / b.get<string>()))
                : structure_from_json(b));
        auto & x = need(j, "ext", "extension");
        auto ext = x.is_string() ? structure_from_json(read_json_file(dir / x.get<string>())) : structure_from_json(x);
        auto pc = enumerate_partial_isos(base);

        vector<optional<Perm>> phi(pc.size());
        if (j.contains("phi"))
            for (auto & entry : j.at("phi")) {
                auto & pj = need(entry, "p", "phi entry");
                auto p = pj.is_object() ? partial_iso_from_json(*base, pj) : PartialIso{pairs_from_json(*base, pj)};
                auto k = pc.find(p);
                if (! k)
                    throw InputError("phi entry " + to_string(*base, p) + " is not a nonidentity partial isomorphism of the base");
                phi[*k] = named_perm_from_json(ext, need(entry, "auto", "phi entry"));
            }
        return HLExtension{base, std::move(ext), std::move(pc), std::move(phi)};
    }

    auto extension_to_json(const HLExtension & e) -> Json
    {
        Json phi = Json::array();
        for (int g = 0 ; g < e.pc.generator_count() ; ++g) {
            int k = e.pc.generator_member(g);
            phi.push_back(Json{{"p", pairs_to_json(*e.base, e.pc[k].graph())}, {"auto", named_perm_to_json(e.ext, e.image(k))}});
        }
        return Json{{"base", structure_to_json(*e.base)}, {"ext", structure_to_json(e.ext)}, {"phi", phi}};
    }

    auto quotient_from_json(const Json & j, const vector<string> & names) -> FiniteQuotient
    {
        FiniteQuotient q;
        q.degree = get<int>(need(j, "degree", "quotient"), "degree");
        auto images = get<std::map<string, vector<int>>>(need(j, "images", "quotient"), "images");
        if (names.empty())
            for (auto & [name, _] : images)
                q.names.push_back(name);
        else
            q.names = names;
        for (auto & name : q.names) {
            auto i = images.find(name);
            if (i == images.end())
                throw InputError("quotient has no image for generator '" + name + "'");
            if (int(i->second.size()) != q.degree)
                throw InputError("image of '" + name + "' has the wrong degree");
            q.images.emplace_back(i->second);
        }
        return q;
    }

    auto quotient_to_json(const FiniteQuotient & q) -> Json
    {
        Json images = Json::object();
        for (unsigned g = 0 ; g < q.names.size() ; ++g)
            images[q.names[g]] = perm_to_json(q.images[g]);
        return Json{{"degree", q.degree}, {"images", images}};
    }

    auto system_from_json(const Json & j) -> SystemFile
    {
        SystemFile f;
        if (j.contains("group")) {
            auto & g = j.at("group");
            f.spec.degree = get<int>(need(g, "degree", "group"), "degree");
            vector<Perm> images;
            for (auto & [name, img] : get<std::map<string, vector<int>>>(need(g, "generators", "group"), "generators")) {
                if (int(img.size()) != f.spec.degree)
                    throw InputError("generator '" + name + "' has the wrong degree");
                f.spec.generators.push_back(name);
                images.emplace_back(img);
            }
            f.spec.images = images;
        }
        else if (j.contains("generators"))
            f.spec.generators = get<vector<string>>(j.at("generators"), "generators");

        if (j.contains("subgroups"))
            for (auto & [name, entry] : j.at("subgroups").items()) {
                vector<Word> gens;
                for (auto & w : get<vector<string>>(need(entry, "gens", "subgroup " + name), "subgroup generators"))
                    gens.push_back(Word::parse(w, f.spec.generators));
                f.spec.subgroups.emplace(name, gens);
            }
        if (j.contains("constants"))
            for (auto & [name, w] : get<std::map<string, string>>(j.at("constants"), "constants"))
                f.spec.constants.emplace(name, Word::parse(w, f.spec.generators));

        if (j.contains("variables"))
            for (auto & v : get<vector<string>>(j.at("variables"), "variables"))
                f.system.add_variable(v);
        if (j.contains("equations"))
            for (auto & eq : j.at("equations")) {
                Equation e;
                e.lhs = f.system.add_variable(get<string>(need(eq, "lhs", "equation"), "lhs"));
                e.slot = get<string>(need(eq, "slot", "equation"), "slot");
                if (e.slot != "H0" && ! f.spec.subgroups.contains(e.slot))
                    throw InputError("equation uses undeclared subgroup slot '" + e.slot + "'");
                if (eq.contains("rhs")) {
                    auto & rhs = eq.at("rhs");
                    if (rhs.contains("var"))
                        e.var = f.system.add_variable(get<string>(rhs.at("var"), "rhs var"));
                    if (rhs.contains("const")) {
                        e.constant = get<string>(rhs.at("const"), "rhs const");
                        string base = *e.constant;
                        if (base.size() > 3 && base.substr(base.size() - 3) == "^-1")
                            base = base.substr(0, base.size() - 3);
                        if (base != "1" && ! f.spec.constants.contains(base))
                            throw InputError("equation uses undeclared constant '" + *e.constant + "'");
                    }
                }
                f.system.equations.push_back(e);
            }
        return f;
    }

    auto spec_to_json(const CosetSpec & spec) -> Json
    {
        Json j = Json::object();
        if (spec.images) {
            Json gens = Json::object();
            for (unsigned g = 0 ; g < spec.generators.size() ; ++g)
                gens[spec.generators[g]] = perm_to_json((*spec.images)[g]);
            j["group"] = Json{{"degree", spec.degree}, {"generators", gens}};
        }
        else
            j["generators"] = spec.generators;
        Json subgroups = Json::object();
        for (auto & [name, gens] : spec.subgroups) {
            vector<string> words;
            for (auto & w : gens)
                words.push_back(w.to_string(spec.generators));
            subgroups[name] = Json{{"gens", words}};
        }
        j["subgroups"] = subgroups;
        Json constants = Json::object();
        for (auto & [name, w] : spec.constants)
            constants[name] = w.to_string(spec.generators);
        j["constants"] = constants;
        return j;
    }

    auto equations_to_json(const LeftSystem & sys) -> Json
    {
        Json eqs = Json::array();
        for (auto & e : sys.equations) {
            Json rhs = Json::object();
            if (e.var)
                rhs["var"] = sys.variables.at(*e.var);
            if (e.constant)
                rhs["const"] = *e.constant;
            eqs.push_back(Json{{"lhs", sys.variables.at(e.lhs)}, {"slot", e.slot}, {"rhs", rhs}});
        }
        return eqs;
    }

    auto system_to_json(const SystemFile & f) -> Json
    {
        auto j = spec_to_json(f.spec);
        j["variables"] = f.system.variables;
        j["equations"] = equations_to_json(f.system);
        return j;
    }

    auto hl_report_to_json(const HLReport & r) -> Json
    {
        Json j{{"substructure", r.substructure}, {"automorphisms", r.automorphisms}, {"extends", r.extends},
            {"involution", r.involution}, {"complete", r.complete}, {"t_free", r.t_free}, {"minimal", r.minimal},
            {"findings", r.findings}, {"warnings", r.warnings}};
        if (r.t_witness && r.t_witness->witness)
            j["t_witness"] = Json{{"forbidden", *r.t_witness->which}, {"images", r.t_witness->witness->images}};
        return j;
    }

    auto coherence_to_json(const CoherenceReport & r) -> Json
    {
        return Json{{"base_nested", r.base_nested}, {"ext_nested", r.ext_nested}, {"restricts", r.restricts},
            {"order_k1", r.order_k1}, {"order_k2", r.order_k2}, {"coherent", r.coherent}, {"findings", r.findings}};
    }

    auto gamma_to_json(const GammaN & g) -> Json
    {
        Json pi = Json::object();
        for (int x = 0 ; x < g.base->size() ; ++x)
            pi[g.base->name(x)] = g.structure.name(g.pi.images[x]);
        Json phi = Json::array();
        for (int k = 0 ; k < g.pc.size() ; ++k)
            phi.push_back(Json{{"p", pairs_to_json(*g.base, g.pc[k].graph())}, {"auto", named_perm_to_json(g.structure, g.Phi[k])}});
        vector<long> orders;
        for (auto & k : g.subgroups)
            orders.push_back(k.order());
        Json j{{"structure", structure_to_json(g.structure)}, {"pi", pi}, {"Phi", phi}, {"class_of", g.class_of},
            {"quotient", quotient_to_json(g.quotient)}, {"group_order", g.group.order()}, {"subgroup_orders", orders}};
        if (g.psi)
            j["psi"] = g.psi->images;
        return j;
    }

    auto tower_level_to_json(const TowerLevel & level) -> Json
    {
        Json triples = Json::array();
        for (auto & t : level.triples) {
            Json tj{{"D", t.d}, {"D_prime", t.d_prime}, {"E", t.e.ext.names()}, {"status", to_string(t.status)}};
            if (t.e_prime)
                tj["E_prime"] = t.e_prime->ext.names();
            triples.push_back(tj);
        }
        auto & ch = level.checks;
        return Json{{"index", level.index}, {"C", structure_to_json(*level.c)}, {"extension", extension_to_json(level.ext)},
            {"Z", structure_to_json(level.z)}, {"next_C", structure_to_json(level.next_c)}, {"triples", triples},
            {"triples_complete", level.triples_complete},
            {"checks", Json{{"t_free", ch.t_free}, {"minimal", ch.minimal}, {"coherent", ch.coherent}, {"nested", ch.nested},
                {"findings", ch.findings}}}};
    }

    auto chain_report_to_json(const ChainReport & r) -> Json
    {
        Json levels = Json::array();
        for (auto & s : r.levels) {
            Json j{{"index", s.index}, {"k_order", s.k_order}, {"d_size", s.d_size}, {"orbit_sizes", s.orbit_sizes}};
            if (s.embeds)
                j["embeds_previous"] = *s.embeds;
            if (s.link)
                j["link"] = coherence_to_json(*s.link);
            levels.push_back(j);
        }
        return Json{{"levels", levels}, {"certified", r.certified}};
    }
}
