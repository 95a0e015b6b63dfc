/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/fixtures.hh>

using std::pair;
using std::string;
using std::vector;

namespace eppa
{
    namespace
    {
        auto rs_signature() -> Signature
        {
            return Signature{{Symbol{"R", 2}, Symbol{"S", 4}}};
        }

        void add_s_block(StructureBuilder & b, const vector<string> & block, bool loops)
        {
            for (auto & p : block)
                for (auto & q : block)
                    for (auto & r : block)
                        for (auto & s : block) {
                            if (! loops && (p == q || p == r || p == s || q == r || q == s || r == s))
                                continue;
                            b.add_tuple("S", {p, q, r, s});
                        }
        }
    }

    auto s4_t(bool literal) -> Structure
    {
        StructureBuilder b{rs_signature()};
        for (int i = 0 ; i < 7 ; ++i)
            b.add_element(std::to_string(i));
        b.add_tuple("R", {"0", "1"}).add_tuple("R", {"1", "2"}).add_tuple("R", {"2", "0"});
        add_s_block(b, {"3", "4", "5", "6"}, literal);
        return b.build();
    }

    auto s4_c2() -> Structure
    {
        StructureBuilder b{rs_signature()};
        for (auto n : {"x", "y", "z"})
            b.add_element(n);
        b.add_tuple("R", {"x", "y"}).add_tuple("R", {"y", "z"}).add_tuple("R", {"z", "x"});
        return b.build();
    }

    auto s4_c1() -> Structure
    {
        return induced_substructure(s4_c2(), vector<string>{"x", "y"});
    }

    auto s4_d1(bool literal) -> Structure
    {
        StructureBuilder b{rs_signature()};
        for (auto n : {"x", "y", "u", "v"})
            b.add_element(n);
        b.add_tuple("R", {"x", "y"}).add_tuple("R", {"y", "u"}).add_tuple("R", {"u", "v"}).add_tuple("R", {"v", "x"});
        add_s_block(b, {"x", "y", "u", "v"}, literal);
        return b.build();
    }

    auto s4_extension(bool literal) -> HLExtension
    {
        auto c1 = std::make_shared<const Structure>(s4_c1());
        auto d1 = s4_d1(literal);
        auto pc = enumerate_partial_isos(c1);
        vector<std::optional<Perm>> phi(pc.size());
        // x -> y, y -> u, u -> v, v -> x and its inverse
        Perm forward{{d1.at("y"), d1.at("u"), d1.at("v"), d1.at("x")}};
        phi[*pc.find(PartialIso{{{c1->at("x"), c1->at("y")}}})] = forward;
        phi[*pc.find(PartialIso{{{c1->at("y"), c1->at("x")}}})] = forward.inverse();
        return HLExtension{c1, std::move(d1), std::move(pc), std::move(phi)};
    }

    auto graph_edge() -> Structure
    {
        return make_graph({"a", "b"}, {{"a", "b"}});
    }

    auto graph_path_3() -> Structure
    {
        return make_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    }

    auto kn_free_seed(int n) -> Structure
    {
        if (n < 2)
            throw InputError("kn-free-seed needs n >= 2");
        if (n == 2)
            return make_graph({"v0", "v1"}, {});
        if (n == 3)
            return make_graph({"v0", "v1", "v2", "v3", "v4"},
                    {{"v0", "v1"}, {"v1", "v2"}, {"v2", "v3"}, {"v3", "v4"}, {"v4", "v0"}});
        vector<string> names;
        vector<pair<string, string>> edges;
        for (int i = 0 ; i < n - 1 ; ++i) {
            names.push_back("v" + std::to_string(i));
            for (int j = 0 ; j < i ; ++j)
                edges.emplace_back(names[j], names[i]);
        }
        return make_graph(names, edges);
    }

    auto complete_graph(int n) -> Structure
    {
        vector<string> names;
        vector<pair<string, string>> edges;
        for (int i = 0 ; i < n ; ++i) {
            names.push_back("k" + std::to_string(i));
            for (int j = 0 ; j < i ; ++j)
                edges.emplace_back(names[j], names[i]);
        }
        return make_graph(names, edges);
    }

    auto relation_free_pair() -> Structure
    {
        StructureBuilder b{Signature{}};
        b.add_element("a");
        b.add_element("b");
        return b.build();
    }

    auto fixture_names() -> vector<string>
    {
        return {"s4-counterexample", "s4-counterexample-literal", "graph-path-3", "kn-free-seed", "relation-free-pair"};
    }

    auto fixture_files(const string & name, int n) -> vector<pair<string, Json>>
    {
        if (name == "s4-counterexample" || name == "s4-counterexample-literal") {
            bool literal = name != "s4-counterexample";
            auto e = s4_extension(literal);
            auto ext = extension_to_json(e);
            ext["base"] = "C1.json";
            ext["ext"] = "D1.json";
            return {{"T.json", structure_to_json(s4_t(literal))}, {"C1.json", structure_to_json(s4_c1())},
                {"C2.json", structure_to_json(s4_c2())}, {"D1.json", structure_to_json(e.ext)}, {"phi1.json", ext}};
        }
        if (name == "graph-path-3")
            return {{"edge.json", structure_to_json(graph_edge())}, {"path3.json", structure_to_json(graph_path_3())},
                {"K3.json", structure_to_json(complete_graph(3))}};
        if (name == "kn-free-seed")
            return {{"seed.json", structure_to_json(kn_free_seed(n))},
                {"K" + std::to_string(n) + ".json", structure_to_json(complete_graph(n))}};
        if (name == "relation-free-pair")
            return {{"pair.json", structure_to_json(relation_free_pair())}};
        throw InputError("unknown fixture '" + name + "'");
    }
}
