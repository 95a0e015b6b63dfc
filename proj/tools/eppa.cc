/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/conditions.hh>
#include <eppa/fixtures.hh>
#include <eppa/gamma.hh>
#include <eppa/hl_extension.hh>
#include <eppa/io.hh>
#include <eppa/left_system.hh>
#include <eppa/tower.hh>

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

using namespace eppa;

using std::cerr;
using std::cout;
using std::function;
using std::make_shared;
using std::map;
using std::optional;
using std::string;
using std::vector;

namespace fs = std::filesystem;

namespace
{
    struct Context
    {
        string command;
        Json report = Json::object();
        map<string, string> inputs;
        vector<string> findings;

        auto load(const string & path) -> Json
        {
            inputs[path] = sha256_hex(read_file_bytes(path));
            return read_json_file(path);
        }

        auto structure(const string & path) -> Structure
        {
            return structure_from_json(load(path));
        }

        auto structures(const vector<string> & paths) -> vector<Structure>
        {
            vector<Structure> result;
            for (auto & p : paths)
                result.push_back(structure(p));
            return result;
        }

        auto extension(const string & path) -> HLExtension
        {
            auto j = load(path);
            auto dir = fs::path{path}.parent_path();
            for (auto key : {"base", "ext"})
                if (j.contains(key) && j.at(key).is_string()) {
                    auto p = (dir / j.at(key).get<string>()).string();
                    inputs[p] = sha256_hex(read_file_bytes(p));
                }
            return extension_from_json(j, dir.empty() ? fs::path{"."} : dir);
        }

        auto emit(const string & status) -> void
        {
            report["command"] = command;
            report["status"] = status;
            report["inputs"] = inputs;
            report["findings"] = findings;
            cout << canonical_dump(report);
        }
    };

    auto map_to_json(const Structure & source, const Structure & target, const StructureMap & m) -> Json
    {
        Json j = Json::object();
        for (int x = 0 ; x < source.size() ; ++x)
            j[source.name(x)] = target.name(m.images[x]);
        return j;
    }

    auto witness_json(const Structure & t, const Structure & s, const TFreeResult & r) -> Json
    {
        if (r.free)
            return nullptr;
        return Json{{"forbidden", *r.which}, {"map", map_to_json(t, s, *r.witness)}};
    }

    auto search_json(const ExtensionSearchResult & r) -> Json
    {
        Json j{{"search_status", to_string(r.status)}, {"max_size", r.max_size}, {"refuted_up_to", r.refuted_up_to},
            {"nodes", r.nodes}};
        if (r.status == SearchStatus::none)
            j["bound"] = "no witness with at most " + std::to_string(r.max_size) + " points; larger witnesses are not excluded";
        else if (r.status == SearchStatus::budget)
            j["bound"] = "node budget exhausted; no witness with at most " + std::to_string(r.refuted_up_to) + " points";
        if (r.extension)
            j["extension"] = extension_to_json(*r.extension);
        return j;
    }

    auto assignment_json(const LeftSystem & sys, const vector<Perm> & values) -> Json
    {
        Json j = Json::object();
        for (unsigned v = 0 ; v < values.size() ; ++v)
            j[sys.variables[v]] = perm_to_json(values[v]);
        return j;
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Extensions of partial isomorphisms: HL-extensions, coset structures, left systems, towers"};
    app.require_subcommand(1);

    vector<string> forbidden_paths;
    int max_size = 8, radius = 2, max_degree = 4, jobs = 1, levels = 2, triple_cap = 64, n = 3;
    long budget = 50000000, cap = 20000;
    optional<unsigned long> seed;
    string out, stage = "prime", quotient_path;
    optional<int> max_dom;
    bool with_identity = false;

    auto add_common = [&] (CLI::App * sub) {
        sub->add_option("--forbidden", forbidden_paths, "Forbidden structure file (repeatable)");
        sub->add_option("--max-size", max_size, "Largest extension searched");
        sub->add_option("--budget", budget, "Search node budget");
        sub->add_option("--cap", cap, "Group closure cap");
        sub->add_option("--seed", seed, "Seed for randomized paths");
        sub->add_option("--jobs", jobs, "Worker threads (searches run single-threaded)");
    };

    Context ctx;
    function<int ()> run;
    vector<string> files;

    auto command = [&] (const string & name, const string & help, int arity, function<int ()> body) {
        auto sub = app.add_subcommand(name, help);
        add_common(sub);
        auto opt = sub->add_option("files", files, "Input files");
        if (arity >= 0)
            opt->expected(arity)->required(arity > 0);
        sub->callback([&, name, body] { ctx.command = name; run = body; });
        return sub;
    };

    command("validate", "Validate a structure file", 1, [&] {
        auto raw = raw_from_json(ctx.load(files[0]));
        auto r = validate_structure(raw);
        ctx.findings = r.findings;
        ctx.report["valid"] = r.valid();
        ctx.report["warnings"] = r.warnings;
        ctx.emit(r.valid() ? "valid" : "invalid");
        return r.valid() ? 0 : 1;
    });

    command("homomorphism", "Least homomorphism A -> B", 2, [&] {
        auto a = ctx.structure(files[0]), b = ctx.structure(files[1]);
        auto h = find_homomorphism(a, b);
        ctx.report["homomorphism"] = h ? map_to_json(a, b, *h) : Json(nullptr);
        ctx.emit(h ? "found" : "none");
        return h ? 0 : 1;
    });

    command("tfree", "T-freeness against --forbidden", 1, [&] {
        auto s = ctx.structure(files[0]);
        auto forbidden = ctx.structures(forbidden_paths);
        auto r = is_t_free(s, forbidden);
        ctx.report["t_free"] = r.free;
        ctx.report["witness"] = r.free ? Json(nullptr) : witness_json(forbidden[*r.which], s, r);
        ctx.emit(r.free ? "holds" : "fails");
        return r.free ? 0 : 1;
    });

    auto pis = command("partial-isos", "Enumerate partial isomorphisms", 1, [&] {
        auto c = make_shared<const Structure>(ctx.structure(files[0]));
        auto ps = enumerate_partial_isos(c, max_dom, ! with_identity, cap > 20000 ? cap : 1000000);
        ctx.report["members"] = partial_iso_set_to_json(ps);
        ctx.report["count"] = ps.size();
        ctx.report["generators"] = ps.generator_names();
        ctx.emit("ok");
        return 0;
    });
    pis->add_option("--max-dom", max_dom, "Largest domain size");
    pis->add_flag("--with-identity", with_identity, "Keep restrictions of the identity");

    command("factorize", "Natural factorization", 1, [&] {
        auto c = ctx.structure(files[0]);
        auto f = natural_factorization(c);
        Json classes = Json::array();
        for (unsigned i = 0 ; i < f.classes.size() ; ++i) {
            vector<string> names;
            for (auto x : f.classes[i])
                names.push_back(c.name(x));
            classes.push_back(Json{{"class", names}, {"representative", c.name(f.representatives[i])}});
        }
        ctx.report["classes"] = classes;
        ctx.emit("ok");
        return 0;
    });

    command("amalgamate", "Free amalgamation of C1 and C2 over a common part", 3, [&] {
        auto c1 = ctx.structure(files[0]), c2 = ctx.structure(files[1]), over = ctx.structure(files[2]);
        if (! is_induced_substructure(over, c1) || ! is_induced_substructure(over, c2))
            throw InputError("the common part is not induced in both structures");
        auto d = free_amalgamation(c1, c2, over);
        ctx.report["amalgam"] = structure_to_json(d);
        ctx.emit("ok");
        return 0;
    });

    command("find-eppa", "Least minimal T-free HL-extension", 1, [&] {
        auto c = make_shared<const Structure>(ctx.structure(files[0]));
        auto r = find_hl_extension(c, ctx.structures(forbidden_paths), max_size, budget);
        ctx.report["search"] = search_json(r);
        ctx.emit(to_string(r.status));
        return r.extension ? 0 : 1;
    });

    command("verify-ext", "Verify an HL-extension", 1, [&] {
        auto e = ctx.extension(files[0]);
        auto r = verify_hl_extension(e, ctx.structures(forbidden_paths));
        ctx.report["checks"] = hl_report_to_json(r);
        ctx.findings = r.findings;
        ctx.emit(r.all() ? "holds" : "fails");
        return r.all() ? 0 : 1;
    });

    command("canonical-cover", "Coset structure covering a finite HL-extension", 1, [&] {
        auto e = ctx.extension(files[0]);
        try {
            auto r = canonical_cover(e, ctx.structures(forbidden_paths), cap);
            ctx.report["gamma"] = gamma_to_json(r.gamma);
            ctx.report["shrunk"] = r.shrunk;
            ctx.report["psi_onto"] = r.psi_onto;
            ctx.report["psi_homomorphism"] = r.psi_homomorphism;
            ctx.report["commutes"] = r.commutes;
            ctx.report["gamma_checks"] = hl_report_to_json(r.gamma_report);
            ctx.emit("holds");
            return 0;
        }
        catch (const VerificationFailure & f) {
            ctx.findings.push_back(f.what());
            ctx.emit("fails");
            return 1;
        }
    });

    command("coherence", "Coherence of two nested HL-extensions", 2, [&] {
        auto e1 = ctx.extension(files[0]), e2 = ctx.extension(files[1]);
        auto r = check_coherent(e1, e2, cap);
        ctx.report["coherence"] = coherence_to_json(r);
        ctx.findings = r.findings;
        ctx.emit(r.coherent ? "holds" : "fails");
        return r.coherent ? 0 : 1;
    });

    command("find-coherent", "Coherent HL-extension of C2 over a given extension of C1", 2, [&] {
        auto c2 = make_shared<const Structure>(ctx.structure(files[0]));
        auto e1 = ctx.extension(files[1]);
        auto r = find_coherent_extension(c2, e1, ctx.structures(forbidden_paths), max_size, budget);
        ctx.report["search"] = search_json(r);
        ctx.emit(to_string(r.status));
        return r.extension ? 0 : 1;
    });

    auto gam = command("gamma", "Coset structure from radius-bounded words, or from --quotient", 1, [&] {
        auto c = make_shared<const Structure>(ctx.structure(files[0]));
        if (! quotient_path.empty()) {
            auto pc = enumerate_partial_isos(c);
            auto q = quotient_from_json(ctx.load(quotient_path), pc.generator_names());
            try {
                auto g = build_gamma_N(c, q, cap);
                ctx.report["gamma"] = gamma_to_json(g);
                auto r = verify_hl_extension(g.as_extension(), ctx.structures(forbidden_paths));
                ctx.report["checks"] = hl_report_to_json(r);
                ctx.emit(r.all() ? "holds" : "fails");
                return r.all() ? 0 : 1;
            }
            catch (const NotEmbedding & f) {
                ctx.findings.push_back(f.what());
                ctx.emit("fails");
                return 1;
            }
        }
        auto f = gamma_fragment(c, radius, cap > 20000 ? cap : 100000);
        ctx.report["fragment"] = structure_to_json(f.structure);
        ctx.report["labels"] = f.labels;
        ctx.report["class_of"] = f.class_of;
        ctx.emit("ok");
        return 0;
    });
    gam->add_option("--radius", radius, "Word length bound");
    gam->add_option("--quotient", quotient_path, "Quotient file");

    command("solve-system", "Least solution over a finite group", 1, [&] {
        auto f = system_from_json(ctx.load(files[0]));
        if (! f.spec.images) {
            if (! f.system.equations.empty())
                throw InputError("solve-system needs a finite group; use separate for a free group");
            Json a = Json::object();
            for (auto & v : f.system.variables)
                a[v] = "1";
            ctx.report["assignment"] = a;
            ctx.emit("found");
            return 0;
        }
        auto fc = materialize(f.spec, cap);
        auto s = solve_left_system(fc, f.system);
        ctx.report["group_order"] = fc.group.order();
        ctx.report["assignment"] = s ? assignment_json(f.system, *s) : Json(nullptr);
        if (s && ! satisfies(fc, f.system, *s))
            throw VerificationFailure("solver returned a non-solution");
        ctx.emit(s ? "found" : "none");
        return s ? 0 : 1;
    });

    auto norm = command("normalize", "Star or prime normal form", 1, [&] {
        auto f = system_from_json(ctx.load(files[0]));
        if (stage != "star" && stage != "prime")
            throw InputError("--stage must be star or prime");
        f.system = normalize_system(f.system, stage == "star" ? NormalStage::star : NormalStage::prime);
        ctx.report["system"] = system_to_json(f);
        ctx.report["prime_normal"] = is_prime_normal(f.system);
        ctx.emit("ok");
        return 0;
    });
    norm->add_option("--stage", stage, "star or prime");

    command("gadget", "Formal coset structure of a system", 1, [&] {
        auto f = system_from_json(ctx.load(files[0]));
        bool normalized = ! is_prime_normal(f.system);
        if (normalized)
            f.system = normalize_system(f.system, NormalStage::prime);
        auto g = system_to_gadget(f.system);
        ctx.report["normalized"] = normalized;
        ctx.report["t"] = structure_to_json(g.t);
        ctx.report["slots"] = g.slots;
        ctx.report["constants"] = g.constants;
        ctx.report["d_description"] = g.d_description;
        ctx.report["gaifman_clique"] = is_gaifman_clique(g.t);
        if (! f.spec.images) {
            ctx.emit("ok");
            return 0;
        }
        auto fc = materialize(f.spec, cap);
        auto d = gadget_target(g, fc);
        bool hom = find_homomorphism(g.t, d).has_value();
        bool solvable = solve_left_system(fc, f.system).has_value();
        ctx.report["homomorphism"] = hom;
        ctx.report["solvable"] = solvable;
        ctx.report["d_size"] = d.size();
        ctx.emit(hom == solvable ? "holds" : "fails");
        return hom == solvable ? 0 : 1;
    });

    command("encode-conditions", "Left systems for the quotient embedding conditions", 1, [&] {
        auto c = make_shared<const Structure>(ctx.structure(files[0]));
        auto pc = enumerate_partial_isos(c);
        auto r = encode_extension_conditions(pc, ctx.structures(forbidden_paths), cap > 20000 ? cap : 200000);
        Json systems = Json::array();
        for (unsigned i = 0 ; i < r.systems.size() ; ++i)
            systems.push_back(Json{{"label", r.labels[i]}, {"variables", r.systems[i].variables},
                {"equations", equations_to_json(r.systems[i])}});
        ctx.report["spec"] = spec_to_json(r.spec);
        ctx.report["systems"] = systems;
        ctx.report["count"] = r.systems.size();
        ctx.emit("ok");
        return 0;
    });

    auto sep = command("separate", "Finite quotient keeping a system unsolvable", 1, [&] {
        auto f = system_from_json(ctx.load(files[0]));
        if (f.spec.images)
            throw InputError("separate needs a system over a free group");
        auto r = hl_separate(f.spec, f.system, max_degree, budget == 50000000 ? 1000000 : budget, seed);
        ctx.report["tried"] = r.tried;
        ctx.report["max_degree"] = max_degree;
        if (r.quotient) {
            auto fc = materialize(induce(f.spec, *r.quotient), cap);
            bool unsolvable = ! solve_left_system(fc, f.system);
            ctx.report["quotient"] = quotient_to_json(*r.quotient);
            ctx.report["verified_unsolvable"] = unsolvable;
            ctx.report["image_order"] = fc.group.order();
            if (! unsolvable)
                throw VerificationFailure("separating quotient does not verify");
        }
        ctx.emit(to_string(r.status));
        return r.quotient ? 0 : 1;
    });
    sep->add_option("--max-degree", max_degree, "Largest permutation degree");

    auto tow = command("tower", "Finite levels of a coherent tower over a seed chain", -1, [&] {
        if (files.empty())
            throw InputError("tower needs at least one seed structure");
        auto chain = ctx.structures(files);
        TowerOptions options;
        options.max_size = max_size;
        options.budget = budget == 50000000 ? 5000000 : budget;
        options.triple_cap = triple_cap;
        auto t = build_tower(chain, ctx.structures(forbidden_paths), levels, options);
        auto chain_r = chain_report(t, cap);
        Json lv = Json::array();
        bool all = t.status == SearchStatus::found;
        for (auto & level : t.levels) {
            lv.push_back(tower_level_to_json(level));
            all = all && level.checks.all();
        }
        ctx.report["levels"] = lv;
        ctx.report["chain"] = chain_report_to_json(chain_r);
        ctx.report["tower_status"] = to_string(t.status);
        ctx.findings = t.findings;
        if (! out.empty()) {
            fs::create_directories(out);
            Json manifest = Json::object();
            for (auto & level : t.levels) {
                auto name = "level" + std::to_string(level.index) + ".json";
                auto j = tower_level_to_json(level);
                write_json_file(fs::path{out} / name, j);
                manifest[name] = sha256_hex(canonical_dump(j));
            }
            Json m{{"files", manifest}, {"chain", chain_report_to_json(chain_r)}, {"status", to_string(t.status)}};
            write_json_file(fs::path{out} / "manifest.json", m);
        }
        ctx.emit(all && chain_r.certified ? "holds" : to_string(t.status));
        return all && chain_r.certified ? 0 : 1;
    });
    tow->add_option("--levels", levels, "Number of levels");
    tow->add_option("--triple-cap", triple_cap, "Triples processed per level");
    tow->add_option("--out", out, "Directory for per-level files and manifest");

    auto fix = command("fixture", "Emit a named fixture", 1, [&] {
        auto name = files[0];
        // accept kn-free-seed(3) and kn-free-seed-3 too
        for (auto prefix : {string{"kn-free-seed("}, string{"kn-free-seed-"}})
            if (name.starts_with(prefix) && name.size() > prefix.size()) {
                auto digits = name.substr(prefix.size());
                if (digits.back() == ')')
                    digits.pop_back();
                try {
                    n = std::stoi(digits);
                }
                catch (const std::exception &) {
                    throw InputError("bad fixture parameter in '" + name + "'");
                }
                name = "kn-free-seed";
            }
        auto emitted = fixture_files(name, n);
        Json contents = Json::object(), hashes = Json::object();
        for (auto & [fname, j] : emitted) {
            contents[fname] = j;
            hashes[fname] = sha256_hex(canonical_dump(j));
            if (! out.empty()) {
                fs::create_directories(out);
                write_json_file(fs::path{out} / fname, j);
            }
        }
        ctx.report["fixture"] = name;
        ctx.report["files"] = contents;
        ctx.report["hashes"] = hashes;
        ctx.emit("ok");
        return 0;
    });
    fix->add_option("--n", n, "Clique size for kn-free-seed");
    fix->add_option("--out", out, "Directory to write the files into");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        cerr << e.what() << "\n";
        ctx.command = ctx.command.empty() ? "usage" : ctx.command;
        ctx.findings.push_back(e.what());
        ctx.emit("error");
        return 2;
    }

    try {
        return run();
    }
    catch (const InputError & e) {
        cerr << "input error: " << e.what() << "\n";
        ctx.findings.push_back(e.what());
        ctx.emit("error");
        return 2;
    }
    catch (const CapExceeded & e) {
        cerr << "cap exceeded: " << e.what() << "\n";
        ctx.findings.push_back(string{"cap exceeded: "} + e.what());
        ctx.emit("cap");
        return 1;
    }
    catch (const VerificationFailure & e) {
        cerr << "verification failure: " << e.what() << "\n";
        ctx.findings.push_back(e.what());
        ctx.emit("fails");
        return 1;
    }
    catch (const std::exception & e) {
        cerr << "error: " << e.what() << "\n";
        ctx.findings.push_back(e.what());
        ctx.emit("error");
        return 2;
    }
}
