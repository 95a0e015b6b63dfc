/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/conditions.hh>
#include <eppa/gamma.hh>

#include <functional>

using std::string;
using std::vector;

namespace eppa
{
    auto encode_extension_conditions(const PartialIsoSet & pc, const vector<Structure> & forbidden, long cap) -> ConditionSystems
    {
        auto & c = pc.base();
        auto fact = natural_factorization(c);
        int n = fact.classes.size();

        ConditionSystems result;
        result.spec.generators = pc.generator_names();
        for (int i = 0 ; i < n ; ++i)
            result.spec.subgroups.emplace("H" + std::to_string(i + 1), stabilizer_generators(pc, fact.representatives[i]));
        for (int k = 0 ; k < pc.size() ; ++k)
            result.spec.constants.emplace("p" + std::to_string(k), word_of_members(pc, {k}));

        auto slot = [&] (Element x) { return "H" + std::to_string(fact.class_of[x] + 1); };
        auto name_of = [&] (Element x) -> string {
            int k = singleton_member(pc, fact.representatives[fact.class_of[x]], x);
            return k == -1 ? "1" : "p" + std::to_string(k);
        };
        auto emit = [&] (LeftSystem sys, string label) {
            if (long(result.systems.size()) >= cap)
                throw CapExceeded("more than " + std::to_string(cap) + " condition systems");
            result.systems.push_back(std::move(sys));
            result.labels.push_back(std::move(label));
        };

        // C1: distinct points of one class sit in distinct cosets
        for (auto & cls : fact.classes)
            for (unsigned a = 0 ; a < cls.size() ; ++a)
                for (unsigned b = a + 1 ; b < cls.size() ; ++b)
                    emit(encode_nonmembership(name_of(cls[a]), name_of(cls[b]), slot(cls[a])),
                            "C1 " + c.name(cls[a]) + " " + c.name(cls[b]));

        // C2: no translate carries a related tuple onto an unrelated one
        for (int s = 0 ; s < c.signature().size() ; ++s) {
            int m = c.signature()[s].arity;
            for (auto & related : c.table(s)) {
                Tuple other(m, 0);
                std::function<void (int)> walk = [&] (int j) {
                    if (j == m) {
                        if (c.holds(s, other))
                            return;
                        vector<string> gammas, etas, slots;
                        string label = "C2 " + c.signature()[s].name + " (";
                        for (int k = 0 ; k < m ; ++k) {
                            gammas.push_back(name_of(related[k]));
                            etas.push_back(name_of(other[k]));
                            slots.push_back(slot(related[k]));
                            label += (k ? "," : "") + c.name(related[k]);
                        }
                        label += ") (";
                        for (int k = 0 ; k < m ; ++k)
                            label += (k ? "," : "") + c.name(other[k]);
                        emit(encode_no_translate(gammas, etas, slots), label + ")");
                        return;
                    }
                    for (auto x : fact.classes[fact.class_of[related[j]]]) {
                        other[j] = x;
                        walk(j + 1);
                    }
                };
                walk(0);
            }
        }

        // C3: one system per class assignment of T and witness per T-tuple
        for (unsigned f = 0 ; f < forbidden.size() ; ++f) {
            auto & t = forbidden[f];
            if (! (t.signature() == c.signature()))
                throw SignatureMismatch("forbidden structure and base have different signatures");
            int l = t.size();
            vector<int> classes(l, 0);
            vector<std::pair<int, Tuple>> t_tuples;
            for (int s = 0 ; s < t.signature().size() ; ++s)
                for (auto & tup : t.table(s))
                    t_tuples.emplace_back(s, tup);

            std::function<void (int)> assign = [&] (int j) {
                if (j < l) {
                    for (int i = 0 ; i < n ; ++i) {
                        classes[j] = i;
                        assign(j + 1);
                    }
                    return;
                }
                // witnesses per T-tuple under this assignment
                vector<vector<Tuple>> options;
                for (auto & [s, tup] : t_tuples) {
                    options.emplace_back();
                    for (auto & w : c.table(s)) {
                        bool fits = true;
                        for (unsigned k = 0 ; k < tup.size() ; ++k)
                            if (fact.class_of[w[k]] != classes[tup[k]])
                                fits = false;
                        if (fits)
                            options.back().push_back(w);
                    }
                    if (options.back().empty())
                        return;
                }
                vector<int> choice(t_tuples.size(), 0);
                string assignment;
                for (int k = 0 ; k < l ; ++k)
                    assignment += (k ? "," : "") + t.name(k) + ":H" + std::to_string(classes[k] + 1);
                while (true) {
                    LeftSystem sys;
                    for (int k = 0 ; k < l ; ++k)
                        sys.add_variable("y" + std::to_string(k + 1));
                    for (unsigned w = 0 ; w < t_tuples.size() ; ++w) {
                        auto & [s, tup] = t_tuples[w];
                        auto & wit = options[w][choice[w]];
                        int x = sys.add_variable("x" + std::to_string(w + 1));
                        for (unsigned k = 0 ; k < tup.size() ; ++k) {
                            int z = sys.add_variable("z" + std::to_string(w + 1) + "_" + std::to_string(k + 1));
                            string h = slot(wit[k]);
                            sys.equations.push_back(Equation{z, h, tup[k], std::nullopt});
                            sys.equations.push_back(Equation{z, h, x, name_of(wit[k])});
                        }
                    }
                    string label = "C3 T" + std::to_string(f + 1) + " [" + assignment + "]";
                    for (unsigned w = 0 ; w < t_tuples.size() ; ++w) {
                        label += " " + c.signature()[t_tuples[w].first].name + "(";
                        auto & wit = options[w][choice[w]];
                        for (unsigned k = 0 ; k < wit.size() ; ++k)
                            label += (k ? "," : "") + c.name(wit[k]);
                        label += ")";
                    }
                    emit(std::move(sys), label);

                    int w = int(choice.size()) - 1;
                    while (w >= 0 && ++choice[w] == int(options[w].size()))
                        choice[w--] = 0;
                    if (w < 0)
                        break;
                }
            };
            assign(0);
        }

        return result;
    }
}
