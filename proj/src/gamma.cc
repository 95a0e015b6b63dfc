/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/gamma.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <set>

using std::deque;
using std::make_shared;
using std::map;
using std::optional;
using std::set;
using std::shared_ptr;
using std::string;
using std::vector;

namespace eppa
{
    auto singleton_member(const PartialIsoSet & pc, Element a, Element c) -> int
    {
        if (a == c)
            return -1;
        auto k = pc.find(PartialIso{{{a, c}}});
        if (! k)
            throw InputError("points in one factorization class with no singleton map between them");
        return *k;
    }

    namespace
    {
        auto member_word(const PartialIsoSet & pc, int k) -> Word
        {
            if (k == -1)
                return Word{};
            return Word::generator(pc.generator_of(k), pc.sign_of(k));
        }

        auto aligned_quotient(const PartialIsoSet & pc, const FiniteQuotient & q) -> FiniteQuotient
        {
            FiniteQuotient result;
            result.degree = q.degree;
            result.names = pc.generator_names();
            for (auto & name : result.names) {
                auto i = std::find(q.names.begin(), q.names.end(), name);
                if (i == q.names.end())
                    throw InputError("quotient has no image for generator " + name);
                auto & p = q.images[i - q.names.begin()];
                if (p.degree() != q.degree)
                    throw InputError("quotient image of " + name + " has the wrong degree");
                result.images.push_back(p);
            }
            return result;
        }
    }

    auto GammaN::as_extension() const -> HLExtension
    {
        vector<optional<Perm>> phi(Phi.begin(), Phi.end());
        return HLExtension{base, structure, pc, phi};
    }

    auto build_gamma_N(shared_ptr<const Structure> c, const FiniteQuotient & q, long cap) -> GammaN
    {
        auto pc = enumerate_partial_isos(c);
        return build_gamma_N(c, pc, q, {}, cap);
    }

    auto build_gamma_N(shared_ptr<const Structure> c, const PartialIsoSet & pc, const FiniteQuotient & q,
            const vector<vector<Perm>> & enlarge, long cap) -> GammaN
    {
        GammaN r;
        r.base = c;
        r.pc = pc;
        r.factorization = natural_factorization(*c);
        r.quotient = aligned_quotient(pc, q);
        r.group = quotient_group(r.quotient, cap);
        const auto & fact = r.factorization;
        const auto & elements = r.group.elements();
        int classes = int(fact.classes.size());
        auto index = [&] (const Perm & p) { return *r.group.index_of(p); };

        // cosets of each class, numbered by their least element
        vector<vector<int>> coset_of(classes, vector<int>(elements.size(), -1));
        vector<vector<int>> coset_rep(classes);
        for (int i = 0 ; i < classes ; ++i) {
            vector<Perm> gens;
            for (auto & w : stabilizer_generators(pc, fact.representatives[i]))
                gens.push_back(quotient_image(w, r.quotient));
            if (i < int(enlarge.size()))
                gens.insert(gens.end(), enlarge[i].begin(), enlarge[i].end());
            r.subgroups.push_back(close_group(q.degree, gens, cap));
            for (int g = 0 ; g < int(elements.size()) ; ++g) {
                if (coset_of[i][g] != -1)
                    continue;
                int id = int(coset_rep[i].size());
                coset_rep[i].push_back(g);
                for (auto & k : r.subgroups[i].elements()) {
                    auto gk = elements[g] * k;
                    auto j = r.group.index_of(gk);
                    if (! j)
                        throw VerificationFailure("subgroup leaves the quotient group");
                    coset_of[i][*j] = id;
                }
            }
        }

        // π first, so that C keeps its ids and order
        vector<Perm> pi_perm(c->size());
        vector<vector<int>> element_of(classes);
        for (int i = 0 ; i < classes ; ++i)
            element_of[i].assign(coset_rep[i].size(), -1);
        vector<string> names;
        for (int x = 0 ; x < c->size() ; ++x) {
            int i = fact.class_of[x];
            pi_perm[x] = quotient_image(member_word(pc, singleton_member(pc, fact.representatives[i], x)), r.quotient);
            int coset = coset_of[i][index(pi_perm[x])];
            if (element_of[i][coset] != -1)
                throw NotEmbedding(c->name(x) + " and " + names[element_of[i][coset]] + " land in the same coset");
            element_of[i][coset] = x;
            names.push_back(c->name(x));
            r.class_of.push_back(i);
            r.representative.push_back(coset_rep[i][coset]);
            r.pi.images.push_back(x);
        }

        // shortest words for the remaining cosets
        vector<optional<Word>> word_of(elements.size());
        {
            deque<int> queue{0};
            word_of[0] = Word{};
            while (! queue.empty()) {
                int h = queue.front();
                queue.pop_front();
                for (int g = 0 ; g < pc.generator_count() ; ++g)
                    for (int sign : {1, -1}) {
                        auto & im = r.quotient.images[g];
                        int j = index((sign == 1 ? im : im.inverse()) * elements[h]);
                        if (! word_of[j]) {
                            word_of[j] = Word::generator(g, sign) * *word_of[h];
                            queue.push_back(j);
                        }
                    }
            }
        }
        set<string> taken(names.begin(), names.end());
        for (int i = 0 ; i < classes ; ++i) {
            vector<int> best(coset_rep[i].size(), -1);
            for (int g = 0 ; g < int(elements.size()) ; ++g) {
                int coset = coset_of[i][g];
                auto better = [&] (int a, int b) {
                    return word_of[a]->size() < word_of[b]->size()
                        || (word_of[a]->size() == word_of[b]->size() && *word_of[a] < *word_of[b]);
                };
                if (best[coset] == -1 || better(g, best[coset]))
                    best[coset] = g;
            }
            for (int coset = 0 ; coset < int(coset_rep[i].size()) ; ++coset) {
                if (element_of[i][coset] != -1)
                    continue;
                string name = word_of[best[coset]]->to_string(r.quotient.names) + "*H" + std::to_string(i + 1);
                while (taken.contains(name))
                    name += "'";
                taken.insert(name);
                element_of[i][coset] = int(names.size());
                names.push_back(name);
                r.class_of.push_back(i);
                r.representative.push_back(coset_rep[i][coset]);
            }
        }

        auto element_for = [&] (int i, const Perm & g) { return element_of[i][coset_of[i][index(g)]]; };

        const auto & sig = c->signature();
        vector<set<Tuple>> tables(sig.size());
        for (int s = 0 ; s < sig.size() ; ++s)
            for (auto & t : c->table(s))
                for (auto & g : elements) {
                    Tuple image;
                    for (auto x : t)
                        image.push_back(element_for(fact.class_of[x], g * pi_perm[x]));
                    tables[s].insert(image);
                }
        r.structure = Structure{sig, names, tables};

        for (int k = 0 ; k < pc.size() ; ++k) {
            auto w = quotient_image(member_word(pc, k), r.quotient);
            vector<int> images;
            for (int x = 0 ; x < r.structure.size() ; ++x)
                images.push_back(element_for(r.class_of[x], w * elements[r.representative[x]]));
            r.Phi.emplace_back(images);
        }

        if (! is_embedding(*c, r.structure, r.pi))
            throw NotEmbedding("relations of C are not reflected by the coset structure");
        return r;
    }

    auto canonical_cover(const HLExtension & input, const vector<Structure> & forbidden, long cap) -> CoverResult
    {
        bool shrunk = ! is_minimal(input);
        auto e = shrunk ? shrink_to_closure(input) : input;
        const auto & d = e.ext;

        FiniteQuotient q;
        q.degree = d.size();
        q.names = e.pc.generator_names();
        q.images = e.generator_images();
        auto group = quotient_group(q, cap);

        auto fact = natural_factorization(*e.base);
        vector<vector<Perm>> enlarge;
        for (auto a : fact.representatives) {
            auto points = orbit(group, e.embed[a]);
            enlarge.push_back(pointwise_stabilizer(group, points));
        }

        CoverResult result;
        result.gamma = build_gamma_N(e.base, e.pc, q, enlarge, cap);
        result.shrunk = shrunk;
        auto & gamma = result.gamma;
        const auto & gs = gamma.structure;

        for (int i = 0 ; i < int(fact.classes.size()) ; ++i)
            for (auto & k : gamma.subgroups[i].elements())
                if (k(e.embed[fact.representatives[i]]) != e.embed[fact.representatives[i]])
                    throw VerificationFailure("coset subgroup moves its representative point");

        StructureMap psi;
        for (int x = 0 ; x < gs.size() ; ++x) {
            auto & g = gamma.group.elements()[gamma.representative[x]];
            psi.images.push_back(g(e.embed[fact.representatives[gamma.class_of[x]]]));
        }

        vector<char> hit(d.size(), 0);
        for (auto y : psi.images)
            hit[y] = 1;
        result.psi_onto = std::all_of(hit.begin(), hit.end(), [] (char h) { return h; });
        result.psi_homomorphism = is_homomorphism(gs, d, psi);
        result.commutes = true;
        for (int k = 0 ; k < e.pc.size() ; ++k)
            for (int x = 0 ; x < gs.size() ; ++x)
                if (e.image(k)(psi.images[x]) != psi.images[gamma.Phi[k](x)])
                    result.commutes = false;
        gamma.psi = psi;
        result.gamma_report = verify_hl_extension(gamma.as_extension(), forbidden);

        for (int x = 0 ; x < e.base->size() ; ++x)
            if (psi.images[gamma.pi.images[x]] != e.embed[x])
                throw VerificationFailure("psi does not send pi(c) to c");
        if (! result.psi_onto)
            throw VerificationFailure("psi is not onto");
        if (! result.psi_homomorphism)
            throw VerificationFailure("psi is not a homomorphism");
        if (! result.commutes)
            throw VerificationFailure("psi does not commute with the actions");
        if (! result.gamma_report.all())
            throw VerificationFailure("coset structure is not a T-free minimal HL-extension");
        return result;
    }

    namespace
    {
        auto same_coset(const Word & u, const Word & w, const PartialIsoSet & pc, Element a) -> bool
        {
            auto v = eval_partial_word(u.inverse() * w, a, pc);
            return v && *v == a;
        }
    }

    auto gamma_fragment(shared_ptr<const Structure> c, int radius, long cap) -> GammaFragment
    {
        if (radius < 0)
            throw InputError("radius must be non-negative");
        auto pc = enumerate_partial_isos(c);
        auto fact = natural_factorization(*c);
        auto names = pc.generator_names();

        vector<Word> words{Word{}};
        for (int level = 0, begin = 0 ; level < radius ; ++level) {
            int end = int(words.size());
            for (int j = begin ; j < end ; ++j)
                for (int g = 0 ; g < pc.generator_count() ; ++g)
                    for (int sign : {1, -1}) {
                        auto & w = words[j];
                        if (! w.empty() && w.letters().front() == Letter{g, -sign})
                            continue;
                        words.push_back(Word::generator(g, sign) * w);
                        if (long(words.size()) > cap)
                            throw CapExceeded("fragment exceeds " + std::to_string(cap) + " words");
                    }
            begin = end;
        }

        GammaFragment r;
        int classes = int(fact.classes.size());
        vector<vector<int>> cosets(classes);
        for (int i = 0 ; i < classes ; ++i)
            for (int j = 0 ; j < int(words.size()) ; ++j) {
                bool fresh = true;
                for (auto u : cosets[i])
                    if (same_coset(words[u], words[j], pc, fact.representatives[i])) {
                        fresh = false;
                        break;
                    }
                if (fresh)
                    cosets[i].push_back(j);
            }

        auto find_coset = [&] (int i, const Word & w) -> int {
            for (int k = 0 ; k < int(cosets[i].size()) ; ++k)
                if (same_coset(words[cosets[i][k]], w, pc, fact.representatives[i]))
                    return k;
            return -1;
        };

        vector<vector<int>> element_of(classes);
        for (int i = 0 ; i < classes ; ++i)
            for (int k = 0 ; k < int(cosets[i].size()) ; ++k) {
                auto & w = words[cosets[i][k]];
                string label = w.to_string(names) + "*H" + std::to_string(i + 1);
                for (auto x : fact.classes[i])
                    if (same_coset(member_word(pc, singleton_member(pc, fact.representatives[i], x)), w, pc,
                                fact.representatives[i]))
                        label = c->name(x);
                element_of[i].push_back(int(r.labels.size()));
                r.labels.push_back(label);
                r.class_of.push_back(i);
                r.words.push_back(w);
            }

        const auto & sig = c->signature();
        vector<set<Tuple>> tables(sig.size());
        for (int s = 0 ; s < sig.size() ; ++s)
            for (auto & t : c->table(s))
                for (auto & g : words) {
                    Tuple image;
                    for (auto x : t) {
                        int i = fact.class_of[x];
                        auto w = g * member_word(pc, singleton_member(pc, fact.representatives[i], x));
                        int k = find_coset(i, w);
                        if (k == -1)
                            break;
                        image.push_back(element_of[i][k]);
                    }
                    if (image.size() == t.size())
                        tables[s].insert(image);
                }
        r.structure = Structure{sig, r.labels, tables};
        return r;
    }
}
