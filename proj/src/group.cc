/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/group.hh>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using std::deque;
using std::map;
using std::nullopt;
using std::optional;
using std::set;
using std::string;
using std::vector;

namespace eppa
{
    Word::Word(const vector<Letter> & letters)
    {
        for (auto & l : letters) {
            if (l.sign != 1 && l.sign != -1)
                throw InputError("letter sign must be +1 or -1");
            if (! _letters.empty() && _letters.back() == l.inverse())
                _letters.pop_back();
            else
                _letters.push_back(l);
        }
    }

    auto Word::inverse() const -> Word
    {
        vector<Letter> result;
        for (auto i = _letters.rbegin() ; i != _letters.rend() ; ++i)
            result.push_back(i->inverse());
        return Word{result};
    }

    auto Word::operator* (const Word & other) const -> Word
    {
        vector<Letter> joined = _letters;
        joined.insert(joined.end(), other._letters.begin(), other._letters.end());
        return Word{joined};
    }

    auto Word::to_string(const vector<string> & names) const -> string
    {
        if (_letters.empty())
            return "1";
        string result;
        for (auto & l : _letters) {
            if (! result.empty())
                result += " ";
            result += (l.generator < int(names.size()) ? names[l.generator] : "g" + std::to_string(l.generator));
            if (l.sign == -1)
                result += "^-1";
        }
        return result;
    }

    auto Word::parse(const string & text, const vector<string> & names) -> Word
    {
        std::istringstream in{text};
        string token;
        vector<Letter> letters;
        while (in >> token) {
            if (token == "1")
                continue;
            int sign = 1;
            if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
                sign = -1;
                token = token.substr(0, token.size() - 3);
            }
            auto i = std::find(names.begin(), names.end(), token);
            if (i == names.end())
                throw InputError("unknown generator '" + token + "' in word '" + text + "'");
            letters.push_back(Letter{int(i - names.begin()), sign});
        }
        return Word{letters};
    }

    auto word_of_members(const PartialIsoSet & ps, const vector<int> & members) -> Word
    {
        vector<Letter> letters;
        for (auto k : members)
            letters.push_back(Letter{ps.generator_of(k), ps.sign_of(k)});
        return Word{letters};
    }

    auto parse_member_word(const string & text, const PartialIsoSet & ps) -> Word
    {
        std::istringstream in{text};
        string token;
        vector<Letter> letters;
        while (in >> token) {
            if (token == "1")
                continue;
            int sign = 1;
            if (token.size() > 3 && token.substr(token.size() - 3) == "^-1") {
                sign = -1;
                token = token.substr(0, token.size() - 3);
            }
            if (token.size() < 2 || token[0] != 'p' || ! std::all_of(token.begin() + 1, token.end(), ::isdigit))
                throw InputError("bad letter '" + token + "' in word '" + text + "'");
            int k = std::stoi(token.substr(1));
            if (k >= ps.size())
                throw InputError("member index " + std::to_string(k) + " out of range");
            letters.push_back(Letter{ps.generator_of(k), ps.sign_of(k) * sign});
        }
        return Word{letters};
    }

    auto eval_partial_word(const Word & w, Element a, const PartialIsoSet & ps) -> optional<Element>
    {
        optional<Element> current = a;
        const auto & letters = w.letters();
        for (auto i = letters.rbegin() ; i != letters.rend() && current ; ++i) {
            int member = ps.generator_member(i->generator);
            if (i->sign == -1)
                member = ps.inverse_of(member);
            current = ps[member].apply(*current);
        }
        return current;
    }

    auto stabilizer_generators(const PartialIsoSet & ps, Element a) -> vector<Word>
    {
        const auto & c = ps.base();
        vector<optional<Word>> tree(c.size());
        // (tail of the positive edge, generator) for every tree edge
        set<std::pair<Element, int>> tree_edges;
        tree[a] = Word{};
        deque<Element> queue{a};
        vector<Element> visited;

        while (! queue.empty()) {
            Element v = queue.front();
            queue.pop_front();
            visited.push_back(v);
            for (int g = 0 ; g < ps.generator_count() ; ++g)
                for (int sign : {1, -1}) {
                    int member = ps.generator_member(g);
                    if (sign == -1)
                        member = ps.inverse_of(member);
                    auto w = ps[member].apply(v);
                    if (! w || tree[*w])
                        continue;
                    tree[*w] = Word::generator(g, sign) * *tree[v];
                    tree_edges.emplace(sign == 1 ? v : *w, g);
                    queue.push_back(*w);
                }
        }

        std::sort(visited.begin(), visited.end());
        vector<Word> result;
        set<Word> seen;
        for (auto v : visited)
            for (int g = 0 ; g < ps.generator_count() ; ++g) {
                auto w = ps[ps.generator_member(g)].apply(v);
                if (! w || tree_edges.contains({v, g}))
                    continue;
                auto word = tree[*w]->inverse() * Word::generator(g) * *tree[v];
                if (! word.empty() && seen.insert(word).second)
                    result.push_back(word);
            }
        return result;
    }

    auto stabilizer_generators(const Structure & c, const PartialIsoSet & ps, Element a) -> vector<Word>
    {
        if (a < 0 || a >= c.size())
            throw InputError("stabilizer point out of range");
        return stabilizer_generators(ps, a);
    }

    Perm::Perm(vector<int> images) :
        _images(std::move(images))
    {
        vector<bool> hit(_images.size(), false);
        for (auto x : _images) {
            if (x < 0 || x >= int(_images.size()) || hit[x])
                throw InputError("image list is not a permutation");
            hit[x] = true;
        }
    }

    auto Perm::identity(int degree) -> Perm
    {
        vector<int> images(degree);
        std::iota(images.begin(), images.end(), 0);
        return Perm{images};
    }

    auto Perm::operator* (const Perm & other) const -> Perm
    {
        if (degree() != other.degree())
            throw InputError("composing permutations of different degree");
        Perm result;
        result._images.resize(_images.size());
        for (int x = 0 ; x < degree() ; ++x)
            result._images[x] = _images[other._images[x]];
        return result;
    }

    auto Perm::inverse() const -> Perm
    {
        Perm result;
        result._images.resize(_images.size());
        for (int x = 0 ; x < degree() ; ++x)
            result._images[_images[x]] = x;
        return result;
    }

    auto Perm::is_identity() const -> bool
    {
        for (int x = 0 ; x < degree() ; ++x)
            if (_images[x] != x)
                return false;
        return true;
    }

    auto Perm::order() const -> long
    {
        long result = 1;
        vector<bool> seen(_images.size(), false);
        for (int x = 0 ; x < degree() ; ++x) {
            if (seen[x])
                continue;
            long length = 0;
            for (int y = x ; ! seen[y] ; y = _images[y]) {
                seen[y] = true;
                ++length;
            }
            result = std::lcm(result, length);
        }
        return result;
    }

    PermGroup::PermGroup(int degree, vector<Perm> generators, vector<Perm> elements) :
        _degree(degree),
        _generators(std::move(generators)),
        _elements(std::move(elements))
    {
        std::sort(_elements.begin(), _elements.end());
    }

    auto PermGroup::contains(const Perm & p) const -> bool
    {
        return std::binary_search(_elements.begin(), _elements.end(), p);
    }

    auto PermGroup::index_of(const Perm & p) const -> optional<int>
    {
        auto i = std::lower_bound(_elements.begin(), _elements.end(), p);
        if (i == _elements.end() || *i != p)
            return nullopt;
        return int(i - _elements.begin());
    }

    auto close_group(int degree, const vector<Perm> & generators, long cap) -> PermGroup
    {
        for (auto & g : generators)
            if (g.degree() != degree)
                throw InputError("generator degree does not match carrier");

        set<Perm> seen{Perm::identity(degree)};
        deque<Perm> queue{Perm::identity(degree)};
        while (! queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (auto & g : generators) {
                auto y = g * x;
                if (seen.insert(y).second) {
                    if (long(seen.size()) > cap)
                        throw CapExceeded("group closure exceeds " + std::to_string(cap) + " elements");
                    queue.push_back(std::move(y));
                }
            }
        }
        return PermGroup{degree, generators, vector<Perm>(seen.begin(), seen.end())};
    }

    auto orbit(int degree, const vector<Perm> & generators, int point) -> vector<int>
    {
        if (point < 0 || point >= degree)
            throw InputError("orbit point outside carrier");
        vector<bool> seen(degree, false);
        seen[point] = true;
        deque<int> queue{point};
        while (! queue.empty()) {
            int x = queue.front();
            queue.pop_front();
            for (auto & g : generators)
                for (int y : {g(x), g.inverse()(x)})
                    if (! seen[y]) {
                        seen[y] = true;
                        queue.push_back(y);
                    }
        }
        vector<int> result;
        for (int x = 0 ; x < degree ; ++x)
            if (seen[x])
                result.push_back(x);
        return result;
    }

    auto orbit(const PermGroup & g, int point) -> vector<int>
    {
        return orbit(g.degree(), g.generators(), point);
    }

    auto pointwise_stabilizer(const PermGroup & g, const vector<int> & points) -> vector<Perm>
    {
        vector<Perm> result;
        for (auto & e : g.elements())
            if (std::all_of(points.begin(), points.end(), [&] (int x) { return e(x) == x; }))
                result.push_back(e);
        return result;
    }

    auto quotient_image(const Word & w, const FiniteQuotient & q) -> Perm
    {
        auto result = Perm::identity(q.degree);
        for (auto & l : w.letters()) {
            if (l.generator < 0 || l.generator >= int(q.images.size()))
                throw InputError("quotient has no image for generator " + std::to_string(l.generator));
            result = result * (l.sign == 1 ? q.images[l.generator] : q.images[l.generator].inverse());
        }
        return result;
    }

    auto subgroup_image(const vector<Word> & gens, const FiniteQuotient & q, long cap) -> PermGroup
    {
        vector<Perm> images;
        for (auto & w : gens)
            images.push_back(quotient_image(w, q));
        return close_group(q.degree, images, cap);
    }

    auto quotient_group(const FiniteQuotient & q, long cap) -> PermGroup
    {
        return close_group(q.degree, q.images, cap);
    }
}
