/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <eppa/action_search.hh>

#include <algorithm>
#include <unordered_set>

using std::optional;
using std::pair;
using std::set;
using std::uint32_t;
using std::uint64_t;
using std::unordered_set;
using std::vector;

namespace eppa
{
    auto to_string(SearchStatus s) -> const char *
    {
        switch (s) {
            case SearchStatus::found:  return "found";
            case SearchStatus::none:   return "none";
            case SearchStatus::budget: return "budget";
        }
        return "?";
    }

    namespace
    {
        constexpr int max_points = 255;
        constexpr int max_arity = 8;

        auto pack(const vector<int> & entries) -> uint64_t
        {
            uint64_t result = 0;
            for (unsigned k = 0 ; k < entries.size() ; ++k)
                result |= uint64_t(entries[k]) << (8 * k);
            return result;
        }

        auto entry(uint64_t packed, int k) -> int
        {
            return int((packed >> (8 * k)) & 0xff);
        }

        struct Pattern
        {
            int size = 0;
            vector<pair<int, Tuple>> tuples;
            vector<vector<int>> tuples_of;
        };

        struct StoredTuple
        {
            int symbol;
            uint64_t packed;
        };

        class ActionSearcher
        {
            private:
                const ActionProblem & _problem;
                int _generators;
                vector<int> _arity;
                vector<Pattern> _patterns;

                int _bound = 0;
                int _n = 0;
                vector<vector<int>> _fwd, _bwd;
                vector<uint32_t> _region;

                vector<StoredTuple> _tuples;
                vector<unordered_set<uint64_t>> _present;
                vector<vector<int>> _incident;
                vector<pair<int, int>> _map_trail;
                vector<pair<int, int>> _map_queue;
                unsigned _processed = 0;

                long _nodes = 0;
                bool _out_of_budget = false;
                optional<ActionSolution> _solution;

                auto distinct_entries(const StoredTuple & t) const -> vector<int>
                {
                    vector<int> result;
                    for (int k = 0 ; k < _arity[t.symbol] ; ++k) {
                        int e = entry(t.packed, k);
                        if (std::find(result.begin(), result.end(), e) == result.end())
                            result.push_back(e);
                    }
                    return result;
                }

                auto add_tuple(int symbol, uint64_t packed, bool original) -> bool
                {
                    if (_present[symbol].contains(packed))
                        return true;
                    StoredTuple t{symbol, packed};
                    if (! original) {
                        uint32_t mask = ~uint32_t(0);
                        for (int k = 0 ; k < _arity[symbol] ; ++k)
                            mask &= _region[entry(packed, k)];
                        if (mask != 0)
                            return false;
                    }
                    _present[symbol].insert(packed);
                    int id = int(_tuples.size());
                    _tuples.push_back(t);
                    for (auto e : distinct_entries(t))
                        _incident[e].push_back(id);
                    return true;
                }

                auto assign(int g, int x, int y) -> void
                {
                    _fwd[g][x] = y;
                    _bwd[g][y] = x;
                    _map_trail.emplace_back(g, x);
                    _map_queue.emplace_back(g, x);
                }

                /// Image of a stored tuple under fwd or bwd of g, if defined.
                auto moved(const StoredTuple & t, const vector<int> & m, uint64_t & out) const -> bool
                {
                    out = 0;
                    for (int k = 0 ; k < _arity[t.symbol] ; ++k) {
                        int v = m[entry(t.packed, k)];
                        if (v == -1)
                            return false;
                        out |= uint64_t(v) << (8 * k);
                    }
                    return true;
                }

                auto propagate() -> bool
                {
                    while (_processed < _tuples.size() || ! _map_queue.empty()) {
                        if (! _map_queue.empty()) {
                            auto [g, x] = _map_queue.back();
                            _map_queue.pop_back();
                            int y = _fwd[g][x];
                            for (unsigned i = 0 ; i < _incident[x].size() ; ++i) {
                                auto t = _tuples[_incident[x][i]];
                                uint64_t image;
                                if (moved(t, _fwd[g], image) && ! add_tuple(t.symbol, image, false))
                                    return false;
                            }
                            for (unsigned i = 0 ; i < _incident[y].size() ; ++i) {
                                auto t = _tuples[_incident[y][i]];
                                uint64_t image;
                                if (moved(t, _bwd[g], image) && ! add_tuple(t.symbol, image, false))
                                    return false;
                            }
                        }
                        else {
                            auto t = _tuples[_processed++];
                            for (int g = 0 ; g < _generators ; ++g) {
                                uint64_t image;
                                if (moved(t, _fwd[g], image) && ! add_tuple(t.symbol, image, false))
                                    return false;
                                if (moved(t, _bwd[g], image) && ! add_tuple(t.symbol, image, false))
                                    return false;
                            }
                        }
                    }
                    return true;
                }

                auto pattern_tuple_holds(const Pattern & pt, int ti, const vector<int> & val) const -> bool
                {
                    auto & [symbol, t] = pt.tuples[ti];
                    uint64_t packed = 0;
                    for (unsigned k = 0 ; k < t.size() ; ++k)
                        packed |= uint64_t(val[t[k]]) << (8 * k);
                    return _present[symbol].contains(packed);
                }

                auto extend_pattern(const Pattern & pt, vector<int> & val) const -> bool
                {
                    int next = -1;
                    for (int x = 0 ; x < pt.size && next == -1 ; ++x)
                        if (val[x] == -1)
                            for (auto ti : pt.tuples_of[x])
                                for (auto e : pt.tuples[ti].second)
                                    if (val[e] != -1)
                                        next = x;
                    if (next == -1)
                        for (int x = 0 ; x < pt.size && next == -1 ; ++x)
                            if (val[x] == -1)
                                next = x;
                    if (next == -1)
                        return true;

                    vector<int> candidates;
                    bool anchored = false;
                    for (auto ti : pt.tuples_of[next]) {
                        auto & [symbol, t] = pt.tuples[ti];
                        int anchor_pos = -1, pos = -1;
                        for (unsigned k = 0 ; k < t.size() ; ++k) {
                            if (val[t[k]] != -1 && anchor_pos == -1)
                                anchor_pos = int(k);
                            if (t[k] == next && pos == -1)
                                pos = int(k);
                        }
                        if (anchor_pos == -1)
                            continue;
                        int anchor = val[t[anchor_pos]];
                        for (auto id : _incident[anchor]) {
                            auto & s = _tuples[id];
                            if (s.symbol == symbol && entry(s.packed, anchor_pos) == anchor)
                                candidates.push_back(entry(s.packed, pos));
                        }
                        anchored = true;
                        break;
                    }
                    if (anchored) {
                        std::sort(candidates.begin(), candidates.end());
                        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
                    }
                    else
                        for (int v = 0 ; v < _n ; ++v)
                            candidates.push_back(v);

                    for (auto v : candidates) {
                        val[next] = v;
                        bool ok = true;
                        for (auto ti : pt.tuples_of[next]) {
                            auto & t = pt.tuples[ti].second;
                            if (std::all_of(t.begin(), t.end(), [&] (int e) { return val[e] != -1; })
                                    && ! pattern_tuple_holds(pt, ti, val)) {
                                ok = false;
                                break;
                            }
                        }
                        if (ok && extend_pattern(pt, val))
                            return true;
                    }
                    val[next] = -1;
                    return false;
                }

                /// Whether some pattern maps in using stored tuple `id`.
                auto pattern_through(int id) const -> bool
                {
                    auto & s = _tuples[id];
                    for (auto & pt : _patterns)
                        for (int ti = 0 ; ti < int(pt.tuples.size()) ; ++ti) {
                            auto & [symbol, t] = pt.tuples[ti];
                            if (symbol != s.symbol)
                                continue;
                            vector<int> val(pt.size, -1);
                            bool ok = true;
                            for (unsigned k = 0 ; k < t.size() && ok ; ++k) {
                                int v = entry(s.packed, int(k));
                                if (val[t[k]] == -1)
                                    val[t[k]] = v;
                                else if (val[t[k]] != v)
                                    ok = false;
                            }
                            if (ok && extend_pattern(pt, val))
                                return true;
                        }
                    return false;
                }

                auto any_pattern() const -> bool
                {
                    for (auto & pt : _patterns) {
                        if (pt.size > 0 && _n == 0)
                            continue;
                        vector<int> val(pt.size, -1);
                        if (extend_pattern(pt, val))
                            return true;
                    }
                    return false;
                }

                auto relators_hold() const -> bool
                {
                    for (auto & w : _problem.relators)
                        for (int x = 0 ; x < _n ; ++x) {
                            int v = x;
                            auto & letters = w.letters();
                            for (auto i = letters.rbegin() ; i != letters.rend() && v != -1 ; ++i)
                                v = (i->sign == 1 ? _fwd : _bwd)[i->generator][v];
                            if (v != -1 && v != x)
                                return false;
                        }
                    return true;
                }

                auto undo(unsigned map_mark, unsigned tuple_mark, int points) -> void
                {
                    while (_map_trail.size() > map_mark) {
                        auto [g, x] = _map_trail.back();
                        _map_trail.pop_back();
                        _bwd[g][_fwd[g][x]] = -1;
                        _fwd[g][x] = -1;
                    }
                    while (_tuples.size() > tuple_mark) {
                        auto t = _tuples.back();
                        for (auto e : distinct_entries(t))
                            _incident[e].pop_back();
                        _present[t.symbol].erase(t.packed);
                        _tuples.pop_back();
                    }
                    _processed = std::min<unsigned>(_processed, tuple_mark);
                    _map_queue.clear();
                    _n = points;
                }

                auto leaf() -> bool
                {
                    vector<Perm> perms;
                    for (int g = 0 ; g < _generators ; ++g)
                        perms.emplace_back(vector<int>(_fwd[g].begin(), _fwd[g].begin() + _n));
                    if (_problem.accept && ! _problem.accept(perms, _n))
                        return false;

                    ActionSolution s;
                    s.size = _n;
                    s.perms = std::move(perms);
                    s.tables.resize(_problem.signature.size());
                    for (auto & t : _tuples) {
                        Tuple entries;
                        for (int k = 0 ; k < _arity[t.symbol] ; ++k)
                            entries.push_back(entry(t.packed, k));
                        s.tables[t.symbol].insert(entries);
                    }
                    _solution = std::move(s);
                    return true;
                }

                auto recurse() -> bool
                {
                    if (++_nodes > _problem.budget) {
                        _out_of_budget = true;
                        return false;
                    }

                    int slot_x = -1, slot_g = -1;
                    bool forward = true;
                    for (int x = 0 ; x < _n && slot_x == -1 ; ++x)
                        for (int g = 0 ; g < _generators && slot_x == -1 ; ++g) {
                            if (_fwd[g][x] == -1) {
                                slot_x = x; slot_g = g; forward = true;
                            }
                            else if (_bwd[g][x] == -1) {
                                slot_x = x; slot_g = g; forward = false;
                            }
                        }
                    if (slot_x == -1)
                        return leaf();

                    auto & taken = forward ? _bwd[slot_g] : _fwd[slot_g];
                    int last = _n < _bound ? _n : _n - 1;
                    for (int y = 0 ; y <= last ; ++y) {
                        if (y < _n && taken[y] != -1)
                            continue;
                        unsigned map_mark = _map_trail.size(), tuple_mark = _tuples.size();
                        int points = _n;
                        if (y == _n)
                            ++_n;
                        if (forward)
                            assign(slot_g, slot_x, y);
                        else
                            assign(slot_g, y, slot_x);

                        bool ok = propagate();
                        for (unsigned id = tuple_mark ; ok && id < _tuples.size() ; ++id)
                            if (pattern_through(int(id)))
                                ok = false;
                        if (ok)
                            ok = relators_hold();
                        if (ok && recurse())
                            return true;
                        undo(map_mark, tuple_mark, points);
                        if (_out_of_budget)
                            return false;
                    }
                    return false;
                }

            public:
                explicit ActionSearcher(const ActionProblem & problem) :
                    _problem(problem),
                    _generators(int(problem.generator_maps.size()))
                {
                    if (problem.max_size > max_points)
                        throw InputError("search bound above " + std::to_string(max_points) + " points");
                    for (auto & s : problem.signature.symbols()) {
                        if (s.arity > max_arity)
                            throw InputError("search supports arity at most " + std::to_string(max_arity));
                        _arity.push_back(s.arity);
                    }
                    for (auto & t : problem.forbidden) {
                        if (t.signature() != problem.signature)
                            throw SignatureMismatch("forbidden structure");
                        Pattern pt;
                        pt.size = t.size();
                        pt.tuples_of.resize(t.size());
                        for (int s = 0 ; s < t.signature().size() ; ++s)
                            for (auto & tuple : t.table(s)) {
                                int ti = int(pt.tuples.size());
                                pt.tuples.emplace_back(s, tuple);
                                vector<int> seen;
                                for (auto e : tuple)
                                    if (std::find(seen.begin(), seen.end(), e) == seen.end()) {
                                        seen.push_back(e);
                                        pt.tuples_of[e].push_back(ti);
                                    }
                            }
                        _patterns.push_back(std::move(pt));
                    }
                }

                auto run() -> ActionResult
                {
                    ActionResult result;
                    // nothing smaller than the start can contain it
                    result.refuted_up_to = _problem.initial_size - 1;
                    int slots = std::max(_problem.max_size, _problem.initial_size);
                    for (_bound = _problem.initial_size ; _bound <= std::max(_problem.max_size, _problem.initial_size) ; ++_bound) {
                        _fwd.assign(_generators, vector<int>(slots, -1));
                        _bwd.assign(_generators, vector<int>(slots, -1));
                        _region.assign(slots, 0);
                        for (int x = 0 ; x < _problem.initial_size ; ++x)
                            _region[x] = x < int(_problem.regions.size()) ? _problem.regions[x] : 0;
                        _present.assign(_problem.signature.size(), {});
                        _incident.assign(slots, {});
                        _tuples.clear();
                        _map_trail.clear();
                        _map_queue.clear();
                        _processed = 0;
                        _n = _problem.initial_size;

                        for (int s = 0 ; s < _problem.signature.size() ; ++s)
                            for (auto & t : _problem.initial_tables[s])
                                add_tuple(s, pack(t), true);

                        bool ok = true;
                        for (int g = 0 ; g < _generators && ok ; ++g)
                            for (auto & [x, y] : _problem.generator_maps[g]) {
                                if (x < 0 || y < 0 || x >= _n || y >= _n)
                                    throw InputError("generator map outside the initial points");
                                if (_fwd[g][x] == y)
                                    continue;
                                if (_fwd[g][x] != -1 || _bwd[g][y] != -1) {
                                    ok = false;
                                    break;
                                }
                                assign(g, x, y);
                            }
                        if (ok)
                            ok = propagate() && ! any_pattern() && relators_hold();
                        if (! ok) {
                            // nothing here depends on the bound
                            result.refuted_up_to = std::max(_problem.max_size, _problem.initial_size);
                            break;
                        }

                        if (recurse()) {
                            result.status = SearchStatus::found;
                            result.solution = std::move(_solution);
                            break;
                        }
                        if (_out_of_budget) {
                            result.status = SearchStatus::budget;
                            break;
                        }
                        result.refuted_up_to = _bound;
                    }
                    result.nodes = _nodes;
                    return result;
                }
        };
    }

    auto search_action(const ActionProblem & problem) -> ActionResult
    {
        if (int(problem.initial_tables.size()) != problem.signature.size())
            throw InputError("initial tables do not match the signature");
        return ActionSearcher{problem}.run();
    }
}
