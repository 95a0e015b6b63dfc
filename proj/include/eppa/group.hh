/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_GROUP_HH
#define EPPA_GUARD_EPPA_GROUP_HH 1

#include <eppa/partial_iso.hh>

#include <optional>
#include <string>
#include <vector>

namespace eppa
{
    struct Letter
    {
        int generator;
        int sign;

        auto inverse() const -> Letter { return Letter{generator, -sign}; }
        auto operator<=>(const Letter &) const = default;
    };

    /// A freely reduced word over abstract generators 0..k-1. The leftmost
    /// letter is applied last.
    class Word
    {
        private:
            std::vector<Letter> _letters;

        public:
            Word() = default;
            /// Reduces its input.
            explicit Word(const std::vector<Letter> & letters);

            static auto generator(int g, int sign = 1) -> Word { return Word{{Letter{g, sign}}}; }

            auto letters() const -> const std::vector<Letter> & { return _letters; }
            auto size() const -> int { return int(_letters.size()); }
            auto empty() const -> bool { return _letters.empty(); }
            auto inverse() const -> Word;
            auto operator* (const Word & other) const -> Word;

            /// "p3 p1^-1 p3"; the empty word is "1".
            auto to_string(const std::vector<std::string> & names) const -> std::string;
            /// Accepts names and name^-1 separated by spaces; "1" or "" is empty.
            static auto parse(const std::string & text, const std::vector<std::string> & names) -> Word;

            auto operator<=>(const Word &) const = default;
    };

    /// Word over the generators of `ps` spelling the member sequence
    /// p_1 ... p_m (member indices into ps).
    auto word_of_members(const PartialIsoSet & ps, const std::vector<int> & members) -> Word;

    /// Parses a word over P_C whose tokens are "p<k>" or "p<k>^-1" for any
    /// member index k.
    auto parse_member_word(const std::string & text, const PartialIsoSet & ps) -> Word;

    /// Right-to-left partial evaluation of a reduced word.
    auto eval_partial_word(const Word & w, Element a, const PartialIsoSet & ps) -> std::optional<Element>;

    /// Schreier generators of {g : g(a) = a} from a breadth-first spanning
    /// tree of the component of a in the graph with edges x -> p(x).
    auto stabilizer_generators(const PartialIsoSet & ps, Element a) -> std::vector<Word>;
    auto stabilizer_generators(const Structure & c, const PartialIsoSet & ps, Element a) -> std::vector<Word>;

    class Perm
    {
        private:
            std::vector<int> _images;

        public:
            Perm() = default;
            /// Throws InputError if not a bijection of 0..n-1.
            explicit Perm(std::vector<int> images);

            static auto identity(int degree) -> Perm;

            auto degree() const -> int { return int(_images.size()); }
            auto images() const -> const std::vector<int> & { return _images; }
            auto operator() (int x) const -> int { return _images[x]; }
            /// (σ·τ)(x) = σ(τ(x))
            auto operator* (const Perm & other) const -> Perm;
            auto inverse() const -> Perm;
            auto is_identity() const -> bool;
            auto order() const -> long;

            auto operator<=>(const Perm &) const = default;
    };

    class PermGroup
    {
        private:
            int _degree = 0;
            std::vector<Perm> _generators;
            std::vector<Perm> _elements;

        public:
            PermGroup() = default;
            PermGroup(int degree, std::vector<Perm> generators, std::vector<Perm> elements);

            auto degree() const -> int { return _degree; }
            auto generators() const -> const std::vector<Perm> & { return _generators; }
            /// Sorted; element 0 is the identity.
            auto elements() const -> const std::vector<Perm> & { return _elements; }
            auto order() const -> long { return long(_elements.size()); }
            auto contains(const Perm & p) const -> bool;
            auto index_of(const Perm & p) const -> std::optional<int>;
    };

    /// Breadth-first closure. Throws CapExceeded beyond `cap` elements.
    auto close_group(int degree, const std::vector<Perm> & generators, long cap = 20000) -> PermGroup;

    auto orbit(const PermGroup & g, int point) -> std::vector<int>;
    auto orbit(int degree, const std::vector<Perm> & generators, int point) -> std::vector<int>;

    /// Elements fixing every point of `points`.
    auto pointwise_stabilizer(const PermGroup & g, const std::vector<int> & points) -> std::vector<Perm>;

    /// Images of the free generators as permutations of a degree-k set.
    struct FiniteQuotient
    {
        int degree = 0;
        std::vector<std::string> names;
        std::vector<Perm> images;
    };

    /// Throws InputError if a letter has no image.
    auto quotient_image(const Word & w, const FiniteQuotient & q) -> Perm;
    auto subgroup_image(const std::vector<Word> & gens, const FiniteQuotient & q, long cap = 20000) -> PermGroup;
    auto quotient_group(const FiniteQuotient & q, long cap = 20000) -> PermGroup;
}

#endif
