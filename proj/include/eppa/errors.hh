/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef EPPA_GUARD_EPPA_ERRORS_HH
#define EPPA_GUARD_EPPA_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace eppa
{
    /// Malformed input: bad ids, arity mismatch, unknown names, bad files.
    class InputError : public std::runtime_error
    {
        public:
            explicit InputError(const std::string & what) : std::runtime_error(what) {}
    };

    class SignatureMismatch : public InputError
    {
        public:
            explicit SignatureMismatch(const std::string & what) : InputError("signature mismatch: " + what) {}
    };

    /// A configurable size cap (closure, enumeration, combinatorial) was hit.
    class CapExceeded : public std::runtime_error
    {
        public:
            explicit CapExceeded(const std::string & what) : std::runtime_error("cap exceeded: " + what) {}
    };

    /// The coset map from C into a quotient structure is not an embedding.
    class NotEmbedding : public std::runtime_error
    {
        public:
            explicit NotEmbedding(const std::string & what) : std::runtime_error("pi-not-embedding: " + what) {}
    };

    /// A check that holds by construction came out false.
    class VerificationFailure : public std::runtime_error
    {
        public:
            explicit VerificationFailure(const std::string & what) : std::runtime_error("verification failure: " + what) {}
    };
}

#endif
