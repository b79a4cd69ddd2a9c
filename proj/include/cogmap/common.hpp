#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cogmap {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
public:
    DimensionError(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)),
          expected(expected),
          got(got) {}
    std::size_t expected;
    std::size_t got;
};

class EmptyTextError : public Error {
public:
    EmptyTextError() : Error("text is empty after whitespace trim") {}
};

// HTTP-level failure talking to a remote service. Carries the status code
// (0 when the connection itself failed) and whether a retry is worthwhile.
class TransportError : public Error {
public:
    TransportError(const std::string& what, int status, bool retryable)
        : Error(what + " (status " + std::to_string(status) + ")"),
          status(status),
          retryable(retryable) {}
    int status;
    bool retryable;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

// Persisted file has the wrong schema version or fails validation.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

class ChecksumError : public Error {
public:
    explicit ChecksumError(const std::string& what) : Error(what) {}
};

class UnknownStateError : public Error {
public:
    explicit UnknownStateError(int id) : Error("unknown state id " + std::to_string(id)) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

class BackendError : public Error {
public:
    explicit BackendError(const std::string& what) : Error(what) {}
};

// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so results do not depend on the standard library's distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

private:
    std::uint64_t state_;
};

// FNV-1a over bytes; used for stub-embedder seeding and file checksums.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xCBF29CE484222325ull) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string trim(std::string_view s);

// Number of Unicode scalar values in a UTF-8 string (continuation bytes are
// not counted; malformed bytes count as one scalar each).
std::size_t utf8_length(std::string_view s);

std::string to_hex(std::uint64_t v);

}  // namespace cogmap
