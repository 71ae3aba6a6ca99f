#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace slstar {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Deterministic splittable RNG; all randomized searches derive their streams
// from a user-visible seed so that reports replay bit-for-bit.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // uniform in [-b, b]
    int64_t centered(int64_t b) {
        return static_cast<int64_t>(below(2 * static_cast<uint64_t>(b) + 1)) - b;
    }

    Rng split(uint64_t salt) const {
        Rng r(state ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        r.next();
        return r;
    }
};

// FNV-1a, used for report integrity footers.
inline uint64_t fnv1a64(const std::string& s, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace slstar
