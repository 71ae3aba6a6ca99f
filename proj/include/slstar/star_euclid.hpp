#pragma once

#include <optional>
#include <vector>

#include "slstar/ring.hpp"

namespace slstar {

// x·a + y·c = 1, witnessing Aa + Ac = A
struct CoprimeCertificate {
    Element x, y;
};

// one step a = s·c + r with s symmetric
struct DivisionStep {
    Element s, r;
};

// r_{i-1} = s_i r_i + r_{i+1} with r_{-1} = a, r_0 = c, final remainder a unit
struct DivisionChain {
    Element a, c;
    std::vector<DivisionStep> steps;
};

enum class DivideFail {
    NotCoprime,
    SymmetryViolation,
    SearchExhausted,
    NotStarEuclidean,
    WrongCharacteristic,
    Unsupported,
    PostconditionViolation,
    HypothesesNotMet,
};

struct DivideError : std::runtime_error {
    DivideFail fail;
    DivideError(DivideFail f, const std::string& what) : std::runtime_error(what), fail(f) {}
};

// full enumeration witness that no symmetric s makes a - s·c a unit
struct ExhaustionCertificate {
    uint64_t symmetric_count = 0;
    uint64_t unit_remainders = 0;
    bool certified = false;  // false when a valid step exists (certificate refused)
};

std::optional<CoprimeCertificate> check_coprime(const Element& a, const Element& c);
bool derive_symmetry(const Element& a, const Element& c);

// verifies s* = s, a = s·c + r and r invertible
void verify_step(const Element& a, const Element& c, const DivisionStep& st);

DivisionStep divide_field_matrix(const Element& a, const Element& c, uint64_t seed = 1);
DivisionStep divide_two_local(const Element& a, const Element& c);
DivisionStep divide_char2_quat(const Element& a, const Element& c);
DivisionStep divide_lift(const Element& a, const Element& c, uint64_t seed = 1);

// dispatching entry point; always returns a verified length-1 chain
DivisionChain divide(const Element& a, const Element& c, uint64_t seed = 1);

// iterated-step driver for experimentation; hard cap on chain length
DivisionChain divide_chain(const Element& a, const Element& c, uint64_t seed = 1,
                           unsigned max_steps = 8);

ExhaustionCertificate certify_not_star_euclidean(const Element& a, const Element& c);

// symmetric elements of a finite ring ordered by (support size, index);
// cached per ring
const std::vector<Element>& symmetric_sweep_order(const Ring& r);

// deterministic pseudo-random symmetric element with entries of bounded height
Element random_symmetric(const Ring& r, Rng& rng, int64_t height);
// deterministic pseudo-random element with entries of bounded height
Element random_element(const Ring& r, Rng& rng, int64_t height);

}  // namespace slstar
