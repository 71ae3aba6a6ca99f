#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace slstar {

// Thrown with a byte offset into the offending text.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

enum class RingKind {
    PrimeField,     // GF(p)
    FiniteField,    // GF(p^k), k > 1
    ResidueRing,    // Z/(p^k)
    TruncatedPoly,  // Trunc(GF(q),k) = GF(q)[t]/(t^k)
    Rationals,      // Q
    RationalQuat,   // Quat, (-1,-1)/Q
    QuadExtField,   // Quad(GF(q),k=2) with Frobenius
    QuadExtQ,       // Quad(Q,d) with sqrt(d) -> -sqrt(d)
    Product,        // Prod(R,R) with flip involution
    Matrix,         // Mat(n,R) with *-transpose
    SplitQuat,      // SplitQuat(R) = M(2,R) with h* = J h^t J^{-1}
    PolyRing,       // Poly(GF(q)) = GF(q)[t]
    RatFunField,    // RatFun(GF(q)) = GF(q)(t)
    Integers,       // internal: Z (adelic tails)
};

enum class InvolutionTag {
    Trivial,
    Galois,
    Flip,
    StarTranspose,
    JConjugation,
    QuaternionConjugation,
};

// Constructor tree naming a concrete involutive ring instance.
struct Descriptor;
using DescriptorPtr = std::shared_ptr<const Descriptor>;

struct Descriptor {
    RingKind kind;
    uint64_t p = 0;   // prime (PrimeField/FiniteField/ResidueRing)
    uint64_t k = 1;   // exponent / truncation order
    int64_t d = 0;    // square-free integer for Quad(Q,d)
    uint64_t n = 1;   // matrix size
    std::vector<DescriptorPtr> sub;

    InvolutionTag involution() const;
    bool is_finite() const;
    bool is_commutative() const;
    // characteristic; 0 for char-zero kinds
    uint64_t characteristic() const;
    std::string str() const;

    bool operator==(const Descriptor& o) const { return str() == o.str(); }
};

DescriptorPtr make_prime_field(uint64_t p);
DescriptorPtr make_finite_field(uint64_t p, uint64_t k);
DescriptorPtr make_gf(uint64_t q);  // q = p^k, factored automatically
DescriptorPtr make_residue_ring(uint64_t p, uint64_t k);
DescriptorPtr make_trunc(DescriptorPtr gf, uint64_t k);
DescriptorPtr make_rationals();
DescriptorPtr make_rational_quat();
DescriptorPtr make_quad_gf(DescriptorPtr gf);
DescriptorPtr make_quad_q(int64_t d);
DescriptorPtr make_product(DescriptorPtr r);
DescriptorPtr make_matrix(uint64_t n, DescriptorPtr base);
DescriptorPtr make_split_quat(DescriptorPtr base);
DescriptorPtr make_poly_ring(DescriptorPtr gf);
DescriptorPtr make_ratfun(DescriptorPtr gf);
DescriptorPtr make_integers();

// Exact textual grammar:
//   GF(p) | GF(p^k) | Z/(p^k) | Trunc(GF(q),k) | Q | Quat | Quad(GF(q),k=2)
//   | Quad(Q,d) | Prod(R,R) | Mat(n,R) | SplitQuat(R)
// plus the extensions Poly(GF(q)) and RatFun(GF(q)).
DescriptorPtr parse_descriptor(const std::string& text);

}  // namespace slstar
