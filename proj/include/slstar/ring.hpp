#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "slstar/descriptor.hpp"
#include "slstar/numeric.hpp"

namespace slstar {

class Ring;

// Canonical-form value in a ring instance. Which members are populated
// depends on the ring kind; equality is representation equality.
struct Element {
    const Ring* ring = nullptr;
    BigInt z;                  // residue / integer kinds
    std::vector<Rational> q;   // rational coordinate kinds (Q:1, Quat:4)
    std::vector<Element> sub;  // coefficients, components, matrix entries

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }
};

struct DescriptorMismatch : std::runtime_error {
    DescriptorMismatch() : std::runtime_error("elements belong to different rings") {}
};
struct InfiniteRingError : std::runtime_error {
    InfiniteRingError() : std::runtime_error("operation requires a finite ring") {}
};
struct UnsupportedRing : std::runtime_error {
    explicit UnsupportedRing(const std::string& what) : std::runtime_error(what) {}
};

// Involutive-ring instance. Instances are interned: ring_for() returns the
// unique object for a descriptor, so Element::ring compares by pointer.
class Ring {
public:
    explicit Ring(DescriptorPtr d) : desc_(std::move(d)) {}
    virtual ~Ring() = default;

    const DescriptorPtr& desc() const { return desc_; }
    RingKind kind() const { return desc_->kind; }

    virtual Element zero() const = 0;
    virtual Element one() const = 0;
    Element from_int(int64_t v) const;

    virtual Element add(const Element& x, const Element& y) const = 0;
    virtual Element neg(const Element& x) const = 0;
    virtual Element mul(const Element& x, const Element& y) const = 0;
    virtual Element involute(const Element& x) const = 0;
    virtual std::optional<Element> try_invert(const Element& x) const = 0;

    Element sub_(const Element& x, const Element& y) const { return add(x, neg(y)); }
    bool is_zero(const Element& x) const { return x == zero(); }
    bool is_one(const Element& x) const { return x == one(); }
    bool is_unit(const Element& x) const { return try_invert(x).has_value(); }
    bool is_symmetric(const Element& x) const { return involute(x) == x; }

    // element count when finite and addressable; nullopt otherwise
    virtual std::optional<uint64_t> size() const = 0;
    virtual Element element_at(uint64_t idx) const;
    virtual uint64_t index_of(const Element& x) const;

    // Jacobson-radical structure (throws UnsupportedRing where no structural
    // rule exists; callers may fall back to brute force on tiny rings)
    virtual bool radical_member(const Element& x) const;
    virtual DescriptorPtr residue_descriptor() const;
    virtual Element project(const Element& x) const;
    virtual Element section(const Element& xbar) const;

    // deterministic pseudo-random element, used on infinite rings
    virtual Element sample(Rng& rng) const = 0;

    virtual std::string format(const Element& x) const = 0;

    uint64_t hash(const Element& x) const;

    // true for fields and division rings (every nonzero element invertible)
    virtual bool is_division_ring() const { return false; }

protected:
    DescriptorPtr desc_;
};

const Ring& ring_for(const DescriptorPtr& d);
const Ring& ring_for(const std::string& descriptor_text);

// ---- free-function surface -------------------------------------------------

inline void require_same_ring(const Element& x, const Element& y) {
    if (x.ring != y.ring) throw DescriptorMismatch();
}

inline Element add(const Element& x, const Element& y) {
    require_same_ring(x, y);
    return x.ring->add(x, y);
}
inline Element sub(const Element& x, const Element& y) {
    require_same_ring(x, y);
    return x.ring->sub_(x, y);
}
inline Element mul(const Element& x, const Element& y) {
    require_same_ring(x, y);
    return x.ring->mul(x, y);
}
inline Element neg(const Element& x) { return x.ring->neg(x); }
inline Element involute(const Element& x) { return x.ring->involute(x); }
inline std::optional<Element> try_invert(const Element& x) { return x.ring->try_invert(x); }
inline bool is_symmetric(const Element& x) { return x.ring->is_symmetric(x); }
inline bool is_unit(const Element& x) { return x.ring->is_unit(x); }
inline std::string format(const Element& x) { return x.ring->format(x); }

// every element of a finite ring, in the canonical deterministic order
std::vector<Element> enumerate(const Ring& r);
// the fixed points of the involution, in enumeration order
std::vector<Element> symmetric_elements(const Ring& r);
// central + invertible + symmetric; centrality checked against all elements
// (finite rings) or a generating sample (infinite rings)
bool is_central_invertible_symmetric(const Element& x);

// ---- matrix-ring helpers ---------------------------------------------------

// the interned Mat(n, base) ring
const Ring& matrix_ring(uint64_t n, const DescriptorPtr& base);

uint64_t matrix_dim(const Ring& r);           // n for Mat(n,.) / SplitQuat
const Ring& matrix_base(const Ring& r);       // entry ring
Element matrix_from_entries(const Ring& m, std::vector<Element> entries);
const Element& entry(const Element& m, uint64_t i, uint64_t j);
Element identity(const Ring& m);
Element scalar_matrix(const Ring& m, const Element& diag);

// components of a Prod(R,R) element, or of a matrix over Prod(R,R) as a pair
// of matrices over R
std::pair<Element, Element> prod_components(const Element& x);
Element prod_merge(const Ring& target, const Element& x1, const Element& x2);

// literal grammar: integers, p/q, a+b*s, x+y*i+z*j+w*k, polynomials in t or x,
// pairs (a|b), matrices [[...],[...]]
Element parse_element(const Ring& r, const std::string& text);

}  // namespace slstar
