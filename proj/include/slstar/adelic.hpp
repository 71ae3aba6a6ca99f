#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slstar/ring.hpp"
#include "slstar/star_euclid.hpp"

namespace slstar {

// A place of the global base field: a rational prime (or the archimedean
// marker) over Q, a monic irreducible polynomial (or the degree place) over
// F_q(t).
struct Place {
    bool infinite = false;
    BigInt prime;          // number-field case
    std::vector<int> poly; // function-field case, ascending coefficients

    bool is_poly() const { return !poly.empty(); }
    std::string str() const;
    bool operator==(const Place& o) const;
    bool operator<(const Place& o) const;
};

Place place_infinity();
Place place_prime(const BigInt& p);
// parses "t^2+t+1" style literals over GF(q) and checks irreducibility
Place place_poly(const std::string& text, uint64_t q);

enum class SplittingType { Split, Inert, Ramified };
SplittingType quad_splitting(int64_t d, const BigInt& p);
std::string splitting_name(SplittingType t);

enum class AdelicBase {
    RationalField,      // M(n, A_Q), trivial involution
    QuadField,          // M(n, A_E), E = Q(sqrt d), Galois involution
    QuatFunctionField,  // M(n, split quaternions over F_2(t)), char 2
    QuatRationalField,  // M(n, split quaternions over Q), char 0
};

struct AdelicContext {
    AdelicBase base;
    uint64_t n = 1;
    int64_t d = -1;    // QuadField discriminant
    uint64_t q = 2;    // function-field constant field size

    // component ring at an explicit place (QuadField: depends on splitting)
    const Ring& component_ring(const Place& v) const;
    // ring holding the integral tail
    const Ring& tail_ring() const;
    std::string str() const;
};

// finite-support restricted-product matrix: explicit components on S plus an
// integral tail interpreted at every place outside S
struct AdelicMatrix {
    const AdelicContext* ctx = nullptr;
    std::vector<std::pair<Place, Element>> components;  // ordered by place
    Element tail;

    std::string str() const;
    bool operator==(const AdelicMatrix& o) const;
};

AdelicMatrix make_adelic(const AdelicContext& ctx,
                         std::vector<std::pair<Place, Element>> components, Element tail);
AdelicMatrix adelic_identity(const AdelicContext& ctx);
AdelicMatrix adelic_zero(const AdelicContext& ctx);

// embeds the integral tail value into the component ring at v; nullopt when
// the rational model cannot express it (non-rational tail at a split place)
std::optional<Element> embed_tail(const AdelicContext& ctx, const Place& v, const Element& tail);

enum class AdelicOp { Add, Mul };
AdelicMatrix adelic_op(const AdelicMatrix& x, const AdelicMatrix& y, AdelicOp op);
AdelicMatrix adelic_involute(const AdelicMatrix& x);

// a = a_S · a^S for any S' containing the support
std::pair<AdelicMatrix, AdelicMatrix> support_split(const AdelicMatrix& a,
                                                    const std::vector<Place>& s_prime);

struct TailUnsolved : std::runtime_error {
    explicit TailUnsolved(const std::string& what) : std::runtime_error(what) {}
};

struct AdelicDivision {
    AdelicMatrix s, r;
};

// per-place solves plus a uniform integral tail solve; every returned pair is
// verified componentwise and on the tail
AdelicDivision adelic_divide(const AdelicMatrix& a, const AdelicMatrix& c, uint64_t seed = 1);
AdelicDivision quad_adelic_divide(const AdelicMatrix& a, const AdelicMatrix& c,
                                  uint64_t seed = 1);

// refusal payload for the characteristic-zero quaternion base
struct QuatCharZeroRefusal {
    Element witness_a, witness_c;  // the non-*-Euclidean pair, at a split place
    ExhaustionCertificate certificate;  // exhaustion at a finite truncation
    std::string truncation;
};

struct QuatAdelicOutcome {
    std::optional<AdelicDivision> division;
    std::optional<QuatCharZeroRefusal> refusal;
};
QuatAdelicOutcome quat_adelic_divide(const AdelicMatrix& a, const AdelicMatrix& c,
                                     uint64_t seed = 1);

// literal: {2: [[...]], 3: [[...]], tail: [[...]]} with places as primes or
// polynomial strings
AdelicMatrix parse_adelic(const AdelicContext& ctx, const std::string& text);

}  // namespace slstar
