#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slstar/ring.hpp"

namespace slstar {

// Elements of GL_*/SL_*(2,A) are values of the block-matrix ring Mat(2, A);
// group_ring(A) returns that interned ring.
const Ring& group_ring(const DescriptorPtr& coeff_ring);

Element block_a(const Element& g);
Element block_b(const Element& g);
Element block_c(const Element& g);
Element block_d(const Element& g);
Element from_blocks(const Ring& G, const Element& a, const Element& b, const Element& c,
                    const Element& d);

// J = [[0,1],[-1,0]] over A
Element weyl_j(const Ring& G);

Element det_star(const Element& g);

// nullopt when g is in SL_*; otherwise the name of the first violated relation
std::optional<std::string> sl_star_violation(const Element& g);
inline bool is_sl_star(const Element& g) { return !sl_star_violation(g).has_value(); }

// solves g* J g = delta J; nullopt when g is not in GL_*
std::optional<Element> multiplier(const Element& g);

Element group_mul(const Element& g, const Element& h);
// inverse from the isometry relation: g^{-1} = J^{-1} g* J
Element group_inv(const Element& g);

struct NotUnitError : std::runtime_error {
    NotUnitError() : std::runtime_error("argument is not a unit") {}
};
struct NotSymmetricError : std::runtime_error {
    NotSymmetricError() : std::runtime_error("argument is not symmetric") {}
};

Element bruhat_h(const Ring& G, const Element& a);  // diag(a*, a^{-1})
Element bruhat_u(const Ring& G, const Element& b);  // [[1,b],[0,1]]
Element bruhat_w(const Ring& G);                    // [[0,1],[-1,0]]

// ---- Bruhat words -----------------------------------------------------------

enum class TokenKind { H, U, W, Winv };

struct BruhatToken {
    TokenKind kind;
    Element arg;  // unit for H, symmetric for U, unused for W/Winv
};

struct BruhatWord {
    std::vector<BruhatToken> tokens;
};

// left-to-right product of the token matrices
Element eval_word(const Ring& G, const BruhatWord& w);
std::string serialize_word(const BruhatWord& w);

struct FactorError : std::runtime_error {
    explicit FactorError(const std::string& what) : std::runtime_error(what) {}
};

// requires one of the four blocks to be a unit
BruhatWord factor_unit_corner(const Element& g);
// general factorization: one division step makes the top-left block a unit
BruhatWord factor(const Element& g, uint64_t seed = 1);

// word u_{b1} w u_{b2} w^{-1} u_{b3} with all four blocks non-invertible
std::optional<BruhatWord> make_nonunit_example(const Ring& G);

// SL_*(2, M(n, R1) x M(n, R2)) ~ GL(2n-block, component 1): the map
// a1 -> (a1, J (a1^{-1})^t J^{-1})
Element gl2loc_iso(const Ring& G, const Element& a1);

// h(gx, gy) = h(x, y) for h(x, y) = x* J y with column pairs x, y
bool hermitian_check(const Element& g, const Element& x1, const Element& x2,
                     const Element& y1, const Element& y2);

// ---- reference enumeration (generic lane; small rings only) ----------------

struct CapExceeded : std::runtime_error {
    CapExceeded() : std::runtime_error("enumeration cap exceeded") {}
};

std::vector<Element> enumerate_sl_star(const Ring& G, uint64_t cap = 10000000);
struct ClosureResult {
    std::vector<Element> elems;
    bool frontier_exhausted = true;
};
ClosureResult closure_bfs(const Ring& G, uint64_t cap = 10000000);

}  // namespace slstar
