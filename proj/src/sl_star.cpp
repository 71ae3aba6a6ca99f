#include "slstar/sl_star.hpp"

#include <algorithm>
#include <set>

#include "slstar/star_euclid.hpp"

namespace slstar {

const Ring& group_ring(const DescriptorPtr& coeff) { return ring_for(make_matrix(2, coeff)); }

Element block_a(const Element& g) { return entry(g, 0, 0); }
Element block_b(const Element& g) { return entry(g, 0, 1); }
Element block_c(const Element& g) { return entry(g, 1, 0); }
Element block_d(const Element& g) { return entry(g, 1, 1); }

Element from_blocks(const Ring& G, const Element& a, const Element& b, const Element& c,
                    const Element& d) {
    return matrix_from_entries(G, {a, b, c, d});
}

Element weyl_j(const Ring& G) {
    const Ring& A = matrix_base(G);
    return from_blocks(G, A.zero(), A.one(), A.neg(A.one()), A.zero());
}

Element det_star(const Element& g) {
    const Ring& A = *block_a(g).ring;
    return A.sub_(A.mul(block_a(g), A.involute(block_d(g))),
                  A.mul(block_b(g), A.involute(block_c(g))));
}

std::optional<std::string> sl_star_violation(const Element& g) {
    const Ring& A = *block_a(g).ring;
    Element a = block_a(g), b = block_b(g), c = block_c(g), d = block_d(g);
    if (!A.is_one(A.sub_(A.mul(a, A.involute(d)), A.mul(b, A.involute(c)))))
        return "ad* - bc* != 1";
    if (!A.is_one(A.sub_(A.mul(A.involute(a), d), A.mul(A.involute(c), b))))
        return "a*d - c*b != 1";
    if (!A.is_symmetric(A.mul(a, A.involute(b)))) return "ab* not symmetric";
    if (!A.is_symmetric(A.mul(c, A.involute(d)))) return "cd* not symmetric";
    if (!A.is_symmetric(A.mul(A.involute(a), c))) return "a*c not symmetric";
    if (!A.is_symmetric(A.mul(A.involute(b), d))) return "b*d not symmetric";
    return std::nullopt;
}

std::optional<Element> multiplier(const Element& g) {
    const Ring& G = *g.ring;
    const Ring& A = matrix_base(G);
    Element m = G.mul(G.involute(g), G.mul(weyl_j(G), g));
    Element delta = entry(m, 0, 1);
    if (!A.is_zero(entry(m, 0, 0)) || !A.is_zero(entry(m, 1, 1))) return std::nullopt;
    if (entry(m, 1, 0) != A.neg(delta)) return std::nullopt;
    if (!is_central_invertible_symmetric(delta)) return std::nullopt;
    if (!G.is_unit(g)) return std::nullopt;
    return delta;
}

Element group_mul(const Element& g, const Element& h) { return g.ring->mul(g, h); }

Element group_inv(const Element& g) {
    const Ring& G = *g.ring;
    Element j = weyl_j(G);
    Element jinv = G.neg(j);  // J^{-1} = -J
    Element inv = G.mul(jinv, G.mul(G.involute(g), j));
    if (!G.is_one(G.mul(inv, g)))
        throw std::logic_error("group inverse failed; input not in SL_*");
    return inv;
}

Element bruhat_h(const Ring& G, const Element& a) {
    const Ring& A = matrix_base(G);
    auto ainv = A.try_invert(a);
    if (!ainv) throw NotUnitError();
    return from_blocks(G, A.involute(a), A.zero(), A.zero(), *ainv);
}

Element bruhat_u(const Ring& G, const Element& b) {
    const Ring& A = matrix_base(G);
    if (!A.is_symmetric(b)) throw NotSymmetricError();
    return from_blocks(G, A.one(), b, A.zero(), A.one());
}

Element bruhat_w(const Ring& G) { return weyl_j(G); }

Element eval_word(const Ring& G, const BruhatWord& w) {
    Element acc = G.one();
    for (const auto& tok : w.tokens) {
        switch (tok.kind) {
            case TokenKind::H: acc = G.mul(acc, bruhat_h(G, tok.arg)); break;
            case TokenKind::U: acc = G.mul(acc, bruhat_u(G, tok.arg)); break;
            case TokenKind::W: acc = G.mul(acc, bruhat_w(G)); break;
            case TokenKind::Winv: acc = G.mul(acc, G.neg(bruhat_w(G))); break;
        }
    }
    return acc;
}

std::string serialize_word(const BruhatWord& w) {
    std::string s;
    for (const auto& tok : w.tokens) {
        if (!s.empty()) s += " . ";
        switch (tok.kind) {
            case TokenKind::H: s += "H" + format(tok.arg); break;
            case TokenKind::U: s += "U" + format(tok.arg); break;
            case TokenKind::W: s += "W"; break;
            case TokenKind::Winv: s += "Winv"; break;
        }
    }
    return s.empty() ? "<empty>" : s;
}

namespace {

// core factorization for a unit top-left block:
// g = w^{-1} h_a^{-1} u_{-a*c} w u_{a^{-1}b}
BruhatWord factor_core(const Element& g) {
    const Ring& A = *block_a(g).ring;
    Element a = block_a(g), b = block_b(g), c = block_c(g);
    Element ainv = *A.try_invert(a);
    BruhatWord w;
    w.tokens.push_back({TokenKind::Winv, {}});
    w.tokens.push_back({TokenKind::H, ainv});
    w.tokens.push_back({TokenKind::U, A.neg(A.mul(A.involute(a), c))});
    w.tokens.push_back({TokenKind::W, {}});
    w.tokens.push_back({TokenKind::U, A.mul(ainv, b)});
    return w;
}

}  // namespace

BruhatWord factor_unit_corner(const Element& g) {
    const Ring& G = *g.ring;
    const Ring& A = matrix_base(G);
    if (auto viol = sl_star_violation(g))
        throw FactorError("not an SL_* element: " + *viol);
    Element w = bruhat_w(G);
    Element winv = G.neg(w);
    BruhatWord out;
    if (A.is_unit(block_a(g))) {
        out = factor_core(g);
    } else if (A.is_unit(block_c(g))) {
        // g = w^{-1} (w g)
        out.tokens.push_back({TokenKind::Winv, {}});
        auto rest = factor_core(G.mul(w, g));
        out.tokens.insert(out.tokens.end(), rest.tokens.begin(), rest.tokens.end());
    } else if (A.is_unit(block_b(g))) {
        // g = (g w) w^{-1}
        out = factor_core(G.mul(g, w));
        out.tokens.push_back({TokenKind::Winv, {}});
    } else if (A.is_unit(block_d(g))) {
        // g = w^{-1} (w g w) w^{-1}
        out.tokens.push_back({TokenKind::Winv, {}});
        auto rest = factor_core(G.mul(w, G.mul(g, w)));
        out.tokens.insert(out.tokens.end(), rest.tokens.begin(), rest.tokens.end());
        out.tokens.push_back({TokenKind::Winv, {}});
    } else {
        throw FactorError("no block is a unit");
    }
    if (eval_word(G, out) != g) throw FactorError("word evaluation mismatch");
    return out;
}

BruhatWord factor(const Element& g, uint64_t seed) {
    const Ring& G = *g.ring;
    const Ring& A = matrix_base(G);
    if (auto viol = sl_star_violation(g))
        throw FactorError("not an SL_* element: " + *viol);
    if (A.is_unit(block_a(g)) || A.is_unit(block_b(g)) || A.is_unit(block_c(g)) ||
        A.is_unit(block_d(g)))
        return factor_unit_corner(g);

    // (a, c) is coprime with certificate (d*, -b*) and a*c symmetric, both
    // from the defining relations, so a division step applies
    DivisionChain chain;
    try {
        chain = divide(block_a(g), block_c(g), seed);
    } catch (const DivideError& e) {
        if (e.fail == DivideFail::NotStarEuclidean || e.fail == DivideFail::SearchExhausted)
            throw DivideError(DivideFail::NotStarEuclidean,
                              "factorization blocked: " + std::string(e.what()));
        throw;
    }
    const Element& s = chain.steps.front().s;
    Element shifted = G.mul(bruhat_u(G, A.neg(s)), g);  // unit top-left block r
    BruhatWord out;
    out.tokens.push_back({TokenKind::U, s});
    auto rest = factor_unit_corner(shifted);
    out.tokens.insert(out.tokens.end(), rest.tokens.begin(), rest.tokens.end());
    if (eval_word(G, out) != g) throw FactorError("word evaluation mismatch");
    return out;
}

std::optional<BruhatWord> make_nonunit_example(const Ring& G) {
    const Ring& A = matrix_base(G);
    const auto& syms = symmetric_sweep_order(A);
    // u_{b1} w u_{b2} w^{-1} u_{b3} = [[1-b1b2, (1-b1b2)b3 + b1], [-b2, 1-b2b3]]
    for (const Element& b2 : syms) {
        if (A.is_unit(b2)) continue;
        for (const Element& b1 : syms) {
            Element a = A.sub_(A.one(), A.mul(b1, b2));
            if (A.is_unit(a)) continue;
            for (const Element& b3 : syms) {
                if (A.is_unit(A.sub_(A.one(), A.mul(b2, b3)))) continue;
                if (A.is_unit(A.add(A.mul(a, b3), b1))) continue;
                BruhatWord w;
                w.tokens.push_back({TokenKind::U, b1});
                w.tokens.push_back({TokenKind::W, {}});
                w.tokens.push_back({TokenKind::U, b2});
                w.tokens.push_back({TokenKind::Winv, {}});
                w.tokens.push_back({TokenKind::U, b3});
                return w;
            }
        }
    }
    return std::nullopt;
}

Element gl2loc_iso(const Ring& G, const Element& a1) {
    // G = Mat(2, Mat(n, Prod(R,R))); a1 is a 2x2 block matrix over Mat(n, R)
    const Ring& A = matrix_base(G);
    if (matrix_base(A).kind() != RingKind::Product)
        throw UnsupportedRing("gl2loc_iso needs a product coefficient ring");
    const Ring& G1 = *a1.ring;  // Mat(2, Mat(n, R))
    auto a1inv = G1.try_invert(a1);
    if (!a1inv) throw NotUnitError();
    // second component: J (a1^{-1})^t J^{-1}, with the blockwise transpose
    const Ring& A1 = matrix_base(G1);
    Element j1 = from_blocks(G1, A1.zero(), A1.one(), A1.neg(A1.one()), A1.zero());
    auto transpose_blocks = [&](const Element& m) {
        // plain block transpose with entrywise matrix transpose (no base
        // involution: the product component map is the identity)
        auto tr = [&](const Element& blk) {
            uint64_t n = matrix_dim(A1);
            const Ring& R = matrix_base(A1);
            std::vector<Element> e(n * n);
            for (uint64_t i = 0; i < n; ++i)
                for (uint64_t j = 0; j < n; ++j) e[j * n + i] = entry(blk, i, j);
            (void)R;
            return matrix_from_entries(A1, std::move(e));
        };
        return from_blocks(G1, tr(entry(m, 0, 0)), tr(entry(m, 1, 0)), tr(entry(m, 0, 1)),
                           tr(entry(m, 1, 1)));
    };
    Element second = G1.mul(j1, G1.mul(transpose_blocks(*a1inv), G1.neg(j1)));
    // pair the blocks into Mat(2, Mat(n, Prod))
    std::vector<Element> blocks;
    for (uint64_t i = 0; i < 2; ++i)
        for (uint64_t j = 0; j < 2; ++j)
            blocks.push_back(prod_merge(A, entry(a1, i, j), entry(second, i, j)));
    Element g = matrix_from_entries(G, std::move(blocks));
    if (auto viol = sl_star_violation(g))
        throw std::logic_error("gl2loc_iso output violates SL_* relations: " + *viol);
    return g;
}

bool hermitian_check(const Element& g, const Element& x1, const Element& x2,
                     const Element& y1, const Element& y2) {
    const Ring& A = *x1.ring;
    auto h = [&](const Element& u1, const Element& u2, const Element& v1, const Element& v2) {
        // x* J y with x, y column pairs: x1* y2 - x2* y1
        return A.sub_(A.mul(A.involute(u1), v2), A.mul(A.involute(u2), v1));
    };
    Element a = block_a(g), b = block_b(g), c = block_c(g), d = block_d(g);
    Element gx1 = A.add(A.mul(a, x1), A.mul(b, x2));
    Element gx2 = A.add(A.mul(c, x1), A.mul(d, x2));
    Element gy1 = A.add(A.mul(a, y1), A.mul(b, y2));
    Element gy2 = A.add(A.mul(c, y1), A.mul(d, y2));
    return h(gx1, gx2, gy1, gy2) == h(x1, x2, y1, y2);
}

// ---------------------------------------------------------------------------
// reference enumeration on the generic lane

std::vector<Element> enumerate_sl_star(const Ring& G, uint64_t cap) {
    const Ring& A = matrix_base(G);
    auto asize = A.size();
    if (!asize) throw InfiniteRingError();
    uint64_t n = *asize;
    if (n * n * n * n > cap * 16) throw CapExceeded();
    std::vector<Element> out;
    for (uint64_t ai = 0; ai < n; ++ai) {
        Element a = A.element_at(ai);
        Element astar = A.involute(a);
        for (uint64_t ci = 0; ci < n; ++ci) {
            Element c = A.element_at(ci);
            if (!A.is_symmetric(A.mul(astar, c))) continue;
            for (uint64_t di = 0; di < n; ++di) {
                Element d = A.element_at(di);
                Element adstar = A.mul(a, A.involute(d));
                for (uint64_t bi = 0; bi < n; ++bi) {
                    Element g = from_blocks(G, a, A.element_at(bi), c, d);
                    if (!sl_star_violation(g)) {
                        out.push_back(std::move(g));
                        if (out.size() > cap) throw CapExceeded();
                    }
                }
                (void)adstar;
            }
        }
    }
    return out;
}

ClosureResult closure_bfs(const Ring& G, uint64_t cap) {
    const Ring& A = matrix_base(G);
    std::vector<Element> gens;
    for (const Element& x : enumerate(A))
        if (A.is_unit(x)) gens.push_back(bruhat_h(G, x));
    for (const Element& b : symmetric_elements(A)) gens.push_back(bruhat_u(G, b));
    gens.push_back(bruhat_w(G));

    std::set<std::string> seen;
    std::vector<Element> elems, frontier;
    Element id = G.one();
    seen.insert(G.format(id));
    elems.push_back(id);
    frontier.push_back(id);
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const Element& g : frontier)
            for (const Element& gen : gens) {
                Element h = G.mul(g, gen);
                if (seen.insert(G.format(h)).second) {
                    elems.push_back(h);
                    next.push_back(h);
                    if (elems.size() > cap) return {std::move(elems), false};
                }
            }
        frontier = std::move(next);
    }
    return {std::move(elems), true};
}

}  // namespace slstar
