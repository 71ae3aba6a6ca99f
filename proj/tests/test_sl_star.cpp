#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "slstar/sl_star.hpp"
#include "slstar/star_euclid.hpp"
#include "slstar/sweeps.hpp"
#include "slstar/table_ring.hpp"

using namespace slstar;

namespace {

std::vector<Element> group_elements(const char* coeff_text) {
    const Ring& A = ring_for(coeff_text);
    const TableRing& t = table_ring(A);
    const Ring& G = group_ring(A.desc());
    std::vector<Element> out;
    for (GElem g : enumerate_sl_star_packed(A, 1000000, false).elems)
        out.push_back(gelem_to_element(G, t, g));
    return out;
}

}  // namespace

TEST_CASE("det_star basics") {
    const Ring& G = group_ring(parse_descriptor("Mat(2,GF(3))"));
    const Ring& A = matrix_base(G);
    CHECK(det_star(G.one()) == A.one());
    CHECK(det_star(bruhat_w(G)) == A.one());
    for (const auto& a : enumerate(A))
        if (A.is_unit(a)) CHECK(det_star(bruhat_h(G, a)) == A.one());
}

TEST_CASE("relation checking and violations") {
    const Ring& G = group_ring(parse_descriptor("Mat(2,GF(3))"));
    const Ring& A = matrix_base(G);
    Element b = parse_element(A, "[[1,2],[2,0]]");
    REQUIRE(A.is_symmetric(b));
    CHECK(is_sl_star(bruhat_u(G, b)));

    Element nb = parse_element(A, "[[0,1],[2,0]]");
    REQUIRE(!A.is_symmetric(nb));
    Element fake = from_blocks(G, A.one(), nb, A.zero(), A.one());
    auto viol = sl_star_violation(fake);
    REQUIRE(viol.has_value());
    CHECK(*viol == "ab* not symmetric");
    CHECK_THROWS_AS(bruhat_u(G, nb), NotSymmetricError);
    CHECK_THROWS_AS(bruhat_h(G, A.zero()), NotUnitError);

    Rng rng(3);
    Element g = G.one();
    for (int i = 0; i < 12; ++i) {
        switch (rng.below(3)) {
            case 0: g = group_mul(g, bruhat_w(G)); break;
            case 1: g = group_mul(g, bruhat_u(G, b)); break;
            default: g = group_mul(g, bruhat_h(G, parse_element(A, "[[1,1],[0,1]]"))); break;
        }
        CHECK(is_sl_star(g));
    }
}

TEST_CASE("multiplier of similitudes") {
    const Ring& G = group_ring(parse_descriptor("Mat(1,GF(5))"));
    const Ring& A = matrix_base(G);
    for (const auto& g : group_elements("Mat(1,GF(5))")) {
        auto delta = multiplier(g);
        REQUIRE(delta.has_value());
        CHECK(*delta == A.one());
    }
    // diagonal scaling by a central symmetric unit z has multiplier z
    Element z = A.from_int(2);
    Element g = from_blocks(G, z, A.zero(), A.zero(), A.one());
    auto delta = multiplier(g);
    REQUIRE(delta.has_value());
    CHECK(*delta == z);

    Element bad = from_blocks(G, A.one(), A.one(), A.zero(), A.zero());
    CHECK(!multiplier(bad).has_value());
}

TEST_CASE("group operations") {
    const Ring& G = group_ring(parse_descriptor("Mat(2,GF(2))"));
    const Ring& A = matrix_base(G);
    Element w = bruhat_w(G);
    CHECK(group_mul(w, w) == G.neg(G.one()));
    CHECK(group_mul(group_mul(w, w), group_mul(w, w)) == G.one());
    Element b = parse_element(A, "[[1,1],[1,0]]");
    Element u = bruhat_u(G, b);
    CHECK(group_inv(u) == bruhat_u(G, A.neg(b)));
    for (const auto& g : group_elements("Mat(2,GF(2))")) {
        CHECK(group_mul(g, group_inv(g)) == G.one());
    }
}

TEST_CASE("generator algebra") {
    for (const char* text : {"Mat(1,GF(5))", "Mat(2,GF(2))"}) {
        const Ring& A = ring_for(text);
        const Ring& G = group_ring(A.desc());
        CAPTURE(text);
        std::vector<Element> units, syms;
        for (const auto& x : enumerate(A)) {
            if (A.is_unit(x)) units.push_back(x);
            if (A.is_symmetric(x)) syms.push_back(x);
        }
        for (const auto& a : units)
            for (const auto& a2 : units)
                CHECK(group_mul(bruhat_h(G, a), bruhat_h(G, a2)) ==
                      bruhat_h(G, mul(a2, a)));  // h_a h_a' = h_{a'a}
        for (const auto& b : syms)
            for (const auto& b2 : syms)
                CHECK(group_mul(bruhat_u(G, b), bruhat_u(G, b2)) == bruhat_u(G, add(b, b2)));
        for (const auto& a : units)
            for (const auto& b : syms)
                CHECK(group_mul(group_mul(bruhat_h(G, a), bruhat_u(G, b)),
                                group_inv(bruhat_h(G, a))) ==
                      bruhat_u(G, mul(mul(involute(a), b), a)));
    }
}

TEST_CASE("unit-corner factorization and the formal Bruhat relation") {
    const Ring& A = ring_for("Mat(2,GF(3))");
    const Ring& G = group_ring(A.desc());
    // identity factors trivially through the core word
    BruhatWord wid = factor_unit_corner(G.one());
    CHECK(eval_word(G, wid) == G.one());
    // u_b has unit corner a = 1
    Element b = parse_element(A, "[[1,0],[0,2]]");
    BruhatWord wu = factor_unit_corner(bruhat_u(G, b));
    CHECK(eval_word(G, wu) == bruhat_u(G, b));

    // random unit-cornered elements round-trip through all four unit positions
    Rng rng(7);
    std::vector<Element> pool = group_elements("Mat(2,GF(3))");
    (void)pool;
    int corners[4] = {0, 0, 0, 0};
    const TableRing& t = table_ring(A);
    const auto packed = enumerate_sl_star_packed(A, 2000000, true);
    int done = 0;
    for (size_t i = 0; i < packed.elems.size() && done < 400; i += 97) {
        Element g = gelem_to_element(G, t, packed.elems[i]);
        int which = A.is_unit(block_a(g))   ? 0
                    : A.is_unit(block_b(g)) ? 1
                    : A.is_unit(block_c(g)) ? 2
                    : A.is_unit(block_d(g)) ? 3
                                            : -1;
        if (which < 0) continue;
        ++corners[which];
        ++done;
        BruhatWord w = factor_unit_corner(g);
        CHECK(eval_word(G, w) == g);
    }
    CHECK(done > 100);
}

TEST_CASE("full factorization over a *-Euclidean coefficient ring") {
    // n = 1: every element has at least two unit entries
    const Ring& A1 = ring_for("Mat(1,GF(3))");
    const Ring& G1 = group_ring(A1.desc());
    auto els = group_elements("Mat(1,GF(3))");
    CHECK(els.size() == 24);
    for (const auto& g : els) {
        int units = 0;
        for (const Element& blk : {block_a(g), block_b(g), block_c(g), block_d(g)})
            if (matrix_base(G1).is_unit(blk)) ++units;
        CHECK(units >= 2);
        BruhatWord w = factor(g);
        CHECK(eval_word(G1, w) == g);
    }
}

TEST_CASE("all-non-unit-entry witnesses") {
    const Ring& G = group_ring(parse_descriptor("Mat(2,GF(2))"));
    auto witness = make_nonunit_example(G);
    REQUIRE(witness.has_value());
    Element g = eval_word(G, *witness);
    const Ring& A = matrix_base(G);
    CHECK(!A.is_unit(block_a(g)));
    CHECK(!A.is_unit(block_b(g)));
    CHECK(!A.is_unit(block_c(g)));
    CHECK(!A.is_unit(block_d(g)));
    // the factorization of such an element starts with the division step
    BruhatWord w = factor(g);
    CHECK(w.tokens.front().kind == TokenKind::U);
    CHECK(eval_word(G, w) == g);

    const Ring& G3 = group_ring(parse_descriptor("Mat(2,GF(3))"));
    CHECK(make_nonunit_example(G3).has_value());

    // impossible for n = 1: two entries are always units
    CHECK(!make_nonunit_example(group_ring(parse_descriptor("Mat(1,GF(3))"))).has_value());
    CHECK(!make_nonunit_example(group_ring(parse_descriptor("Mat(1,GF(5))"))).has_value());
}

TEST_CASE("factor refuses outside the Bruhat closure") {
    const Ring& A = ring_for("SplitQuat(GF(3))");
    const TableRing& t = table_ring(A);
    const Ring& G = group_ring(A.desc());
    GroupSet full = enumerate_sl_star_packed(A, 1000000, false);
    GroupSet clos = closure_bfs_packed(A, 1000000, false);
    REQUIRE(clos.elems.size() < full.elems.size());
    // pick an element of the complement
    GElem outside = 0;
    for (GElem g : full.elems)
        if (!std::binary_search(clos.elems.begin(), clos.elems.end(), g)) {
            outside = g;
            break;
        }
    Element g = gelem_to_element(G, t, outside);
    bool factored_outside = true;
    try {
        factor(g);
    } catch (const DivideError& e) {
        factored_outside = false;
        CHECK(e.fail == DivideFail::NotStarEuclidean);
    } catch (const FactorError&) {
        factored_outside = false;
    }
    CHECK(!factored_outside);

    // while elements inside the closure factor fine
    int inside_ok = 0;
    for (size_t i = 0; i < clos.elems.size(); i += 29) {
        Element h = gelem_to_element(G, t, clos.elems[i]);
        try {
            BruhatWord w = factor(h);
            if (eval_word(G, w) == h) ++inside_ok;
        } catch (const std::exception&) {
        }
    }
    CHECK(inside_ok > 0);
}

TEST_CASE("word serialization shape") {
    const Ring& A = ring_for("Mat(1,GF(3))");
    const Ring& G = group_ring(A.desc());
    BruhatWord w;
    w.tokens.push_back({TokenKind::U, A.one()});
    w.tokens.push_back({TokenKind::W, {}});
    w.tokens.push_back({TokenKind::H, A.from_int(2)});
    w.tokens.push_back({TokenKind::Winv, {}});
    CHECK(serialize_word(w) == "U[[1]] . W . H[[2]] . Winv");
    CHECK(is_sl_star(eval_word(G, w)));
}

TEST_CASE("the two-local GL isomorphism") {
    // SL_*(2, M(n,R) x M(n,R)) is GL of the first component
    const Ring& S = ring_for("Prod(GF(3),GF(3))");
    const Ring& A = ring_for(make_matrix(1, S.desc()));
    const Ring& G = group_ring(A.desc());
    const Ring& A1 = ring_for(make_matrix(1, parse_descriptor("GF(3)")));
    const Ring& G1 = ring_for(make_matrix(2, A1.desc()));

    CHECK(gl2loc_iso(G, G1.one()) == G.one());

    Rng rng(11);
    auto random_gl = [&] {
        for (;;) {
            Element x = G1.sample(rng);
            if (G1.is_unit(x)) return x;
        }
    };
    for (int trial = 0; trial < 40; ++trial) {
        Element x = random_gl(), y = random_gl();
        CHECK(is_sl_star(gl2loc_iso(G, x)));
        CHECK(group_mul(gl2loc_iso(G, x), gl2loc_iso(G, y)) == gl2loc_iso(G, mul(x, y)));
    }
    CHECK_THROWS_AS(gl2loc_iso(G, G1.zero()), NotUnitError);

    // bijectivity via orders: |SL_*| = |GL(2, GF(3))| = 48
    GroupSet full = enumerate_sl_star_packed(A, 1000000, false);
    CHECK(full.elems.size() == 48);

    // and the larger example: |GL(2, M(2,GF(2)))| = |GL(4,2)| = 20160
    const Ring& S2 = ring_for("Prod(Mat(2,GF(2)),Mat(2,GF(2)))");
    GroupSet big = enumerate_sl_star_packed(ring_for(make_matrix(1, S2.desc())), 1000000, true);
    CHECK(big.elems.size() == 20160);
}

TEST_CASE("isometry of the hermitian form") {
    const Ring& A = ring_for("Mat(1,GF(3))");
    const Ring& G = group_ring(A.desc());
    auto all = enumerate(A);
    auto els = group_elements("Mat(1,GF(3))");
    for (const auto& g : els)
        for (const auto& x1 : all)
            for (const auto& x2 : all) {
                // h(gx, gy) = h(x, y) on a full grid of pairs
                CHECK(hermitian_check(g, x1, x2, x2, x1));
            }
    // a violating pair is found for a non-isometry
    Element bad = from_blocks(G, A.from_int(2), A.zero(), A.zero(), A.one());
    bool violated = false;
    for (const auto& x1 : all)
        for (const auto& x2 : all)
            if (!hermitian_check(bad, x1, x2, x1, x2)) violated = true;
    CHECK(violated);
}

TEST_CASE("closure dichotomy matches the characteristic") {
    const Ring& A2 = ring_for("SplitQuat(GF(2))");
    GroupSet f2 = enumerate_sl_star_packed(A2, 1000000, false);
    GroupSet c2 = closure_bfs_packed(A2, 1000000, false);
    CHECK(f2.elems == c2.elems);

    const Ring& A3 = ring_for("SplitQuat(GF(3))");
    GroupSet f3 = enumerate_sl_star_packed(A3, 1000000, false);
    GroupSet c3 = closure_bfs_packed(A3, 1000000, false);
    CHECK(c3.elems.size() * 2 == f3.elems.size());  // index-2 subgroup
    CHECK(std::includes(f3.elems.begin(), f3.elems.end(), c3.elems.begin(), c3.elems.end()));
}
