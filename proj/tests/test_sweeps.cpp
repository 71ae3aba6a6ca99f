#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "slstar/sl_star.hpp"
#include "slstar/star_euclid.hpp"
#include "slstar/sweeps.hpp"

using namespace slstar;

TEST_CASE("reference, serial and parallel pair sweeps agree") {
    for (const char* text : {"Mat(2,GF(3))", "Mat(2,Z/(4))", "Mat(2,Prod(GF(2),GF(2)))",
                             "SplitQuat(GF(2))"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        PairSweepResult ref = sweep_divide_pairs_reference(r);
        PairSweepResult ser = sweep_divide_pairs(r, false);
        PairSweepResult par = sweep_divide_pairs(r, true);
        CHECK(ref.pairs_scanned == ser.pairs_scanned);
        CHECK(ref.pairs_valid == ser.pairs_valid);
        CHECK(ref.steps_verified == ser.steps_verified);
        CHECK(ref.failures == ser.failures);
        CHECK(ser.pairs_valid == par.pairs_valid);
        CHECK(ser.steps_verified == par.steps_verified);
        CHECK(ser.failures == par.failures);
        CHECK(ref.failures == 0);
        CHECK(ref.pairs_valid > 0);
    }
}

TEST_CASE("the sweep detects the odd-characteristic failures") {
    const Ring& r = ring_for("SplitQuat(GF(3))");
    PairSweepResult res = sweep_divide_pairs(r, false);
    CHECK(res.pairs_valid > 0);
    CHECK(res.failures > 0);  // the ring is not *-Euclidean
    CHECK(res.steps_verified + res.failures == res.pairs_valid);
    PairSweepResult ref = sweep_divide_pairs_reference(r);
    CHECK(ref.failures == res.failures);

    // the counterexample pair is among the failures
    const PMatSpace& sp = pmat_space(r);
    PMat a = sp.from_element(parse_element(r, "[[1,0],[1,0]]"));
    PMat c = sp.from_element(parse_element(r, "[[0,1],[0,1]]"));
    CHECK(!packed_divide(sp, a, c).has_value());
}

TEST_CASE("packed divide agrees with the generic dispatcher") {
    Rng rng(19);
    for (const char* text : {"Mat(2,GF(3))", "Mat(2,Z/(9))", "Mat(2,Prod(GF(3),GF(3)))"}) {
        const Ring& r = ring_for(text);
        const PMatSpace& sp = pmat_space(r);
        const TableRing& t = *sp.base;
        CAPTURE(text);
        int tested = 0;
        for (int trial = 0; trial < 3000 && tested < 50; ++trial) {
            PMat a = pfrom_index(t, rng.below(sp.count));
            PMat c = pfrom_index(t, rng.below(sp.count));
            Element ae = sp.to_element(a), ce = sp.to_element(c);
            if (!derive_symmetry(ae, ce) || !check_coprime(ae, ce)) continue;
            ++tested;
            auto packed = packed_divide(sp, a, c);
            REQUIRE(packed.has_value());
            // both produce verified steps for the same pair
            DivisionChain chain = divide(ae, ce);
            CHECK(chain.steps.size() == 1);
            Element s = sp.to_element(packed->s);
            Element rr = sp.to_element(packed->r);
            CHECK(is_symmetric(s));
            CHECK(add(mul(s, ce), rr) == ae);
            CHECK(is_unit(rr));
        }
        CHECK(tested > 10);
    }
}

TEST_CASE("packed group enumeration equals the generic reference") {
    for (const char* text : {"Mat(1,GF(3))", "Mat(2,GF(2))"}) {
        const Ring& A = ring_for(text);
        const TableRing& t = table_ring(A);
        const Ring& G = group_ring(A.desc());
        CAPTURE(text);
        GroupSet packed = enumerate_sl_star_packed(A, 1000000, true);
        auto generic = enumerate_sl_star(G, 1000000);
        REQUIRE(packed.elems.size() == generic.size());
        std::set<std::string> packed_keys, generic_keys;
        for (GElem g : packed.elems) packed_keys.insert(format(gelem_to_element(G, t, g)));
        for (const auto& g : generic) generic_keys.insert(format(g));
        CHECK(packed_keys == generic_keys);
    }
}

TEST_CASE("packed closure equals the generic reference") {
    for (const char* text : {"Mat(1,GF(3))", "SplitQuat(GF(2))"}) {
        const Ring& A = ring_for(text);
        const TableRing& t = table_ring(A);
        const Ring& G = group_ring(A.desc());
        CAPTURE(text);
        GroupSet packed = closure_bfs_packed(A, 1000000, true);
        ClosureResult generic = closure_bfs(G, 1000000);
        REQUIRE(packed.elems.size() == generic.elems.size());
        std::set<std::string> pk, gk;
        for (GElem g : packed.elems) pk.insert(format(gelem_to_element(G, t, g)));
        for (const auto& g : generic.elems) gk.insert(format(g));
        CHECK(pk == gk);
    }
}

TEST_CASE("every packed group element satisfies the relations") {
    const Ring& A = ring_for("SplitQuat(GF(3))");
    const TableRing& t = table_ring(A);
    GroupSet g = enumerate_sl_star_packed(A, 1000000, false);
    CHECK(g.elems.size() == 1152);
    for (GElem x : g.elems) CHECK(gis_sl_star(t, x));
    // closure under multiplication on a sample
    Rng rng(37);
    for (int i = 0; i < 300; ++i) {
        GElem x = g.elems[rng.below(g.elems.size())];
        GElem y = g.elems[rng.below(g.elems.size())];
        CHECK(std::binary_search(g.elems.begin(), g.elems.end(), gmul(t, x, y)));
    }
}

TEST_CASE("classical group orders as enumeration oracles") {
    // |SL(2,q)| = q(q^2-1)
    CHECK(enumerate_sl_star_packed(ring_for("Mat(1,GF(2))"), 1000000, false).elems.size() == 6);
    CHECK(enumerate_sl_star_packed(ring_for("Mat(1,GF(3))"), 1000000, false).elems.size() == 24);
    CHECK(enumerate_sl_star_packed(ring_for("Mat(1,GF(5))"), 1000000, false).elems.size() ==
          120);
}

TEST_CASE("the enumeration cap reports incompleteness") {
    GroupSet g = enumerate_sl_star_packed(ring_for("Mat(1,GF(5))"), 10, false);
    CHECK(!g.complete);
    CHECK(g.elems.size() == 10);
}
