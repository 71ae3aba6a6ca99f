#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slstar/star_euclid.hpp"
#include "slstar/table_ring.hpp"

using namespace slstar;

TEST_CASE("tables match the generic reference on every pair") {
    for (const char* text : {"GF(5)", "Z/(9)", "Trunc(GF(2),2)", "Prod(GF(3),GF(3))",
                             "Mat(2,GF(2))", "SplitQuat(GF(3))", "Quad(GF(3),k=2)"}) {
        const Ring& r = ring_for(text);
        const TableRing& t = table_ring(r);
        CAPTURE(text);
        REQUIRE(t.n == *r.size());
        for (uint32_t i = 0; i < t.n; ++i) {
            Element x = r.element_at(i);
            CHECK(t.neg[i] == r.index_of(neg(x)));
            CHECK(t.invol[i] == r.index_of(involute(x)));
            CHECK(t.is_unit(static_cast<uint16_t>(i)) == r.is_unit(x));
            if (t.is_unit(static_cast<uint16_t>(i)))
                CHECK(static_cast<uint64_t>(t.inv[i]) == r.index_of(*try_invert(x)));
            for (uint32_t j = 0; j < t.n; ++j) {
                Element y = r.element_at(j);
                CHECK(t.addf(i, j) == r.index_of(add(x, y)));
                CHECK(t.mulf(i, j) == r.index_of(mul(x, y)));
            }
        }
        // symmetric list matches the enumeration-order fixed points
        uint64_t k = 0;
        for (uint32_t i = 0; i < t.n; ++i)
            if (r.is_symmetric(r.element_at(i))) {
                REQUIRE(k < t.sym.size());
                CHECK(t.sym[k++] == i);
            }
        CHECK(k == t.sym.size());
    }
}

TEST_CASE("projection and section tables") {
    for (const char* text : {"Z/(9)", "Prod(Z/(4),Z/(4))", "Trunc(GF(3),2)"}) {
        const Ring& r = ring_for(text);
        const Ring& down = ring_for(r.residue_descriptor());
        const TableRing& t = table_ring(r);
        CAPTURE(text);
        for (uint32_t i = 0; i < t.n; ++i)
            CHECK(t.proj[i] == down.index_of(r.project(r.element_at(i))));
        for (uint32_t i = 0; i < t.residue->n; ++i)
            CHECK(t.sect[i] == r.index_of(r.section(down.element_at(i))));
    }
    const TableRing& semisimple = table_ring(ring_for("GF(5)"));
    CHECK(semisimple.residue == &semisimple);
}

TEST_CASE("packed matrix involution and multiplication") {
    Rng rng(13);
    for (const char* text : {"Mat(2,GF(3))", "SplitQuat(GF(3))", "Mat(2,Z/(4))",
                             "Mat(2,SplitQuat(GF(2)))"}) {
        const Ring& m = ring_for(text);
        const PMatSpace& sp = pmat_space(m);
        const TableRing& t = *sp.base;
        CAPTURE(text);
        for (int trial = 0; trial < 200; ++trial) {
            uint64_t xi = rng.below(sp.count), yi = rng.below(sp.count);
            PMat x = pfrom_index(t, xi), y = pfrom_index(t, yi);
            CHECK(pindex(t, x) == xi);
            Element xe = sp.to_element(x), ye = sp.to_element(y);
            CHECK(sp.to_element(pmul(t, x, y)) == mul(xe, ye));
            CHECK(sp.to_element(pinvolute(t, sp.invo, x)) == involute(xe));
            CHECK(sp.from_element(xe) == x);
        }
    }
}

TEST_CASE("packed unit bits match generic inversion") {
    for (const char* text : {"Mat(2,GF(3))", "Mat(2,Z/(4))", "SplitQuat(GF(3))",
                             "Mat(2,Prod(GF(2),GF(2)))", "Mat(2,SplitQuat(GF(2)))"}) {
        const Ring& m = ring_for(text);
        const PMatSpace& sp = pmat_space(m);
        const TableRing& t = *sp.base;
        CAPTURE(text);
        uint64_t step = sp.count <= 4096 ? 1 : 37;  // exhaustive when small
        for (uint64_t i = 0; i < sp.count; i += step) {
            PMat x = pfrom_index(t, i);
            CHECK(sp.is_unit(x) == m.is_unit(sp.to_element(x)));
        }
    }
}

TEST_CASE("packed coprimality matches the certificate route") {
    for (const char* text : {"Mat(2,GF(3))", "Mat(2,Z/(4))", "Mat(2,Prod(GF(2),GF(2)))"}) {
        const Ring& m = ring_for(text);
        const PMatSpace& sp = pmat_space(m);
        const TableRing& t = *sp.base;
        CAPTURE(text);
        Rng rng(29);
        for (int trial = 0; trial < 400; ++trial) {
            uint64_t ai = rng.below(sp.count), ci = rng.below(sp.count);
            PMat a = pfrom_index(t, ai), c = pfrom_index(t, ci);
            bool packed = sp.coprime(a, c);
            bool generic = check_coprime(sp.to_element(a), sp.to_element(c)).has_value();
            CHECK(packed == generic);
        }
    }
}

TEST_CASE("matrix-level symmetric order is sorted by support") {
    const PMatSpace& sp = pmat_space(ring_for("Mat(2,GF(3))"));
    const TableRing& t = *sp.base;
    uint32_t last = 0;
    for (uint32_t idx : sp.sym_by_support) {
        PMat m = pfrom_index(t, idx);
        CHECK(sp.is_symmetric(m));
        uint32_t s = 0;
        for (auto e : m)
            if (e != t.zero) ++s;
        CHECK(s >= last);
        last = s;
    }
    // count: symmetric 2x2 matrices over GF(3) under plain transpose
    CHECK(sp.sym_by_support.size() == 27);
}

TEST_CASE("oversized rings are rejected") {
    CHECK_THROWS_AS(table_ring(ring_for("Q")), UnsupportedRing);
    CHECK_THROWS_AS(table_ring(ring_for("Mat(2,GF(3^2))")), UnsupportedRing);
}
