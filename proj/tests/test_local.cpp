#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slstar/local.hpp"

using namespace slstar;

TEST_CASE("radical membership, structural rules") {
    const Ring& z9 = ring_for("Z/(9)");
    CHECK(jacobson_membership(z9.from_int(3)));
    CHECK(jacobson_membership(z9.from_int(6)));
    CHECK(!jacobson_membership(z9.from_int(1)));
    int members = 0;
    for (const auto& x : enumerate(z9))
        if (jacobson_membership(x)) ++members;
    CHECK(members == 3);  // {0, 3, 6}

    const Ring& p33 = ring_for("Prod(GF(3),GF(3))");
    CHECK(!jacobson_membership(parse_element(p33, "(0|2)")));  // semisimple: J = 0
    CHECK(jacobson_membership(p33.zero()));

    const Ring& m4 = ring_for("Mat(2,Z/(4))");
    CHECK(!jacobson_membership(parse_element(m4, "[[0,1],[0,0]]")));
    CHECK(jacobson_membership(parse_element(m4, "[[0,2],[2,0]]")));
}

TEST_CASE("brute-force radical oracle agrees with the structural rules") {
    for (const char* text : {"Z/(9)", "Z/(8)", "Trunc(GF(2),2)", "Prod(Z/(4),Z/(4))",
                             "Mat(2,GF(2))", "GF(5)"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        for (const auto& x : enumerate(r))
            CHECK(jacobson_membership(x) == jacobson_membership_bruteforce(x));
    }
    // the non-member example over Mat(2,Z/(4)) has an early brute-force
    // witness, so the oracle stays cheap
    const Ring& m4 = ring_for("Mat(2,Z/(4))");
    CHECK(!jacobson_membership_bruteforce(parse_element(m4, "[[0,1],[0,0]]")));
}

TEST_CASE("classification of the built-in kinds") {
    CHECK(classify_star_local(ring_for("Z/(9)")).kind == LocalKind::OneLocal);
    CHECK(classify_star_local(ring_for("Trunc(GF(4),2)")).kind == LocalKind::OneLocal);
    CHECK(classify_star_local(ring_for("GF(4)")).kind == LocalKind::OneLocal);
    CHECK(classify_star_local(ring_for("Quat")).kind == LocalKind::OneLocal);
    CHECK(classify_star_local(ring_for("Prod(Z/(4),Z/(4))")).kind == LocalKind::TwoLocal);
    CHECK(classify_star_local(ring_for("Poly(GF(2))")).kind == LocalKind::NotStarLocal);
    // a product of two-local rings has four maximal ideals, none stable-max
    CHECK(classify_star_local(ring_for("Prod(Prod(GF(2),GF(2)),Prod(GF(2),GF(2)))")).kind ==
          LocalKind::NotStarLocal);

    auto cls = classify_star_local(ring_for("GF(4)"));
    CHECK(cls.p_text == "(0)");
}

TEST_CASE("units are the complement of p union p*") {
    for (const char* text : {"Z/(9)", "Prod(Z/(4),Z/(4))", "Trunc(GF(3),2)",
                             "Mat(2,Prod(GF(2),GF(2)))"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        auto cls = classify_star_local(r);
        REQUIRE(cls.kind != LocalKind::NotStarLocal);
        for (const auto& x : enumerate(r))
            CHECK(r.is_unit(x) == (!cls.in_p(x) && !cls.in_p_star(x)));
    }
}

TEST_CASE("projection examples") {
    const Ring& z9 = ring_for("Z/(9)");
    const Ring& f3 = ring_for("GF(3)");
    CHECK(project_residue(z9.from_int(5)) == f3.from_int(2));

    const Ring& p44 = ring_for("Prod(Z/(4),Z/(4))");
    const Ring& p22 = ring_for("Prod(GF(2),GF(2))");
    CHECK(project_residue(parse_element(p44, "(3|1)")) == parse_element(p22, "(1|1)"));

    const Ring& m9 = ring_for("Mat(2,Z/(9))");
    const Ring& m3 = ring_for("Mat(2,GF(3))");
    CHECK(project_residue(parse_element(m9, "[[5,3],[0,1]]")) ==
          parse_element(m3, "[[2,0],[0,1]]"));
}

TEST_CASE("section is a involution-compatible right inverse preserving units") {
    for (const char* text : {"Z/(9)", "Prod(Z/(4),Z/(4))", "Trunc(GF(2),3)", "Mat(2,Z/(9))",
                             "SplitQuat(Trunc(GF(2),2))"}) {
        const Ring& r = ring_for(text);
        const Ring& down = ring_for(r.residue_descriptor());
        CAPTURE(text);
        for (const auto& xbar : enumerate(down)) {
            Element x = section_lift(r, xbar);
            CHECK(project_residue(x) == xbar);
            CHECK(section_lift(r, down.involute(xbar)) == involute(x));
            CHECK(down.is_symmetric(xbar) == r.is_symmetric(x));
            CHECK(down.is_unit(xbar) == r.is_unit(x));
        }
    }
    // spot examples
    const Ring& z9 = ring_for("Z/(9)");
    CHECK(section_lift(z9, ring_for("GF(3)").from_int(2)) == z9.from_int(2));
    const Ring& p44 = ring_for("Prod(Z/(4),Z/(4))");
    Element lifted = section_lift(p44, parse_element(ring_for("Prod(GF(2),GF(2))"), "(1|1)"));
    CHECK(lifted == parse_element(p44, "(1|1)"));
    CHECK(is_symmetric(lifted));
    CHECK(is_unit(lifted));
}

TEST_CASE("unit residue matrices lift to unit matrices") {
    const Ring& m9 = ring_for("Mat(2,Z/(9))");
    const Ring& m3 = ring_for("Mat(2,GF(3))");
    Rng rng(5);
    int lifted_units = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Element xbar = m3.element_at(rng.below(*m3.size()));
        if (!m3.is_unit(xbar)) continue;
        ++lifted_units;
        CHECK(is_unit(section_lift(m9, xbar)));
    }
    CHECK(lifted_units > 5);
}

TEST_CASE("radical decomposition") {
    const Ring& z9 = ring_for("Z/(9)");
    auto [s5, j5] = decompose_radical(z9.from_int(5));
    CHECK(s5 == z9.from_int(2));
    CHECK(j5 == z9.from_int(3));
    auto [s2, j2] = decompose_radical(z9.from_int(2));
    CHECK(s2 == z9.from_int(2));
    CHECK(z9.is_zero(j2));

    for (const char* text : {"Z/(9)", "Prod(Z/(4),Z/(4))", "Mat(2,Prod(Z/(4),Z/(4)))"}) {
        const Ring& r = ring_for(text);
        const Ring& down = ring_for(r.residue_descriptor());
        CAPTURE(text);
        uint64_t n = *r.size(), radical = 0;
        Rng rng(9);
        uint64_t trials = n <= 4096 ? n : 4096;
        for (uint64_t i = 0; i < trials; ++i) {
            Element a = r.element_at(n <= 4096 ? i : rng.below(n));
            auto [as, aj] = decompose_radical(a);
            CHECK(add(as, aj) == a);
            CHECK(jacobson_membership(aj));
            if (r.is_symmetric(a)) {
                CHECK(r.is_symmetric(as));
                CHECK(r.is_symmetric(aj));
            }
        }
        if (n <= 4096) {
            for (uint64_t i = 0; i < n; ++i)
                if (r.radical_member(r.element_at(i))) ++radical;
            CHECK(*down.size() * radical == n);  // bijection onto section x radical
        }
    }
}

TEST_CASE("one plus radical is invertible") {
    for (const char* text : {"Z/(9)", "Z/(8)", "Trunc(GF(3),2)", "Prod(Z/(4),Z/(4))",
                             "Trunc(GF(4),2)"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        for (const auto& x : enumerate(r))
            if (jacobson_membership(x)) CHECK(is_unit(add(r.one(), x)));
    }
}

TEST_CASE("Dedekind finiteness spot check") {
    for (const char* text : {"Mat(2,GF(2))", "Prod(Z/(4),Z/(4))", "SplitQuat(GF(3))"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        auto all = enumerate(r);
        for (const auto& x : all)
            for (const auto& y : all)
                if (r.is_one(mul(x, y))) CHECK(r.is_one(mul(y, x)));
    }
}

TEST_CASE("is_unit_via_reduction agrees with try_invert") {
    const Ring& z9 = ring_for("Z/(9)");
    CHECK(is_unit_via_reduction(z9.from_int(4)));
    const Ring& p44 = ring_for("Prod(Z/(4),Z/(4))");
    CHECK(!is_unit_via_reduction(parse_element(p44, "(2|1)")));
    const Ring& m4 = ring_for("Mat(2,Z/(4))");
    CHECK(is_unit_via_reduction(parse_element(m4, "[[1,1],[1,0]]")));

    for (const char* text : {"Z/(9)", "Prod(Z/(4),Z/(4))", "Mat(2,Z/(4))",
                             "SplitQuat(Z/(9))"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        for (const auto& x : enumerate(r))
            CHECK(is_unit_via_reduction(x) == r.is_unit(x));
    }
}
