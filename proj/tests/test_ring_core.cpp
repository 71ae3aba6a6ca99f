#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slstar/ring.hpp"

using namespace slstar;

TEST_CASE("descriptor grammar round-trips and rejects malformed input") {
    for (const char* text :
         {"GF(2)", "GF(3^2)", "Z/(3^2)", "Trunc(GF(4),3)", "Q", "Quat", "Quad(GF(3),k=2)",
          "Quad(Q,-1)", "Prod(GF(3),GF(3))", "Mat(2,Z/(3^2))", "SplitQuat(GF(5))",
          "Mat(3,Prod(Z/(2^2),Z/(2^2)))", "Poly(GF(2))", "RatFun(GF(2))"}) {
        auto d = parse_descriptor(text);
        CHECK(parse_descriptor(d->str())->str() == d->str());
    }
    // prime powers are accepted in flat form
    CHECK(parse_descriptor("GF(4)")->str() == "GF(2^2)");
    CHECK(parse_descriptor("Z/(9)")->str() == "Z/(3^2)");
    CHECK(parse_descriptor("Z/(8)")->str() == "Z/(2^3)");

    CHECK_THROWS_AS(parse_descriptor("GF(6)"), ParseError);
    CHECK_THROWS_AS(parse_descriptor("Mat(0,GF(2))"), ParseError);
    CHECK_THROWS_AS(parse_descriptor("Quad(Q,4)"), ParseError);  // not square-free
    CHECK_THROWS_AS(parse_descriptor("Prod(GF(2),GF(3))"), ParseError);
    CHECK_THROWS_AS(parse_descriptor("GF(5) junk"), ParseError);
    try {
        parse_descriptor("Mat(2,GF(6))");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position > 0);  // error carries a position
    }
}

TEST_CASE("addition examples") {
    const Ring& z3 = ring_for("GF(3)");
    CHECK(z3.add(z3.from_int(2), z3.from_int(2)) == z3.from_int(1));

    const Ring& p22 = ring_for("Prod(GF(2),GF(2))");
    CHECK(add(parse_element(p22, "(1|0)"), parse_element(p22, "(0|1)")) ==
          parse_element(p22, "(1|1)"));

    const Ring& h = ring_for("Quat");
    CHECK(add(parse_element(h, "1+i"), parse_element(h, "1-i")) == h.from_int(2));
}

TEST_CASE("multiplication examples") {
    const Ring& h = ring_for("Quat");
    CHECK(mul(parse_element(h, "i"), parse_element(h, "j")) == parse_element(h, "k"));
    CHECK(mul(parse_element(h, "j"), parse_element(h, "i")) == parse_element(h, "-k"));

    const Ring& t = ring_for("Trunc(GF(2),2)");
    CHECK(t.is_zero(mul(parse_element(t, "t"), parse_element(t, "t"))));

    const Ring& m = ring_for("Mat(2,GF(5))");
    Element x = parse_element(m, "[[1,2],[3,4]]");
    CHECK(mul(m.one(), x) == x);
    CHECK(mul(x, m.one()) == x);
}

TEST_CASE("involution definitions") {
    // flip
    const Ring& p = ring_for("Prod(Z/(7),Z/(7))");
    CHECK(involute(parse_element(p, "(3|5)")) == parse_element(p, "(5|3)"));

    // J-conjugation: J h^t J^{-1} = [[d,-b],[-c,a]]; in characteristic 2 the
    // signs vanish
    const Ring& sq2 = ring_for("SplitQuat(GF(2))");
    CHECK(involute(parse_element(sq2, "[[1,1],[0,1]]")) == parse_element(sq2, "[[1,1],[0,1]]"));
    CHECK(involute(parse_element(sq2, "[[0,1],[1,1]]")) == parse_element(sq2, "[[1,1],[1,0]]"));
    const Ring& sq3 = ring_for("SplitQuat(GF(3))");
    CHECK(involute(parse_element(sq3, "[[1,1],[1,1]]")) ==
          parse_element(sq3, "[[1,-1],[-1,1]]"));
    CHECK(involute(parse_element(sq3, "[[0,1],[2,2]]")) ==
          parse_element(sq3, "[[2,-1],[-2,0]]"));

    // quaternion conjugation
    const Ring& h = ring_for("Quat");
    CHECK(involute(parse_element(h, "1+2*i+3*j")) == parse_element(h, "1-2*i-3*j"));

    // *-transpose with a Galois base
    const Ring& mq = ring_for("Mat(2,Quad(GF(3),k=2))");
    Element g = parse_element(mq, "[[s,1],[0,s]]");
    Element gi = involute(g);
    CHECK(entry(gi, 0, 1) == matrix_base(mq).zero());
    CHECK(entry(gi, 0, 0) == involute(parse_element(matrix_base(mq), "s")));
}

TEST_CASE("involution is an anti-automorphism on every kind") {
    Rng rng(7);
    for (const char* text : {"Z/(3^2)", "GF(4)", "Trunc(GF(3),2)", "Quad(GF(3),k=2)",
                             "Quad(Q,-1)", "Quat", "Prod(Z/(4),Z/(4))", "Mat(2,GF(3))",
                             "SplitQuat(GF(3))", "SplitQuat(Z/(4))", "Mat(2,Quat)",
                             "Mat(2,SplitQuat(GF(2)))", "RatFun(GF(2))",
                             "Mat(2,Prod(GF(3),GF(3)))"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        CHECK(involute(r.one()) == r.one());
        auto n = r.size();
        for (int trial = 0; trial < 40; ++trial) {
            Element x = n ? r.element_at(rng.below(*n)) : r.sample(rng);
            Element y = n ? r.element_at(rng.below(*n)) : r.sample(rng);
            CHECK(involute(involute(x)) == x);
            CHECK(involute(mul(x, y)) == mul(involute(y), involute(x)));
        }
    }
}

TEST_CASE("symmetric element examples and counts") {
    const Ring& sq9 = ring_for("SplitQuat(Z/(9))");
    Element alpha_i = scalar_matrix(sq9, matrix_base(sq9).from_int(5));
    CHECK(is_symmetric(alpha_i));
    CHECK(symmetric_elements(sq9).size() == 9);  // scalar matrices only

    const Ring& sq2 = ring_for("SplitQuat(GF(2))");
    CHECK(is_symmetric(parse_element(sq2, "[[1,1],[0,1]]")));
    auto syms2 = symmetric_elements(sq2);
    CHECK(syms2.size() == 8);  // equal diagonal, free off-diagonal
    for (const auto& s : syms2) CHECK(entry(s, 0, 0) == entry(s, 1, 1));

    const Ring& sq3 = ring_for("SplitQuat(GF(3))");
    auto syms3 = symmetric_elements(sq3);
    CHECK(syms3.size() == 3);
    for (const auto& s : syms3) {
        CHECK(matrix_base(sq3).is_zero(entry(s, 0, 1)));
        CHECK(entry(s, 0, 0) == entry(s, 1, 1));
    }

    const Ring& f4 = ring_for("Quad(GF(2),k=2)");
    CHECK(symmetric_elements(f4).size() == 2);  // the prime subfield

    const Ring& h = ring_for("Quat");
    CHECK(!is_symmetric(parse_element(h, "i")));
}

TEST_CASE("try_invert examples") {
    const Ring& z9 = ring_for("Z/(9)");
    CHECK(!try_invert(z9.from_int(3)).has_value());
    CHECK(try_invert(z9.from_int(4)).has_value());

    const Ring& h = ring_for("Quat");
    auto qi = try_invert(parse_element(h, "1+i"));
    REQUIRE(qi.has_value());
    CHECK(*qi == parse_element(h, "1/2-1/2*i"));

    const Ring& m2 = ring_for("Mat(2,GF(2))");
    Element u = parse_element(m2, "[[1,1],[0,1]]");
    CHECK(*try_invert(u) == u);
}

TEST_CASE("unit soundness against brute force on finite rings") {
    for (const char* text : {"Z/(8)", "Trunc(GF(2),3)", "Prod(Z/(4),Z/(4))", "Mat(2,GF(3))",
                             "SplitQuat(GF(2))", "Quad(GF(3),k=2)"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        uint64_t n = *r.size();
        for (uint64_t i = 0; i < n; ++i) {
            Element x = r.element_at(i);
            bool brute = false;
            for (uint64_t j = 0; j < n && !brute; ++j) {
                Element y = r.element_at(j);
                brute = r.is_one(mul(x, y)) && r.is_one(mul(y, x));
            }
            auto inv = try_invert(x);
            REQUIRE(brute == inv.has_value());
            if (inv) {
                CHECK(r.is_one(mul(x, *inv)));
                CHECK(r.is_one(mul(*inv, x)));
            }
        }
    }
}

TEST_CASE("matrix inversion over harder bases") {
    Rng rng(3);
    // noncommutative elimination over the rational quaternions
    const Ring& mh = ring_for("Mat(2,Quat)");
    int invertible = 0;
    for (int trial = 0; trial < 25; ++trial) {
        Element x = mh.sample(rng);
        if (auto inv = try_invert(x)) {
            ++invertible;
            CHECK(mh.is_one(mul(x, *inv)));
            CHECK(mh.is_one(mul(*inv, x)));
        }
    }
    CHECK(invertible > 0);

    // nested matrix base goes through flattening
    const Ring& nested = ring_for("Mat(2,SplitQuat(GF(2)))");
    uint64_t units = 0;
    for (uint64_t i = 0; i < 2048; ++i) {
        Element x = nested.element_at(i * 31 % *nested.size());
        if (auto inv = try_invert(x)) {
            ++units;
            CHECK(nested.is_one(mul(x, *inv)));
        }
    }
    CHECK(units > 0);

    // integral matrices invert exactly when the determinant is a unit
    const Ring& mz = ring_for(make_matrix(2, make_integers()));
    Element uni = parse_element(mz, "[[1,5],[0,1]]");
    CHECK(try_invert(uni).has_value());
    CHECK(!try_invert(parse_element(mz, "[[2,0],[0,1]]")).has_value());

    // polynomial matrices likewise
    const Ring& mp = ring_for(make_matrix(2, make_poly_ring(make_gf(2))));
    CHECK(try_invert(parse_element(mp, "[[1,t],[0,1]]")).has_value());
    CHECK(!try_invert(parse_element(mp, "[[t,0],[0,1]]")).has_value());
}

TEST_CASE("enumeration is deterministic and complete") {
    CHECK(enumerate(ring_for("GF(2)")).size() == 2);
    CHECK(enumerate(ring_for("Mat(2,GF(2))")).size() == 16);
    CHECK(enumerate(ring_for("Prod(GF(3),GF(3))")).size() == 9);
    CHECK_THROWS_AS(enumerate(ring_for("Q")), InfiniteRingError);

    const Ring& r = ring_for("Trunc(GF(4),2)");
    auto all = enumerate(r);
    CHECK(all.size() == 16);
    for (uint64_t i = 0; i < all.size(); ++i) CHECK(r.index_of(all[i]) == i);
}

TEST_CASE("central invertible symmetric elements") {
    const Ring& z9 = ring_for("Z/(9)");
    CHECK(is_central_invertible_symmetric(z9.one()));

    const Ring& m5 = ring_for("Mat(2,GF(5))");
    CHECK(is_central_invertible_symmetric(scalar_matrix(m5, matrix_base(m5).from_int(2))));
    CHECK(!is_central_invertible_symmetric(parse_element(m5, "[[1,1],[0,1]]")));

    const Ring& h = ring_for("Quat");
    CHECK(!is_central_invertible_symmetric(parse_element(h, "i")));
    CHECK(is_central_invertible_symmetric(h.from_int(2)));
}

TEST_CASE("literal format round-trips on random elements") {
    Rng rng(11);
    for (const char* text : {"GF(9)", "Z/(27)", "Q", "Quat", "Quad(Q,5)", "Trunc(GF(2),3)",
                             "Prod(GF(5),GF(5))", "Mat(2,Quad(GF(3),k=2))", "RatFun(GF(4))",
                             "SplitQuat(Q)"}) {
        const Ring& r = ring_for(text);
        CAPTURE(text);
        auto n = r.size();
        for (int trial = 0; trial < 25; ++trial) {
            Element x = n ? r.element_at(rng.below(*n)) : r.sample(rng);
            CHECK(parse_element(r, r.format(x)) == x);
        }
    }
}

TEST_CASE("finite field towers use fixed irreducible moduli") {
    const Ring& f4 = ring_for("GF(4)");
    Element x = parse_element(f4, "x");
    // x^2 = x + 1 under the modulus x^2 + x + 1
    CHECK(mul(x, x) == parse_element(f4, "1+x"));
    const Ring& f8 = ring_for("GF(8)");
    Element y = parse_element(f8, "x");
    CHECK(mul(mul(y, y), y) == parse_element(f8, "1+x"));  // x^3 = x + 1
}
