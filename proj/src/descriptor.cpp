#include "slstar/descriptor.hpp"

#include <cctype>

#include "slstar/numeric.hpp"

namespace slstar {

InvolutionTag Descriptor::involution() const {
    switch (kind) {
        case RingKind::QuadExtField:
        case RingKind::QuadExtQ: return InvolutionTag::Galois;
        case RingKind::Product: return InvolutionTag::Flip;
        case RingKind::Matrix: return InvolutionTag::StarTranspose;
        case RingKind::SplitQuat: return InvolutionTag::JConjugation;
        case RingKind::RationalQuat: return InvolutionTag::QuaternionConjugation;
        default: return InvolutionTag::Trivial;
    }
}

bool Descriptor::is_finite() const {
    switch (kind) {
        case RingKind::PrimeField:
        case RingKind::FiniteField:
        case RingKind::ResidueRing:
        case RingKind::TruncatedPoly:
        case RingKind::QuadExtField: return true;
        case RingKind::Product:
        case RingKind::Matrix:
        case RingKind::SplitQuat: {
            for (const auto& s : sub)
                if (!s->is_finite()) return false;
            return true;
        }
        default: return false;
    }
}

bool Descriptor::is_commutative() const {
    switch (kind) {
        case RingKind::RationalQuat: return false;
        case RingKind::Matrix: return n == 1 && sub[0]->is_commutative();
        case RingKind::SplitQuat: return false;
        case RingKind::Product: return sub[0]->is_commutative() && sub[1]->is_commutative();
        default: return true;
    }
}

uint64_t Descriptor::characteristic() const {
    switch (kind) {
        case RingKind::PrimeField:
        case RingKind::FiniteField: return p;
        case RingKind::ResidueRing: {
            uint64_t m = 1;
            for (uint64_t i = 0; i < k; ++i) m *= p;
            return m;
        }
        case RingKind::TruncatedPoly:
        case RingKind::QuadExtField:
        case RingKind::PolyRing:
        case RingKind::RatFunField: return sub[0]->characteristic();
        case RingKind::Rationals:
        case RingKind::RationalQuat:
        case RingKind::QuadExtQ:
        case RingKind::Integers: return 0;
        case RingKind::Product:
        case RingKind::Matrix:
        case RingKind::SplitQuat: return sub[0]->characteristic();
    }
    return 0;
}

std::string Descriptor::str() const {
    switch (kind) {
        case RingKind::PrimeField: return "GF(" + std::to_string(p) + ")";
        case RingKind::FiniteField:
            return "GF(" + std::to_string(p) + "^" + std::to_string(k) + ")";
        case RingKind::ResidueRing:
            return "Z/(" + std::to_string(p) +
                   (k > 1 ? "^" + std::to_string(k) : std::string()) + ")";
        case RingKind::TruncatedPoly:
            return "Trunc(" + sub[0]->str() + "," + std::to_string(k) + ")";
        case RingKind::Rationals: return "Q";
        case RingKind::RationalQuat: return "Quat";
        case RingKind::QuadExtField: return "Quad(" + sub[0]->str() + ",k=2)";
        case RingKind::QuadExtQ: return "Quad(Q," + std::to_string(d) + ")";
        case RingKind::Product: return "Prod(" + sub[0]->str() + "," + sub[1]->str() + ")";
        case RingKind::Matrix: return "Mat(" + std::to_string(n) + "," + sub[0]->str() + ")";
        case RingKind::SplitQuat: return "SplitQuat(" + sub[0]->str() + ")";
        case RingKind::PolyRing: return "Poly(" + sub[0]->str() + ")";
        case RingKind::RatFunField: return "RatFun(" + sub[0]->str() + ")";
        case RingKind::Integers: return "Z";
    }
    return "?";
}

namespace {

DescriptorPtr mk(Descriptor d) { return std::make_shared<Descriptor>(std::move(d)); }

void require_prime(uint64_t p) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("not a prime: " + std::to_string(p));
}

bool is_square_free(int64_t d) {
    if (d == 0 || d == 1) return false;
    int64_t m = d < 0 ? -d : d;
    for (int64_t f = 2; f * f <= m; ++f)
        if (m % (f * f) == 0) return false;
    return true;
}

}  // namespace

DescriptorPtr make_prime_field(uint64_t p) {
    require_prime(p);
    Descriptor d;
    d.kind = RingKind::PrimeField;
    d.p = p;
    d.k = 1;
    return mk(d);
}

DescriptorPtr make_finite_field(uint64_t p, uint64_t k) {
    if (k == 1) return make_prime_field(p);
    require_prime(p);
    Descriptor d;
    d.kind = RingKind::FiniteField;
    d.p = p;
    d.k = k;
    return mk(d);
}

DescriptorPtr make_gf(uint64_t q) {
    for (uint64_t p = 2; p <= q; ++p) {
        if (!is_prime_u64(p) || q % p) continue;
        uint64_t k = 0, m = q;
        while (m > 1) {
            if (m % p) throw std::invalid_argument("not a prime power: " + std::to_string(q));
            m /= p;
            ++k;
        }
        return make_finite_field(p, k);
    }
    throw std::invalid_argument("not a prime power: " + std::to_string(q));
}

DescriptorPtr make_residue_ring(uint64_t p, uint64_t k) {
    require_prime(p);
    if (k < 1) throw std::invalid_argument("k >= 1 required");
    Descriptor d;
    d.kind = RingKind::ResidueRing;
    d.p = p;
    d.k = k;
    return mk(d);
}

DescriptorPtr make_trunc(DescriptorPtr gf, uint64_t k) {
    if (gf->kind != RingKind::PrimeField && gf->kind != RingKind::FiniteField)
        throw std::invalid_argument("Trunc base must be a finite field");
    if (k < 1) throw std::invalid_argument("k >= 1 required");
    Descriptor d;
    d.kind = RingKind::TruncatedPoly;
    d.k = k;
    d.sub = {std::move(gf)};
    return mk(d);
}

DescriptorPtr make_rationals() {
    Descriptor d;
    d.kind = RingKind::Rationals;
    return mk(d);
}

DescriptorPtr make_rational_quat() {
    Descriptor d;
    d.kind = RingKind::RationalQuat;
    return mk(d);
}

DescriptorPtr make_quad_gf(DescriptorPtr gf) {
    if (gf->kind != RingKind::PrimeField && gf->kind != RingKind::FiniteField)
        throw std::invalid_argument("Quad base must be a finite field");
    Descriptor d;
    d.kind = RingKind::QuadExtField;
    d.k = 2;
    d.sub = {std::move(gf)};
    return mk(d);
}

DescriptorPtr make_quad_q(int64_t dd) {
    if (!is_square_free(dd))
        throw std::invalid_argument("Quad(Q,d) needs square-free d != 0,1");
    Descriptor d;
    d.kind = RingKind::QuadExtQ;
    d.d = dd;
    return mk(d);
}

DescriptorPtr make_product(DescriptorPtr r) {
    Descriptor d;
    d.kind = RingKind::Product;
    d.sub = {r, r};
    return mk(d);
}

DescriptorPtr make_matrix(uint64_t n, DescriptorPtr base) {
    if (n < 1) throw std::invalid_argument("n >= 1 required");
    Descriptor d;
    d.kind = RingKind::Matrix;
    d.n = n;
    d.sub = {std::move(base)};
    return mk(d);
}

DescriptorPtr make_split_quat(DescriptorPtr base) {
    Descriptor d;
    d.kind = RingKind::SplitQuat;
    d.n = 2;
    d.sub = {std::move(base)};
    return mk(d);
}

DescriptorPtr make_poly_ring(DescriptorPtr gf) {
    if (gf->kind != RingKind::PrimeField && gf->kind != RingKind::FiniteField)
        throw std::invalid_argument("Poly base must be a finite field");
    Descriptor d;
    d.kind = RingKind::PolyRing;
    d.sub = {std::move(gf)};
    return mk(d);
}

DescriptorPtr make_ratfun(DescriptorPtr gf) {
    if (gf->kind != RingKind::PrimeField && gf->kind != RingKind::FiniteField)
        throw std::invalid_argument("RatFun base must be a finite field");
    Descriptor d;
    d.kind = RingKind::RatFunField;
    d.sub = {std::move(gf)};
    return mk(d);
}

DescriptorPtr make_integers() {
    Descriptor d;
    d.kind = RingKind::Integers;
    return mk(d);
}

// ---------------------------------------------------------------------------
// recursive-descent parser

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i);
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t j = i, n = 0;
        while (w[n]) {
            if (j >= s.size() || s[j] != w[n]) return false;
            ++j;
            ++n;
        }
        // keywords end where an identifier would
        if (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
            return false;
        i = j;
        return true;
    }
    uint64_t number() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("expected a number", i);
        uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            v = v * 10 + static_cast<uint64_t>(s[i++] - '0');
        return v;
    }
    int64_t signed_number() {
        skip_ws();
        bool neg = eat('-');
        uint64_t v = number();
        return neg ? -static_cast<int64_t>(v) : static_cast<int64_t>(v);
    }
};

DescriptorPtr parse_ring(Cursor& c);

DescriptorPtr parse_gf(Cursor& c) {
    if (!c.eat_word("GF")) throw ParseError("expected GF(...)", c.i);
    c.expect('(');
    uint64_t p = c.number();
    bool powered = c.eat('^');
    uint64_t k = powered ? c.number() : 1;
    c.expect(')');
    size_t at = c.i;
    try {
        // GF(q) with q a prime power is accepted alongside GF(p^k)
        return powered ? make_finite_field(p, k) : make_gf(p);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
    }
}

DescriptorPtr parse_ring(Cursor& c) {
    c.skip_ws();
    size_t at = c.i;
    try {
        if (c.eat_word("GF")) {
            c.i = at;
            return parse_gf(c);
        }
        if (c.eat_word("Z")) {
            c.expect('/');
            c.expect('(');
            uint64_t p = c.number();
            uint64_t k = 1;
            if (c.eat('^')) {
                k = c.number();
            } else {
                // accept Z/(n) for a prime power n
                auto f = make_gf(p);
                p = f->p;
                k = f->k;
            }
            c.expect(')');
            return make_residue_ring(p, k);
        }
        if (c.eat_word("Trunc")) {
            c.expect('(');
            auto gf = parse_gf(c);
            c.expect(',');
            uint64_t k = c.number();
            c.expect(')');
            return make_trunc(gf, k);
        }
        if (c.eat_word("Quad")) {
            c.expect('(');
            c.skip_ws();
            if (c.eat_word("Q")) {
                c.expect(',');
                int64_t d = c.signed_number();
                c.expect(')');
                return make_quad_q(d);
            }
            auto gf = parse_gf(c);
            c.expect(',');
            if (!c.eat_word("k")) throw ParseError("expected k=2", c.i);
            c.expect('=');
            if (c.number() != 2) throw ParseError("only k=2 quadratic extensions", c.i);
            c.expect(')');
            return make_quad_gf(gf);
        }
        if (c.eat_word("Quat")) return make_rational_quat();
        if (c.eat_word("Q")) return make_rationals();
        if (c.eat_word("Prod")) {
            c.expect('(');
            auto r1 = parse_ring(c);
            c.expect(',');
            auto r2 = parse_ring(c);
            c.expect(')');
            if (r1->str() != r2->str())
                throw ParseError("Prod components must match", c.i);
            return make_product(r1);
        }
        if (c.eat_word("Mat")) {
            c.expect('(');
            uint64_t n = c.number();
            c.expect(',');
            auto base = parse_ring(c);
            c.expect(')');
            return make_matrix(n, base);
        }
        if (c.eat_word("SplitQuat")) {
            c.expect('(');
            auto base = parse_ring(c);
            c.expect(')');
            return make_split_quat(base);
        }
        if (c.eat_word("Poly")) {
            c.expect('(');
            auto gf = parse_gf(c);
            c.expect(')');
            return make_poly_ring(gf);
        }
        if (c.eat_word("RatFun")) {
            c.expect('(');
            auto gf = parse_gf(c);
            c.expect(')');
            return make_ratfun(gf);
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), at);
    }
    throw ParseError("unknown ring kind", c.i);
}

}  // namespace

DescriptorPtr parse_descriptor(const std::string& text) {
    Cursor c{text};
    auto r = parse_ring(c);
    c.skip_ws();
    if (c.i != text.size()) throw ParseError("trailing input", c.i);
    return r;
}

}  // namespace slstar
