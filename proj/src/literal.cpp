#include <cctype>

#include "slstar/ring.hpp"

// Element literal grammar, shared by the CLI and the report files:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-'* atom ('^' uint)?
//   atom   := uint | symbol | '(' expr ('|' expr)? ')' | '[' row (',' row)* ']'
// Symbols: i,j,k (quaternions), s (quadratic extensions), t (truncated/
// polynomial/rational-function kinds), x (finite fields GF(p^k)).
// A '(a|b)' pair parses its halves in the product's component ring; a matrix
// parses entries in the base ring. Division means multiplication by the
// inverse and fails on non-units.

namespace slstar {

namespace {

struct LCursor {
    const std::string& s;
    size_t i = 0;

    void ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        ws();
        return i < s.size() && s[i] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", i);
    }
    BigInt number() {
        ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw ParseError("expected a number", i);
        return BigInt(s.substr(start, i - start));
    }
};

Element parse_expr(const Ring& r, LCursor& c);

Element symbol_value(const Ring& r, char sym, size_t pos) {
    switch (r.kind()) {
        case RingKind::RationalQuat: {
            int coord = sym == 'i' ? 1 : sym == 'j' ? 2 : sym == 'k' ? 3 : 0;
            if (coord) {
                Element e = r.zero();
                e.q[coord] = 1;
                return e;
            }
            break;
        }
        case RingKind::QuadExtField:
        case RingKind::QuadExtQ:
            if (sym == 's') {
                Element e = r.zero();
                e.sub[1] = e.sub[1].ring->one();
                return e;
            }
            break;
        case RingKind::FiniteField:
            if (sym == 'x') {
                Element e = r.zero();
                e.sub[1] = e.sub[1].ring->one();
                return e;
            }
            break;
        case RingKind::TruncatedPoly:
            if (sym == 't' && r.desc()->k >= 2) {
                Element e = r.zero();
                e.sub[1] = e.sub[1].ring->one();
                return e;
            }
            break;
        case RingKind::PolyRing:
            if (sym == 't') {
                const Ring& B = ring_for(r.desc()->sub[0]);
                Element e = r.zero();
                e.sub = {B.zero(), B.one()};
                return e;
            }
            break;
        case RingKind::RatFunField:
            if (sym == 't') {
                const Ring& P = ring_for(make_poly_ring(r.desc()->sub[0]));
                const Ring& B = ring_for(r.desc()->sub[0]);
                Element num = P.zero();
                num.sub = {B.zero(), B.one()};
                Element e = r.one();
                e.sub[0] = num;
                return e;
            }
            break;
        default: break;
    }
    throw ParseError(std::string("symbol '") + sym + "' not valid in " + r.desc()->str(), pos);
}

Element parse_atom(const Ring& r, LCursor& c) {
    c.ws();
    if (c.i >= c.s.size()) throw ParseError("unexpected end of literal", c.i);
    char ch = c.s[c.i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
        BigInt v = c.number();
        // route through int64 when possible, else repeated doubling
        if (v <= BigInt(INT64_MAX)) return r.from_int(v.convert_to<int64_t>());
        Element acc = r.zero(), step = r.one();
        BigInt n = v;
        while (n != 0) {
            if (n % 2 != 0) acc = r.add(acc, step);
            step = r.add(step, step);
            n /= 2;
        }
        return acc;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
        ++c.i;
        return symbol_value(r, ch, c.i - 1);
    }
    if (ch == '(') {
        ++c.i;
        if (r.kind() == RingKind::Product) {
            const Ring& comp = ring_for(r.desc()->sub[0]);
            size_t save = c.i;
            // try a pair first; fall back to a parenthesized expression
            try {
                Element a = parse_expr(comp, c);
                if (c.eat('|')) {
                    Element b = parse_expr(comp, c);
                    c.expect(')');
                    Element e = r.zero();
                    e.sub = {std::move(a), std::move(b)};
                    return e;
                }
            } catch (const ParseError&) {
            }
            c.i = save;
        }
        Element e = parse_expr(r, c);
        c.expect(')');
        return e;
    }
    if (ch == '[') {
        if (r.kind() != RingKind::Matrix && r.kind() != RingKind::SplitQuat)
            throw ParseError("matrix literal in non-matrix ring " + r.desc()->str(), c.i);
        const Ring& B = matrix_base(r);
        uint64_t n = matrix_dim(r);
        ++c.i;
        std::vector<Element> entries;
        for (uint64_t i = 0; i < n; ++i) {
            if (i) c.expect(',');
            c.expect('[');
            for (uint64_t j = 0; j < n; ++j) {
                if (j) c.expect(',');
                entries.push_back(parse_expr(B, c));
            }
            c.expect(']');
        }
        c.expect(']');
        return matrix_from_entries(r, std::move(entries));
    }
    throw ParseError("unexpected character in literal", c.i);
}

Element parse_factor(const Ring& r, LCursor& c) {
    bool negate = false;
    while (c.eat('-')) negate = !negate;
    Element e = parse_atom(r, c);
    if (c.eat('^')) {
        BigInt exp = c.number();
        Element acc = r.one(), base = e;
        BigInt n = exp;
        while (n != 0) {
            if (n % 2 != 0) acc = r.mul(acc, base);
            base = r.mul(base, base);
            n /= 2;
        }
        e = acc;
    }
    return negate ? r.neg(e) : e;
}

Element parse_term(const Ring& r, LCursor& c) {
    Element e = parse_factor(r, c);
    for (;;) {
        if (c.eat('*')) {
            e = r.mul(e, parse_factor(r, c));
        } else if (c.peek('/')) {
            ++c.i;
            size_t at = c.i;
            Element d = parse_factor(r, c);
            auto inv = r.try_invert(d);
            if (!inv) throw ParseError("division by a non-unit", at);
            e = r.mul(e, *inv);
        } else {
            break;
        }
    }
    return e;
}

Element parse_expr(const Ring& r, LCursor& c) {
    Element e = parse_term(r, c);
    for (;;) {
        if (c.eat('+')) {
            e = r.add(e, parse_term(r, c));
        } else if (c.peek('-')) {
            // leave the '-' for the factor parser so "-2*i" negates the term
            ++c.i;
            e = r.sub_(e, parse_term(r, c));
        } else {
            break;
        }
    }
    return e;
}

}  // namespace

Element parse_element(const Ring& r, const std::string& text) {
    LCursor c{text};
    Element e = parse_expr(r, c);
    c.ws();
    if (c.i != text.size()) throw ParseError("trailing input in literal", c.i);
    return e;
}

}  // namespace slstar
