#include "slstar/ring.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace slstar {

bool Element::operator==(const Element& o) const {
    return ring == o.ring && z == o.z && q == o.q && sub == o.sub;
}

Element Ring::from_int(int64_t v) const {
    Element acc = zero();
    Element step = v >= 0 ? one() : neg(one());
    uint64_t n = v >= 0 ? static_cast<uint64_t>(v) : static_cast<uint64_t>(-(v + 1)) + 1;
    // binary chain; literals are small but keep it general
    while (n) {
        if (n & 1) acc = add(acc, step);
        step = add(step, step);
        n >>= 1;
    }
    return acc;
}

Element Ring::element_at(uint64_t) const { throw InfiniteRingError(); }
uint64_t Ring::index_of(const Element&) const { throw InfiniteRingError(); }

bool Ring::radical_member(const Element& x) const {
    // semisimple default (fields, division rings, Z, F_q[t]): J = 0
    return is_zero(x);
}
DescriptorPtr Ring::residue_descriptor() const { return desc_; }
Element Ring::project(const Element& x) const { return x; }
Element Ring::section(const Element& xbar) const {
    if (xbar.ring != this) throw DescriptorMismatch();
    return xbar;
}

uint64_t Ring::hash(const Element& x) const { return fnv1a64(format(x)); }

std::vector<Element> enumerate(const Ring& r) {
    auto n = r.size();
    if (!n) throw InfiniteRingError();
    std::vector<Element> out;
    out.reserve(*n);
    for (uint64_t i = 0; i < *n; ++i) out.push_back(r.element_at(i));
    return out;
}

std::vector<Element> symmetric_elements(const Ring& r) {
    auto n = r.size();
    if (!n) throw InfiniteRingError();
    std::vector<Element> out;
    for (uint64_t i = 0; i < *n; ++i) {
        Element x = r.element_at(i);
        if (r.is_symmetric(x)) out.push_back(std::move(x));
    }
    return out;
}

// ---------------------------------------------------------------------------
// polynomial helpers over a coefficient field (dense, ascending powers)

namespace {

using Poly = std::vector<Element>;

void poly_trim(const Ring& B, Poly& p) {
    while (!p.empty() && B.is_zero(p.back())) p.pop_back();
}

Poly poly_add(const Ring& B, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), B.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] = B.add(r[i], a[i]);
        if (i < b.size()) r[i] = B.add(r[i], b[i]);
    }
    poly_trim(B, r);
    return r;
}

Poly poly_neg(const Ring& B, const Poly& a) {
    Poly r = a;
    for (auto& c : r) c = B.neg(c);
    return r;
}

Poly poly_mul(const Ring& B, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, B.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = B.add(r[i + j], B.mul(a[i], b[j]));
    poly_trim(B, r);
    return r;
}

// division with remainder; requires invertible leading coefficient of d
std::pair<Poly, Poly> poly_divmod(const Ring& B, Poly n, const Poly& d) {
    Poly q;
    if (d.empty()) throw std::domain_error("polynomial division by zero");
    auto lcinv = B.try_invert(d.back());
    if (!lcinv) throw std::domain_error("leading coefficient not invertible");
    if (n.size() >= d.size()) q.assign(n.size() - d.size() + 1, B.zero());
    while (n.size() >= d.size() && !n.empty()) {
        Element c = B.mul(n.back(), *lcinv);
        size_t shift = n.size() - d.size();
        q[shift] = c;
        for (size_t i = 0; i < d.size(); ++i)
            n[shift + i] = B.sub_(n[shift + i], B.mul(c, d[i]));
        poly_trim(B, n);
    }
    poly_trim(B, q);
    return {q, n};
}

Poly poly_mod(const Ring& B, Poly n, const Poly& d) { return poly_divmod(B, std::move(n), d).second; }

Poly poly_gcd(const Ring& B, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = poly_mod(B, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// g = gcd(a,b) = u*a + v*b
void poly_ext_gcd(const Ring& B, Poly a, Poly b, Poly& g, Poly& u, Poly& v) {
    Poly u0 = {B.one()}, v0 = {}, u1 = {}, v1 = {B.one()};
    poly_trim(B, u0);
    while (!b.empty()) {
        auto [q, r] = poly_divmod(B, a, b);
        a = std::move(b);
        b = std::move(r);
        Poly nu = poly_add(B, u0, poly_neg(B, poly_mul(B, q, u1)));
        Poly nv = poly_add(B, v0, poly_neg(B, poly_mul(B, q, v1)));
        u0 = std::move(u1);
        v0 = std::move(v1);
        u1 = std::move(nu);
        v1 = std::move(nv);
    }
    g = std::move(a);
    u = std::move(u0);
    v = std::move(v0);
}

bool poly_is_irreducible(const Ring& B, const Poly& m) {
    // trial division by all monic polynomials of degree <= deg/2
    if (m.size() < 2) return false;
    size_t deg = m.size() - 1;
    auto bn = B.size();
    if (!bn) throw InfiniteRingError();
    for (size_t d = 1; 2 * d <= deg; ++d) {
        // monic divisor candidates: d coefficients free
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= *bn;
        for (uint64_t idx = 0; idx < count; ++idx) {
            Poly cand(d + 1, B.zero());
            uint64_t t = idx;
            for (size_t i = 0; i < d; ++i) {
                cand[i] = B.element_at(t % *bn);
                t /= *bn;
            }
            cand[d] = B.one();
            if (poly_mod(B, m, cand).empty()) return false;
        }
    }
    return true;
}

uint64_t upow(uint64_t b, uint64_t e) {
    uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Z/(p^k), including prime fields

namespace {

class ZmodRing final : public Ring {
public:
    ZmodRing(DescriptorPtr d, uint64_t p, uint64_t k)
        : Ring(std::move(d)), p_(p), m_(upow(p, k)) {}

    Element make(BigInt v) const {
        Element e;
        e.ring = this;
        e.z = ((v % m_) + m_) % m_;
        return e;
    }

    Element zero() const override { return make(0); }
    Element one() const override { return make(1); }
    Element add(const Element& x, const Element& y) const override { return make(x.z + y.z); }
    Element neg(const Element& x) const override { return make(-x.z); }
    Element mul(const Element& x, const Element& y) const override { return make(x.z * y.z); }
    Element involute(const Element& x) const override { return x; }

    std::optional<Element> try_invert(const Element& x) const override {
        BigInt g, u, v;
        ext_gcd(x.z, BigInt(m_), g, u, v);
        if (g != 1) return std::nullopt;
        return make(u);
    }

    std::optional<uint64_t> size() const override { return m_; }
    Element element_at(uint64_t i) const override { return make(BigInt(i)); }
    uint64_t index_of(const Element& x) const override { return x.z.convert_to<uint64_t>(); }

    bool radical_member(const Element& x) const override {
        return desc_->k == 1 ? x.z == 0 : x.z % p_ == 0;
    }
    DescriptorPtr residue_descriptor() const override {
        return desc_->k == 1 ? desc_ : make_prime_field(p_);
    }
    Element project(const Element& x) const override;
    Element section(const Element& xbar) const override;

    Element sample(Rng& rng) const override { return element_at(rng.below(m_)); }
    std::string format(const Element& x) const override { return x.z.str(); }
    bool is_division_ring() const override { return desc_->k == 1; }

    uint64_t p_, m_;

private:
    static void ext_gcd(BigInt a, BigInt b, BigInt& g, BigInt& u, BigInt& v) {
        BigInt u0 = 1, v0 = 0, u1 = 0, v1 = 1;
        while (b != 0) {
            BigInt q = a / b, r = a % b;
            a = b;
            b = r;
            BigInt nu = u0 - q * u1, nv = v0 - q * v1;
            u0 = u1;
            v0 = v1;
            u1 = nu;
            v1 = nv;
        }
        g = a;
        u = u0;
        v = v0;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// quotients B[x]/(m): GF(p^k), Quad(GF(q)), Quad(Q,d), Trunc(GF(q),k)

namespace {

class PolyQuotRing final : public Ring {
public:
    PolyQuotRing(DescriptorPtr d, const Ring& base, Poly modulus, bool galois)
        : Ring(std::move(d)), base_(base), m_(std::move(modulus)), galois_(galois) {
        deg_ = m_.size() - 1;
    }

    Element make(Poly coeffs) const {
        coeffs = poly_mod(base_, std::move(coeffs), m_);
        coeffs.resize(deg_, base_.zero());
        Element e;
        e.ring = this;
        e.sub = std::move(coeffs);
        return e;
    }

    Element zero() const override { return make({}); }
    Element one() const override { return make({base_.one()}); }

    Element add(const Element& x, const Element& y) const override {
        return make(poly_add(base_, x.sub, y.sub));
    }
    Element neg(const Element& x) const override { return make(poly_neg(base_, x.sub)); }
    Element mul(const Element& x, const Element& y) const override {
        return make(poly_mul(base_, x.sub, y.sub));
    }

    Element involute(const Element& x) const override {
        if (!galois_) return x;
        // conjugation swaps the two roots of the quadratic modulus:
        // s |-> -m1 - s, so a + b s |-> (a - b m1) - b s
        const Element& a = x.sub[0];
        const Element& b = x.sub[1];
        Element a2 = base_.sub_(a, base_.mul(b, m_[1]));
        return make({a2, base_.neg(b)});
    }

    std::optional<Element> try_invert(const Element& x) const override {
        Poly xs = x.sub;
        poly_trim(base_, xs);
        if (xs.empty()) return std::nullopt;
        Poly g, u, v;
        poly_ext_gcd(base_, xs, m_, g, u, v);
        if (g.size() != 1) return std::nullopt;
        auto c = base_.try_invert(g[0]);
        if (!c) return std::nullopt;
        return make(poly_mul(base_, u, {*c}));
    }

    std::optional<uint64_t> size() const override {
        auto b = base_.size();
        if (!b) return std::nullopt;
        return upow(*b, deg_);
    }
    Element element_at(uint64_t i) const override {
        uint64_t bn = *base_.size();
        Poly c(deg_, base_.zero());
        for (size_t j = 0; j < deg_; ++j) {
            c[j] = base_.element_at(i % bn);
            i /= bn;
        }
        Element e;
        e.ring = this;
        e.sub = std::move(c);
        return e;
    }
    uint64_t index_of(const Element& x) const override {
        uint64_t bn = *base_.size(), idx = 0;
        for (size_t j = deg_; j-- > 0;) idx = idx * bn + base_.index_of(x.sub[j]);
        return idx;
    }

    bool truncation() const { return desc_->kind == RingKind::TruncatedPoly; }

    bool radical_member(const Element& x) const override {
        if (truncation()) return base_.is_zero(x.sub[0]);
        return is_zero(x);
    }
    DescriptorPtr residue_descriptor() const override {
        return truncation() ? base_.desc() : desc_;
    }
    Element project(const Element& x) const override {
        return truncation() ? x.sub[0] : x;
    }
    Element section(const Element& xbar) const override {
        if (!truncation()) return Ring::section(xbar);
        if (xbar.ring != &base_) throw DescriptorMismatch();
        return make({xbar});
    }

    Element sample(Rng& rng) const override {
        Poly c(deg_, base_.zero());
        for (auto& ci : c) ci = base_.sample(rng);
        Element e;
        e.ring = this;
        e.sub = std::move(c);
        return e;
    }

    std::string format(const Element& x) const override;
    bool is_division_ring() const override { return !truncation(); }

    const Ring& base_;
    Poly m_;
    size_t deg_;
    bool galois_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Q, Z, Quat

namespace {

class RationalRing final : public Ring {
public:
    using Ring::Ring;
    Element make(Rational r) const {
        Element e;
        e.ring = this;
        e.q = {std::move(r)};
        return e;
    }
    Element zero() const override { return make(0); }
    Element one() const override { return make(1); }
    Element add(const Element& x, const Element& y) const override { return make(x.q[0] + y.q[0]); }
    Element neg(const Element& x) const override { return make(-x.q[0]); }
    Element mul(const Element& x, const Element& y) const override { return make(x.q[0] * y.q[0]); }
    Element involute(const Element& x) const override { return x; }
    std::optional<Element> try_invert(const Element& x) const override {
        if (x.q[0] == 0) return std::nullopt;
        return make(1 / x.q[0]);
    }
    std::optional<uint64_t> size() const override { return std::nullopt; }
    Element sample(Rng& rng) const override {
        int64_t num = rng.centered(9);
        int64_t den = 1 + static_cast<int64_t>(rng.below(4));
        return make(Rational(num, den));
    }
    std::string format(const Element& x) const override { return x.q[0].str(); }
    bool is_division_ring() const override { return true; }
};

class IntegerRing final : public Ring {
public:
    using Ring::Ring;
    Element make(BigInt v) const {
        Element e;
        e.ring = this;
        e.z = std::move(v);
        return e;
    }
    Element zero() const override { return make(0); }
    Element one() const override { return make(1); }
    Element add(const Element& x, const Element& y) const override { return make(x.z + y.z); }
    Element neg(const Element& x) const override { return make(-x.z); }
    Element mul(const Element& x, const Element& y) const override { return make(x.z * y.z); }
    Element involute(const Element& x) const override { return x; }
    std::optional<Element> try_invert(const Element& x) const override {
        if (x.z == 1 || x.z == -1) return x;
        return std::nullopt;
    }
    std::optional<uint64_t> size() const override { return std::nullopt; }
    Element sample(Rng& rng) const override { return make(BigInt(rng.centered(9))); }
    std::string format(const Element& x) const override { return x.z.str(); }
};

class QuatRing final : public Ring {
public:
    using Ring::Ring;
    Element make(Rational x, Rational y, Rational z, Rational w) const {
        Element e;
        e.ring = this;
        e.q = {std::move(x), std::move(y), std::move(z), std::move(w)};
        return e;
    }
    Element zero() const override { return make(0, 0, 0, 0); }
    Element one() const override { return make(1, 0, 0, 0); }
    Element add(const Element& a, const Element& b) const override {
        return make(a.q[0] + b.q[0], a.q[1] + b.q[1], a.q[2] + b.q[2], a.q[3] + b.q[3]);
    }
    Element neg(const Element& a) const override { return make(-a.q[0], -a.q[1], -a.q[2], -a.q[3]); }
    Element mul(const Element& a, const Element& b) const override {
        const Rational &x1 = a.q[0], &y1 = a.q[1], &z1 = a.q[2], &w1 = a.q[3];
        const Rational &x2 = b.q[0], &y2 = b.q[1], &z2 = b.q[2], &w2 = b.q[3];
        return make(x1 * x2 - y1 * y2 - z1 * z2 - w1 * w2,
                    x1 * y2 + y1 * x2 + z1 * w2 - w1 * z2,
                    x1 * z2 - y1 * w2 + z1 * x2 + w1 * y2,
                    x1 * w2 + y1 * z2 - z1 * y2 + w1 * x2);
    }
    Element involute(const Element& a) const override {
        return make(a.q[0], -a.q[1], -a.q[2], -a.q[3]);
    }
    Rational nrd(const Element& a) const {
        return a.q[0] * a.q[0] + a.q[1] * a.q[1] + a.q[2] * a.q[2] + a.q[3] * a.q[3];
    }
    std::optional<Element> try_invert(const Element& a) const override {
        Rational n = nrd(a);
        if (n == 0) return std::nullopt;
        return make(a.q[0] / n, -a.q[1] / n, -a.q[2] / n, -a.q[3] / n);
    }
    std::optional<uint64_t> size() const override { return std::nullopt; }
    Element sample(Rng& rng) const override {
        return make(rng.centered(5), rng.centered(5), rng.centered(5), rng.centered(5));
    }
    std::string format(const Element& x) const override;
    bool is_division_ring() const override { return true; }
};

}  // namespace

// ---------------------------------------------------------------------------
// F_q[t] and F_q(t)

namespace {

class PolyRing final : public Ring {
public:
    PolyRing(DescriptorPtr d, const Ring& base) : Ring(std::move(d)), base_(base) {}

    Element make(Poly c) const {
        poly_trim(base_, c);
        Element e;
        e.ring = this;
        e.sub = std::move(c);
        return e;
    }
    Element zero() const override { return make({}); }
    Element one() const override { return make({base_.one()}); }
    Element add(const Element& x, const Element& y) const override {
        return make(poly_add(base_, x.sub, y.sub));
    }
    Element neg(const Element& x) const override { return make(poly_neg(base_, x.sub)); }
    Element mul(const Element& x, const Element& y) const override {
        return make(poly_mul(base_, x.sub, y.sub));
    }
    Element involute(const Element& x) const override { return x; }
    std::optional<Element> try_invert(const Element& x) const override {
        if (x.sub.size() != 1) return std::nullopt;
        auto c = base_.try_invert(x.sub[0]);
        if (!c) return std::nullopt;
        return make({*c});
    }
    std::optional<uint64_t> size() const override { return std::nullopt; }
    Element sample(Rng& rng) const override {
        Poly c(rng.below(4), base_.zero());
        for (auto& ci : c) ci = base_.sample(rng);
        return make(std::move(c));
    }
    std::string format(const Element& x) const override;

    const Ring& base_;
};

class RatFunRing final : public Ring {
public:
    RatFunRing(DescriptorPtr d, const PolyRing& polys) : Ring(std::move(d)), polys_(polys) {}

    // canonical form: reduced fraction, monic denominator
    Element make(Poly num, Poly den) const {
        const Ring& B = polys_.base_;
        poly_trim(B, num);
        poly_trim(B, den);
        if (den.empty()) throw std::domain_error("zero denominator");
        if (num.empty()) den = {B.one()};
        Poly g = poly_gcd(B, num, den);
        if (g.size() > 1 || (g.size() == 1 && !B.is_one(g[0]))) {
            num = poly_divmod(B, num, g).first;
            den = poly_divmod(B, den, g).first;
        }
        auto lc = B.try_invert(den.back());
        num = poly_mul(B, num, {*lc});
        den = poly_mul(B, den, {*lc});
        Element e;
        e.ring = this;
        e.sub = {polys_.make(std::move(num)), polys_.make(std::move(den))};
        return e;
    }

    Element zero() const override { return make({}, {polys_.base_.one()}); }
    Element one() const override { return make({polys_.base_.one()}, {polys_.base_.one()}); }
    Element add(const Element& x, const Element& y) const override {
        const Ring& B = polys_.base_;
        Poly n = poly_add(B, poly_mul(B, x.sub[0].sub, y.sub[1].sub),
                          poly_mul(B, y.sub[0].sub, x.sub[1].sub));
        return make(std::move(n), poly_mul(B, x.sub[1].sub, y.sub[1].sub));
    }
    Element neg(const Element& x) const override {
        return make(poly_neg(polys_.base_, x.sub[0].sub), x.sub[1].sub);
    }
    Element mul(const Element& x, const Element& y) const override {
        const Ring& B = polys_.base_;
        return make(poly_mul(B, x.sub[0].sub, y.sub[0].sub),
                    poly_mul(B, x.sub[1].sub, y.sub[1].sub));
    }
    Element involute(const Element& x) const override { return x; }
    std::optional<Element> try_invert(const Element& x) const override {
        if (x.sub[0].sub.empty()) return std::nullopt;
        return make(x.sub[1].sub, x.sub[0].sub);
    }
    std::optional<uint64_t> size() const override { return std::nullopt; }
    Element sample(Rng& rng) const override {
        Element n = polys_.sample(rng);
        Element d = polys_.zero();
        while (d.sub.empty()) d = polys_.sample(rng);
        return make(n.sub, d.sub);
    }
    std::string format(const Element& x) const override;
    bool is_division_ring() const override { return true; }

    const PolyRing& polys_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Prod(R,R) with the flip involution (x,y)* = (y*,x*)

namespace {

class ProdRing final : public Ring {
public:
    ProdRing(DescriptorPtr d, const Ring& comp) : Ring(std::move(d)), comp_(comp) {}

    Element make(Element x, Element y) const {
        Element e;
        e.ring = this;
        e.sub = {std::move(x), std::move(y)};
        return e;
    }
    Element zero() const override { return make(comp_.zero(), comp_.zero()); }
    Element one() const override { return make(comp_.one(), comp_.one()); }
    Element add(const Element& x, const Element& y) const override {
        return make(comp_.add(x.sub[0], y.sub[0]), comp_.add(x.sub[1], y.sub[1]));
    }
    Element neg(const Element& x) const override {
        return make(comp_.neg(x.sub[0]), comp_.neg(x.sub[1]));
    }
    Element mul(const Element& x, const Element& y) const override {
        return make(comp_.mul(x.sub[0], y.sub[0]), comp_.mul(x.sub[1], y.sub[1]));
    }
    Element involute(const Element& x) const override {
        return make(comp_.involute(x.sub[1]), comp_.involute(x.sub[0]));
    }
    std::optional<Element> try_invert(const Element& x) const override {
        auto a = comp_.try_invert(x.sub[0]);
        if (!a) return std::nullopt;
        auto b = comp_.try_invert(x.sub[1]);
        if (!b) return std::nullopt;
        return make(std::move(*a), std::move(*b));
    }
    std::optional<uint64_t> size() const override {
        auto n = comp_.size();
        if (!n) return std::nullopt;
        return *n * *n;
    }
    Element element_at(uint64_t i) const override {
        uint64_t n = *comp_.size();
        return make(comp_.element_at(i / n), comp_.element_at(i % n));
    }
    uint64_t index_of(const Element& x) const override {
        uint64_t n = *comp_.size();
        return comp_.index_of(x.sub[0]) * n + comp_.index_of(x.sub[1]);
    }
    bool radical_member(const Element& x) const override {
        return comp_.radical_member(x.sub[0]) && comp_.radical_member(x.sub[1]);
    }
    DescriptorPtr residue_descriptor() const override {
        return make_product(comp_.residue_descriptor());
    }
    Element project(const Element& x) const override;
    Element section(const Element& xbar) const override;
    Element sample(Rng& rng) const override { return make(comp_.sample(rng), comp_.sample(rng)); }
    std::string format(const Element& x) const override {
        return "(" + comp_.format(x.sub[0]) + "|" + comp_.format(x.sub[1]) + ")";
    }

    const Ring& comp_;
};

}  // namespace

// ---------------------------------------------------------------------------
// matrix kinds: Mat(n,R) with *-transpose and SplitQuat(R) = M(2,R) with
// h* = J h^t J^{-1} (entrywise base involution composed in)

namespace {

class MatLikeRing final : public Ring {
public:
    MatLikeRing(DescriptorPtr d, const Ring& base, uint64_t n, bool split_quat)
        : Ring(std::move(d)), base_(base), n_(n), sq_(split_quat) {}

    Element make(std::vector<Element> entries) const {
        Element e;
        e.ring = this;
        e.sub = std::move(entries);
        return e;
    }
    const Element& at(const Element& m, uint64_t i, uint64_t j) const {
        return m.sub[i * n_ + j];
    }

    Element zero() const override {
        return make(std::vector<Element>(n_ * n_, base_.zero()));
    }
    Element one() const override {
        auto e = std::vector<Element>(n_ * n_, base_.zero());
        for (uint64_t i = 0; i < n_; ++i) e[i * n_ + i] = base_.one();
        return make(std::move(e));
    }
    Element add(const Element& x, const Element& y) const override {
        std::vector<Element> e(n_ * n_);
        for (size_t i = 0; i < e.size(); ++i) e[i] = base_.add(x.sub[i], y.sub[i]);
        return make(std::move(e));
    }
    Element neg(const Element& x) const override {
        std::vector<Element> e(n_ * n_);
        for (size_t i = 0; i < e.size(); ++i) e[i] = base_.neg(x.sub[i]);
        return make(std::move(e));
    }
    Element mul(const Element& x, const Element& y) const override {
        std::vector<Element> e(n_ * n_, base_.zero());
        for (uint64_t i = 0; i < n_; ++i)
            for (uint64_t k = 0; k < n_; ++k) {
                const Element& xik = at(x, i, k);
                if (base_.is_zero(xik)) continue;
                for (uint64_t j = 0; j < n_; ++j)
                    e[i * n_ + j] = base_.add(e[i * n_ + j], base_.mul(xik, at(y, k, j)));
            }
        return make(std::move(e));
    }
    Element involute(const Element& x) const override {
        std::vector<Element> e(n_ * n_);
        if (!sq_) {
            for (uint64_t i = 0; i < n_; ++i)
                for (uint64_t j = 0; j < n_; ++j)
                    e[i * n_ + j] = base_.involute(at(x, j, i));
        } else {
            // J (x^t with base involution) J^{-1} = [[d*,-b*],[-c*,a*]]
            e[0] = base_.involute(x.sub[3]);
            e[1] = base_.neg(base_.involute(x.sub[1]));
            e[2] = base_.neg(base_.involute(x.sub[2]));
            e[3] = base_.involute(x.sub[0]);
        }
        return make(std::move(e));
    }
    std::optional<Element> try_invert(const Element& x) const override;

    std::optional<uint64_t> size() const override {
        auto b = base_.size();
        if (!b) return std::nullopt;
        uint64_t total = 1;
        for (uint64_t i = 0; i < n_ * n_; ++i) {
            if (total > (uint64_t(1) << 56) / *b) return std::nullopt;
            total *= *b;
        }
        return total;
    }
    Element element_at(uint64_t i) const override {
        uint64_t bn = *base_.size();
        std::vector<Element> e(n_ * n_);
        for (auto& c : e) {
            c = base_.element_at(i % bn);
            i /= bn;
        }
        return make(std::move(e));
    }
    uint64_t index_of(const Element& x) const override {
        uint64_t bn = *base_.size(), idx = 0;
        for (size_t i = x.sub.size(); i-- > 0;) idx = idx * bn + base_.index_of(x.sub[i]);
        return idx;
    }
    bool radical_member(const Element& x) const override {
        for (const auto& c : x.sub)
            if (!base_.radical_member(c)) return false;
        return true;
    }
    DescriptorPtr residue_descriptor() const override {
        auto rb = base_.residue_descriptor();
        return sq_ ? make_split_quat(rb) : make_matrix(n_, rb);
    }
    Element project(const Element& x) const override;
    Element section(const Element& xbar) const override;
    Element sample(Rng& rng) const override {
        std::vector<Element> e(n_ * n_);
        for (auto& c : e) c = base_.sample(rng);
        return make(std::move(e));
    }
    std::string format(const Element& x) const override {
        std::string s = "[";
        for (uint64_t i = 0; i < n_; ++i) {
            s += i ? ",[" : "[";
            for (uint64_t j = 0; j < n_; ++j) {
                if (j) s += ",";
                s += base_.format(at(x, i, j));
            }
            s += "]";
        }
        return s + "]";
    }

    const Ring& base_;
    uint64_t n_;
    bool sq_;
};

}  // namespace

// ---------------------------------------------------------------------------
// registry

namespace {

std::recursive_mutex registry_mutex;
std::map<std::string, std::unique_ptr<Ring>>& registry() {
    static std::map<std::string, std::unique_ptr<Ring>> reg;
    return reg;
}

Poly builtin_modulus(const Ring& B, uint64_t p, uint64_t k) {
    // short table of irreducibles for the common (p,k); lexicographically
    // least monic irreducible otherwise
    static const std::map<std::pair<uint64_t, uint64_t>, std::vector<int64_t>> table = {
        {{2, 2}, {1, 1, 1}},          {{2, 3}, {1, 1, 0, 1}},
        {{2, 4}, {1, 1, 0, 0, 1}},    {{2, 5}, {1, 0, 1, 0, 0, 1}},
        {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},
        {{3, 2}, {1, 0, 1}},          {{3, 3}, {1, 2, 0, 1}},
        {{5, 2}, {2, 0, 1}},          {{7, 2}, {1, 0, 1}},
    };
    auto it = table.find({p, k});
    if (it != table.end()) {
        Poly m;
        for (int64_t c : it->second) m.push_back(B.from_int(c));
        if (!poly_is_irreducible(B, m)) throw std::logic_error("bad modulus table entry");
        return m;
    }
    uint64_t bn = *B.size();
    uint64_t count = upow(bn, k);
    for (uint64_t idx = 0; idx < count; ++idx) {
        Poly m(k + 1, B.zero());
        uint64_t t = idx;
        for (uint64_t i = 0; i < k; ++i) {
            m[i] = B.element_at(t % bn);
            t /= bn;
        }
        m[k] = B.one();
        if (poly_is_irreducible(B, m)) return m;
    }
    throw std::logic_error("no irreducible modulus found");
}

std::unique_ptr<Ring> build_ring(const DescriptorPtr& d) {
    switch (d->kind) {
        case RingKind::PrimeField: return std::make_unique<ZmodRing>(d, d->p, 1);
        case RingKind::ResidueRing: return std::make_unique<ZmodRing>(d, d->p, d->k);
        case RingKind::FiniteField: {
            const Ring& B = ring_for(make_prime_field(d->p));
            return std::make_unique<PolyQuotRing>(d, B, builtin_modulus(B, d->p, d->k), false);
        }
        case RingKind::TruncatedPoly: {
            const Ring& B = ring_for(d->sub[0]);
            Poly m(d->k + 1, B.zero());
            m[d->k] = B.one();
            return std::make_unique<PolyQuotRing>(d, B, std::move(m), false);
        }
        case RingKind::QuadExtField: {
            const Ring& B = ring_for(d->sub[0]);
            uint64_t bn = *B.size();
            // least irreducible monic quadratic over GF(q)
            for (uint64_t idx = 0; idx < bn * bn; ++idx) {
                Poly m = {B.element_at(idx % bn), B.element_at(idx / bn), B.one()};
                if (poly_is_irreducible(B, m))
                    return std::make_unique<PolyQuotRing>(d, B, std::move(m), true);
            }
            throw std::logic_error("no irreducible quadratic");
        }
        case RingKind::QuadExtQ: {
            const Ring& B = ring_for(make_rationals());
            Poly m = {B.from_int(-d->d), B.zero(), B.one()};
            return std::make_unique<PolyQuotRing>(d, B, std::move(m), true);
        }
        case RingKind::Rationals: return std::make_unique<RationalRing>(d);
        case RingKind::Integers: return std::make_unique<IntegerRing>(d);
        case RingKind::RationalQuat: return std::make_unique<QuatRing>(d);
        case RingKind::PolyRing: return std::make_unique<class PolyRing>(d, ring_for(d->sub[0]));
        case RingKind::RatFunField: {
            const Ring& P = ring_for(make_poly_ring(d->sub[0]));
            return std::make_unique<RatFunRing>(d, static_cast<const class PolyRing&>(P));
        }
        case RingKind::Product: return std::make_unique<ProdRing>(d, ring_for(d->sub[0]));
        case RingKind::Matrix:
            return std::make_unique<MatLikeRing>(d, ring_for(d->sub[0]), d->n, false);
        case RingKind::SplitQuat:
            return std::make_unique<MatLikeRing>(d, ring_for(d->sub[0]), 2, true);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

const Ring& ring_for(const DescriptorPtr& d) {
    std::lock_guard<std::recursive_mutex> lock(registry_mutex);
    auto& reg = registry();
    auto key = d->str();
    auto it = reg.find(key);
    if (it != reg.end()) return *it->second;
    auto r = build_ring(d);  // may recurse into ring_for; mutex is recursive
    auto [pos, inserted] = reg.emplace(key, std::move(r));
    return *pos->second;
}

const Ring& ring_for(const std::string& text) { return ring_for(parse_descriptor(text)); }

// deferred project/section definitions (need ring_for)

Element ZmodRing::project(const Element& x) const {
    if (desc_->k == 1) return x;
    const Ring& R = ring_for(residue_descriptor());
    return static_cast<const ZmodRing&>(R).make(x.z % p_);
}
Element ZmodRing::section(const Element& xbar) const {
    if (desc_->k == 1) return Ring::section(xbar);
    const Ring& R = ring_for(residue_descriptor());
    if (xbar.ring != &R) throw DescriptorMismatch();
    return make(xbar.z);  // least nonnegative residue, already < p
}
Element ProdRing::project(const Element& x) const {
    const Ring& R = ring_for(residue_descriptor());
    return static_cast<const ProdRing&>(R).make(comp_.project(x.sub[0]), comp_.project(x.sub[1]));
}
Element ProdRing::section(const Element& xbar) const {
    const Ring& R = ring_for(residue_descriptor());
    if (xbar.ring != &R) throw DescriptorMismatch();
    return make(comp_.section(xbar.sub[0]), comp_.section(xbar.sub[1]));
}
Element MatLikeRing::project(const Element& x) const {
    const Ring& R = ring_for(residue_descriptor());
    std::vector<Element> e(x.sub.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = base_.project(x.sub[i]);
    return static_cast<const MatLikeRing&>(R).make(std::move(e));
}
Element MatLikeRing::section(const Element& xbar) const {
    const Ring& R = ring_for(residue_descriptor());
    if (xbar.ring != &R) throw DescriptorMismatch();
    std::vector<Element> e(xbar.sub.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = base_.section(xbar.sub[i]);
    return make(std::move(e));
}

// ---------------------------------------------------------------------------
// matrix inversion, dispatching on the entry ring

namespace {

// unit-pivot Gaussian elimination; correct over division rings and over
// local rings (a matrix is invertible iff elimination finds a unit pivot in
// every column, which mirrors elimination over the residue division ring)
std::optional<std::vector<Element>> eliminate(const Ring& B, uint64_t n,
                                              std::vector<Element> m) {
    std::vector<Element> inv(n * n, B.zero());
    for (uint64_t i = 0; i < n; ++i) inv[i * n + i] = B.one();
    for (uint64_t col = 0; col < n; ++col) {
        uint64_t piv = n;
        for (uint64_t r = col; r < n; ++r)
            if (B.is_unit(m[r * n + col])) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        if (piv != col)
            for (uint64_t j = 0; j < n; ++j) {
                std::swap(m[piv * n + j], m[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
        Element pinv = *B.try_invert(m[col * n + col]);
        for (uint64_t j = 0; j < n; ++j) {
            m[col * n + j] = B.mul(pinv, m[col * n + j]);
            inv[col * n + j] = B.mul(pinv, inv[col * n + j]);
        }
        for (uint64_t r = 0; r < n; ++r) {
            if (r == col || B.is_zero(m[r * n + col])) continue;
            Element f = m[r * n + col];
            for (uint64_t j = 0; j < n; ++j) {
                m[r * n + j] = B.sub_(m[r * n + j], B.mul(f, m[col * n + j]));
                inv[r * n + j] = B.sub_(inv[r * n + j], B.mul(f, inv[col * n + j]));
            }
        }
    }
    return inv;
}

bool local_like(const Ring& B) {
    switch (B.kind()) {
        case RingKind::PrimeField:
        case RingKind::FiniteField:
        case RingKind::ResidueRing:
        case RingKind::TruncatedPoly:
        case RingKind::Rationals:
        case RingKind::RationalQuat:
        case RingKind::QuadExtField:
        case RingKind::QuadExtQ:
        case RingKind::RatFunField: return true;
        default: return false;
    }
}

}  // namespace

std::optional<Element> MatLikeRing::try_invert(const Element& x) const {
    if (local_like(base_)) {
        auto inv = eliminate(base_, n_, x.sub);
        if (!inv) return std::nullopt;
        return make(std::move(*inv));
    }
    switch (base_.kind()) {
        case RingKind::Product: {
            const auto& P = static_cast<const ProdRing&>(base_);
            const Ring& C = P.comp_;
            const Ring& MC = matrix_ring(n_, C.desc());
            std::vector<Element> e1(n_ * n_), e2(n_ * n_);
            for (size_t i = 0; i < x.sub.size(); ++i) {
                e1[i] = x.sub[i].sub[0];
                e2[i] = x.sub[i].sub[1];
            }
            auto i1 = MC.try_invert(static_cast<const MatLikeRing&>(MC).make(std::move(e1)));
            if (!i1) return std::nullopt;
            auto i2 = MC.try_invert(static_cast<const MatLikeRing&>(MC).make(std::move(e2)));
            if (!i2) return std::nullopt;
            std::vector<Element> e(n_ * n_);
            for (size_t i = 0; i < e.size(); ++i) e[i] = P.make(i1->sub[i], i2->sub[i]);
            return make(std::move(e));
        }
        case RingKind::Matrix:
        case RingKind::SplitQuat: {
            // flatten M(n, M(m,R)) to M(nm, R)
            const auto& BM = static_cast<const MatLikeRing&>(base_);
            uint64_t m = BM.n_;
            const Ring& FLAT = matrix_ring(n_ * m, BM.base_.desc());
            std::vector<Element> f(n_ * m * n_ * m);
            for (uint64_t i = 0; i < n_; ++i)
                for (uint64_t j = 0; j < n_; ++j)
                    for (uint64_t r = 0; r < m; ++r)
                        for (uint64_t s = 0; s < m; ++s)
                            f[(i * m + r) * n_ * m + (j * m + s)] = BM.at(at(x, i, j), r, s);
            auto fi = FLAT.try_invert(static_cast<const MatLikeRing&>(FLAT).make(std::move(f)));
            if (!fi) return std::nullopt;
            std::vector<Element> e(n_ * n_);
            for (uint64_t i = 0; i < n_; ++i)
                for (uint64_t j = 0; j < n_; ++j) {
                    std::vector<Element> blk(m * m);
                    for (uint64_t r = 0; r < m; ++r)
                        for (uint64_t s = 0; s < m; ++s)
                            blk[r * m + s] = fi->sub[(i * m + r) * n_ * m + (j * m + s)];
                    e[i * n_ + j] = BM.make(std::move(blk));
                }
            return make(std::move(e));
        }
        case RingKind::Integers:
        case RingKind::PolyRing: {
            // invert over the fraction field; accept only integral inverses
            DescriptorPtr fdesc = base_.kind() == RingKind::Integers
                                      ? make_rationals()
                                      : make_ratfun(base_.desc()->sub[0]);
            const Ring& F = ring_for(fdesc);
            const Ring& MF = matrix_ring(n_, fdesc);
            auto lift = [&](const Element& c) {
                if (base_.kind() == RingKind::Integers) {
                    Element e;
                    e.ring = &F;
                    e.q = {Rational(c.z)};
                    return e;
                }
                return static_cast<const RatFunRing&>(F).make(c.sub, {ring_for(base_.desc()->sub[0]).one()});
            };
            std::vector<Element> fe(n_ * n_);
            for (size_t i = 0; i < fe.size(); ++i) fe[i] = lift(x.sub[i]);
            auto fi = MF.try_invert(static_cast<const MatLikeRing&>(MF).make(std::move(fe)));
            if (!fi) return std::nullopt;
            std::vector<Element> e(n_ * n_);
            for (size_t i = 0; i < e.size(); ++i) {
                const Element& c = fi->sub[i];
                if (base_.kind() == RingKind::Integers) {
                    if (denominator(c.q[0]) != 1) return std::nullopt;
                    Element ei;
                    ei.ring = &base_;
                    ei.z = numerator(c.q[0]);
                    e[i] = std::move(ei);
                } else {
                    if (c.sub[1].sub.size() != 1) return std::nullopt;
                    Element ei;
                    ei.ring = &base_;
                    ei.sub = c.sub[0].sub;
                    e[i] = std::move(ei);
                }
            }
            return make(std::move(e));
        }
        default:
            throw UnsupportedRing("matrix inversion over " + base_.desc()->str());
    }
}

// ---------------------------------------------------------------------------
// matrix helper surface

const Ring& matrix_ring(uint64_t n, const DescriptorPtr& base) {
    return ring_for(make_matrix(n, base));
}

uint64_t matrix_dim(const Ring& r) {
    if (r.kind() != RingKind::Matrix && r.kind() != RingKind::SplitQuat)
        throw UnsupportedRing("not a matrix ring: " + r.desc()->str());
    return static_cast<const MatLikeRing&>(r).n_;
}
const Ring& matrix_base(const Ring& r) {
    if (r.kind() != RingKind::Matrix && r.kind() != RingKind::SplitQuat)
        throw UnsupportedRing("not a matrix ring: " + r.desc()->str());
    return static_cast<const MatLikeRing&>(r).base_;
}
Element matrix_from_entries(const Ring& m, std::vector<Element> entries) {
    const auto& M = static_cast<const MatLikeRing&>(m);
    if (entries.size() != M.n_ * M.n_) throw std::invalid_argument("entry count");
    for (auto& e : entries)
        if (e.ring != &M.base_) throw DescriptorMismatch();
    return M.make(std::move(entries));
}
const Element& entry(const Element& m, uint64_t i, uint64_t j) {
    const auto& M = static_cast<const MatLikeRing&>(*m.ring);
    return M.at(m, i, j);
}
Element identity(const Ring& m) { return m.one(); }
Element scalar_matrix(const Ring& m, const Element& diag) {
    const auto& M = static_cast<const MatLikeRing&>(m);
    std::vector<Element> e(M.n_ * M.n_, M.base_.zero());
    for (uint64_t i = 0; i < M.n_; ++i) e[i * M.n_ + i] = diag;
    return M.make(std::move(e));
}

std::pair<Element, Element> prod_components(const Element& x) {
    const Ring& r = *x.ring;
    if (r.kind() == RingKind::Product) return {x.sub[0], x.sub[1]};
    if (r.kind() == RingKind::Matrix || r.kind() == RingKind::SplitQuat) {
        const Ring& base = matrix_base(r);
        if (base.kind() != RingKind::Product)
            throw UnsupportedRing("matrix base is not a product: " + base.desc()->str());
        const Ring& comp = ring_for(base.desc()->sub[0]);
        const Ring& mc = matrix_ring(matrix_dim(r), comp.desc());
        std::vector<Element> e1(x.sub.size()), e2(x.sub.size());
        for (size_t i = 0; i < x.sub.size(); ++i) {
            e1[i] = x.sub[i].sub[0];
            e2[i] = x.sub[i].sub[1];
        }
        return {matrix_from_entries(mc, std::move(e1)), matrix_from_entries(mc, std::move(e2))};
    }
    throw UnsupportedRing("no product structure: " + r.desc()->str());
}

Element prod_merge(const Ring& target, const Element& x1, const Element& x2) {
    if (target.kind() == RingKind::Product) {
        const auto& P = static_cast<const ProdRing&>(target);
        return P.make(x1, x2);
    }
    const Ring& base = matrix_base(target);
    const auto& P = static_cast<const ProdRing&>(base);
    std::vector<Element> e(x1.sub.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = P.make(x1.sub[i], x2.sub[i]);
    return matrix_from_entries(target, std::move(e));
}

// ---------------------------------------------------------------------------
// centrality

namespace {

std::vector<Element> center_probes(const Ring& r) {
    std::vector<Element> probes;
    switch (r.kind()) {
        case RingKind::RationalQuat: {
            probes.push_back(parse_element(r, "i"));
            probes.push_back(parse_element(r, "j"));
            break;
        }
        case RingKind::Matrix:
        case RingKind::SplitQuat: {
            const auto& M = static_cast<const MatLikeRing&>(r);
            for (uint64_t i = 0; i < M.n_; ++i)
                for (uint64_t j = 0; j < M.n_; ++j) {
                    std::vector<Element> e(M.n_ * M.n_, M.base_.zero());
                    e[i * M.n_ + j] = M.base_.one();
                    probes.push_back(M.make(std::move(e)));
                }
            for (const auto& bp : center_probes(M.base_))
                probes.push_back(scalar_matrix(r, bp));
            break;
        }
        case RingKind::Product: {
            const auto& P = static_cast<const ProdRing&>(r);
            for (const auto& cp : center_probes(P.comp_)) {
                probes.push_back(P.make(cp, P.comp_.zero()));
                probes.push_back(P.make(P.comp_.zero(), cp));
            }
            break;
        }
        default: break;  // commutative kinds
    }
    return probes;
}

}  // namespace

bool is_central_invertible_symmetric(const Element& x) {
    const Ring& r = *x.ring;
    if (!r.is_unit(x) || !r.is_symmetric(x)) return false;
    auto n = r.size();
    if (n && *n <= 4096) {
        for (uint64_t i = 0; i < *n; ++i) {
            Element y = r.element_at(i);
            if (r.mul(x, y) != r.mul(y, x)) return false;
        }
        return true;
    }
    for (const auto& p : center_probes(r))
        if (r.mul(x, p) != r.mul(p, x)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// formatting for the polynomial-flavored kinds

namespace {

std::string poly_format(const Ring& B, const std::vector<Element>& coeffs, const char* var) {
    std::string s;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (B.is_zero(coeffs[i])) continue;
        std::string term;
        if (i == 0) {
            term = B.format(coeffs[i]);
        } else {
            if (!B.is_one(coeffs[i])) term = B.format(coeffs[i]) + "*";
            term += var;
            if (i > 1) term += "^" + std::to_string(i);
        }
        if (!s.empty()) s += "+";
        s += term;
    }
    return s.empty() ? "0" : s;
}

std::string rational_term(const Rational& c, const char* sym, bool& first) {
    if (c == 0) return "";
    std::string s;
    if (c < 0)
        s += "-";
    else if (!first)
        s += "+";
    Rational a = c < 0 ? Rational(-c) : c;
    if (sym[0] == 0) {
        s += a.str();
    } else {
        if (a != 1) s += a.str() + "*";
        s += sym;
    }
    first = false;
    return s;
}

}  // namespace

std::string PolyQuotRing::format(const Element& x) const {
    const char* var = "x";
    if (desc_->kind == RingKind::TruncatedPoly) var = "t";
    if (galois_) var = "s";
    return poly_format(base_, x.sub, var);
}

std::string PolyRing::format(const Element& x) const { return poly_format(base_, x.sub, "t"); }

std::string RatFunRing::format(const Element& x) const {
    std::string n = polys_.format(x.sub[0]);
    if (polys_.is_one(x.sub[1])) return n;
    return "(" + n + ")/(" + polys_.format(x.sub[1]) + ")";
}

std::string QuatRing::format(const Element& x) const {
    bool first = true;
    std::string s;
    s += rational_term(x.q[0], "", first);
    s += rational_term(x.q[1], "i", first);
    s += rational_term(x.q[2], "j", first);
    s += rational_term(x.q[3], "k", first);
    return s.empty() ? "0" : s;
}

}  // namespace slstar
