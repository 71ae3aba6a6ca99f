#include "slstar/adelic.hpp"

#include <algorithm>
#include <cctype>

namespace slstar {

namespace {

const Ring& poly_ring_gf(uint64_t q) { return ring_for(make_poly_ring(make_gf(q))); }

std::vector<int> poly_coeffs(const Element& p) {
    // coefficients as base-field indices
    std::vector<int> out;
    for (const auto& c : p.sub) out.push_back(static_cast<int>(c.ring->index_of(c)));
    return out;
}

bool poly_irreducible(const Ring& P, const Element& p) {
    const Ring& B = ring_for(P.desc()->sub[0]);
    uint64_t bn = *B.size();
    size_t deg = p.sub.size() - 1;
    if (deg < 1) return false;
    for (size_t d = 1; 2 * d <= deg; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= bn;
        for (uint64_t idx = 0; idx < count; ++idx) {
            Element cand = P.zero();
            cand.sub.clear();
            uint64_t t = idx;
            for (size_t i = 0; i < d; ++i) {
                cand.sub.push_back(B.element_at(t % bn));
                t /= bn;
            }
            cand.sub.push_back(B.one());
            // monic divisor test via remainder of long division
            Element rem = p;
            while (rem.sub.size() >= cand.sub.size() && !rem.sub.empty()) {
                Element lead = rem.sub.back();
                size_t shift = rem.sub.size() - cand.sub.size();
                for (size_t i = 0; i < cand.sub.size(); ++i) {
                    auto& target = rem.sub[shift + i];
                    target = B.sub_(target, B.mul(lead, cand.sub[i]));
                }
                while (!rem.sub.empty() && B.is_zero(rem.sub.back())) rem.sub.pop_back();
            }
            if (rem.sub.empty()) return false;
        }
    }
    return true;
}

}  // namespace

std::string Place::str() const {
    if (infinite) return "oo";
    if (!is_poly()) return prime.str();
    std::string s;
    for (size_t i = poly.size(); i-- > 0;) {
        if (poly[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0) {
            s += std::to_string(poly[i]);
        } else {
            if (poly[i] != 1) s += std::to_string(poly[i]) + "*";
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

bool Place::operator==(const Place& o) const {
    return infinite == o.infinite && prime == o.prime && poly == o.poly;
}

bool Place::operator<(const Place& o) const {
    if (infinite != o.infinite) return !infinite;  // finite places first
    if (is_poly() != o.is_poly()) return !is_poly();
    if (is_poly()) {
        if (poly.size() != o.poly.size()) return poly.size() < o.poly.size();
        return std::lexicographical_compare(poly.begin(), poly.end(), o.poly.begin(),
                                            o.poly.end());
    }
    return prime < o.prime;
}

Place place_infinity() {
    Place v;
    v.infinite = true;
    return v;
}

Place place_prime(const BigInt& p) {
    if (p < 2 || !is_prime_u64(p.convert_to<uint64_t>()))
        throw std::invalid_argument("not a prime: " + p.str());
    Place v;
    v.prime = p;
    return v;
}

Place place_poly(const std::string& text, uint64_t q) {
    const Ring& P = poly_ring_gf(q);
    Element p = parse_element(P, text);
    if (p.sub.empty() || !p.sub.back().ring->is_one(p.sub.back()))
        throw std::invalid_argument("place polynomial must be monic");
    if (!poly_irreducible(P, p))
        throw std::invalid_argument("place polynomial must be irreducible");
    Place v;
    v.poly = poly_coeffs(p);
    return v;
}

SplittingType quad_splitting(int64_t d, const BigInt& p) {
    if (p == 2) {
        if (d % 2 == 0) return SplittingType::Ramified;
        int64_t m = ((d % 8) + 8) % 8;
        if (m == 1) return SplittingType::Split;
        if (m == 5) return SplittingType::Inert;
        return SplittingType::Ramified;
    }
    BigInt dm = ((BigInt(d) % p) + p) % p;
    if (dm == 0) return SplittingType::Ramified;
    for (BigInt x = 1; x < p; ++x)
        if ((x * x) % p == dm) return SplittingType::Split;
    return SplittingType::Inert;
}

std::string splitting_name(SplittingType t) {
    switch (t) {
        case SplittingType::Split: return "split";
        case SplittingType::Inert: return "inert";
        case SplittingType::Ramified: return "ramified";
    }
    return "?";
}

// ---------------------------------------------------------------------------

const Ring& AdelicContext::component_ring(const Place& v) const {
    switch (base) {
        case AdelicBase::RationalField:
            return ring_for(make_matrix(n, make_rationals()));
        case AdelicBase::QuadField: {
            SplittingType t;
            if (v.infinite)
                t = d < 0 ? SplittingType::Inert : SplittingType::Split;
            else
                t = quad_splitting(d, v.prime);
            if (t == SplittingType::Split)
                return ring_for(make_matrix(n, make_product(make_rationals())));
            return ring_for(make_matrix(n, make_quad_q(d)));
        }
        case AdelicBase::QuatFunctionField:
            return ring_for(make_matrix(n, make_split_quat(make_ratfun(make_gf(q)))));
        case AdelicBase::QuatRationalField:
            return ring_for(make_matrix(n, make_split_quat(make_rationals())));
    }
    throw std::logic_error("unreachable");
}

const Ring& AdelicContext::tail_ring() const {
    switch (base) {
        case AdelicBase::RationalField:
            return ring_for(make_matrix(n, make_integers()));
        case AdelicBase::QuadField:
            return ring_for(make_matrix(n, make_quad_q(d)));
        case AdelicBase::QuatFunctionField:
            return ring_for(make_matrix(n, make_split_quat(make_poly_ring(make_gf(q)))));
        case AdelicBase::QuatRationalField:
            return ring_for(make_matrix(n, make_split_quat(make_integers())));
    }
    throw std::logic_error("unreachable");
}

std::string AdelicContext::str() const {
    switch (base) {
        case AdelicBase::RationalField: return "Q";
        case AdelicBase::QuadField: return "Quad(Q," + std::to_string(d) + ")";
        case AdelicBase::QuatFunctionField: return "QuatFF(" + std::to_string(q) + ")";
        case AdelicBase::QuatRationalField: return "QuatQ";
    }
    return "?";
}

namespace {

// integrality convention for the quad tail: both coordinates in Z
bool quad_tail_integral(const Element& m) {
    for (const auto& e : m.sub)
        for (const auto& coord : e.sub)
            if (denominator(coord.q[0]) != 1) return false;
    return true;
}

}  // namespace

std::optional<Element> embed_tail(const AdelicContext& ctx, const Place& v,
                                  const Element& tail) {
    const Ring& comp = ctx.component_ring(v);
    const Ring& tr = ctx.tail_ring();
    if (&comp == &tr) return tail;
    switch (ctx.base) {
        case AdelicBase::RationalField: {
            const Ring& Q = ring_for(make_rationals());
            std::vector<Element> e(tail.sub.size());
            for (size_t i = 0; i < e.size(); ++i) {
                Element x = Q.zero();
                x.q[0] = Rational(tail.sub[i].z);
                e[i] = std::move(x);
            }
            return matrix_from_entries(comp, std::move(e));
        }
        case AdelicBase::QuadField: {
            // split place: representable only for rational tails, embedded
            // diagonally
            const Ring& P = matrix_base(comp);  // Prod(Q,Q)
            const Ring& Q = ring_for(make_rationals());
            std::vector<Element> e(tail.sub.size());
            for (size_t i = 0; i < e.size(); ++i) {
                const Element& x = tail.sub[i];
                if (!x.sub[1].ring->is_zero(x.sub[1])) return std::nullopt;
                Element rat = Q.zero();
                rat.q[0] = x.sub[0].q[0];
                Element pair = P.zero();
                pair.sub = {rat, rat};
                e[i] = std::move(pair);
            }
            return matrix_from_entries(comp, std::move(e));
        }
        case AdelicBase::QuatFunctionField: {
            const Ring& rf = ring_for(make_ratfun(make_gf(ctx.q)));
            const Ring& sq = matrix_base(comp);  // SplitQuat(RatFun)
            auto lift_poly = [&](const Element& p) {
                Element frac = rf.one();
                frac.sub[0] = p;
                return frac;
            };
            std::vector<Element> e(tail.sub.size());
            for (size_t i = 0; i < e.size(); ++i) {
                std::vector<Element> blk(4);
                for (int j = 0; j < 4; ++j) blk[j] = lift_poly(tail.sub[i].sub[j]);
                e[i] = matrix_from_entries(sq, std::move(blk));
            }
            return matrix_from_entries(comp, std::move(e));
        }
        case AdelicBase::QuatRationalField: {
            const Ring& Q = ring_for(make_rationals());
            const Ring& sq = matrix_base(comp);
            std::vector<Element> e(tail.sub.size());
            for (size_t i = 0; i < e.size(); ++i) {
                std::vector<Element> blk(4);
                for (int j = 0; j < 4; ++j) {
                    Element x = Q.zero();
                    x.q[0] = Rational(tail.sub[i].sub[j].z);
                    blk[j] = std::move(x);
                }
                e[i] = matrix_from_entries(sq, std::move(blk));
            }
            return matrix_from_entries(comp, std::move(e));
        }
    }
    return std::nullopt;
}

AdelicMatrix make_adelic(const AdelicContext& ctx,
                         std::vector<std::pair<Place, Element>> components, Element tail) {
    if (tail.ring != &ctx.tail_ring()) throw DescriptorMismatch();
    if (ctx.base == AdelicBase::QuadField && !quad_tail_integral(tail))
        throw std::invalid_argument("quad tail entries must be integral");
    std::sort(components.begin(), components.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (size_t i = 0; i + 1 < components.size(); ++i)
        if (components[i].first == components[i + 1].first)
            throw std::invalid_argument("duplicate place " + components[i].first.str());
    AdelicMatrix m;
    m.ctx = &ctx;
    m.tail = std::move(tail);
    for (auto& [v, e] : components) {
        if (e.ring != &ctx.component_ring(v)) throw DescriptorMismatch();
        auto emb = embed_tail(ctx, v, m.tail);
        if (emb && *emb == e) continue;  // normal form drops tail-equal places
        m.components.emplace_back(v, std::move(e));
    }
    return m;
}

AdelicMatrix adelic_identity(const AdelicContext& ctx) {
    return make_adelic(ctx, {}, ctx.tail_ring().one());
}
AdelicMatrix adelic_zero(const AdelicContext& ctx) {
    return make_adelic(ctx, {}, ctx.tail_ring().zero());
}

std::string AdelicMatrix::str() const {
    std::string s = "{";
    for (const auto& [v, e] : components) s += v.str() + ": " + format(e) + ", ";
    s += "tail: " + format(tail) + "}";
    return s;
}

bool AdelicMatrix::operator==(const AdelicMatrix& o) const {
    if (ctx != o.ctx || !(tail == o.tail)) return false;
    if (components.size() != o.components.size()) return false;
    for (size_t i = 0; i < components.size(); ++i)
        if (!(components[i].first == o.components[i].first) ||
            !(components[i].second == o.components[i].second))
            return false;
    return true;
}

namespace {

std::vector<Place> union_support(const AdelicMatrix& x, const AdelicMatrix& y) {
    std::vector<Place> s;
    for (const auto& [v, e] : x.components) s.push_back(v);
    for (const auto& [v, e] : y.components) s.push_back(v);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

Element component_at(const AdelicMatrix& x, const Place& v) {
    for (const auto& [w, e] : x.components)
        if (w == v) return e;
    auto emb = embed_tail(*x.ctx, v, x.tail);
    if (!emb)
        throw UnsupportedRing("tail is not expressible at place " + v.str() +
                              " in the rational model");
    return *emb;
}

}  // namespace

AdelicMatrix adelic_op(const AdelicMatrix& x, const AdelicMatrix& y, AdelicOp op) {
    if (x.ctx != y.ctx) throw DescriptorMismatch();
    const AdelicContext& ctx = *x.ctx;
    std::vector<std::pair<Place, Element>> comps;
    for (const Place& v : union_support(x, y)) {
        Element xv = component_at(x, v), yv = component_at(y, v);
        const Ring& R = *xv.ring;
        comps.emplace_back(v, op == AdelicOp::Add ? R.add(xv, yv) : R.mul(xv, yv));
    }
    const Ring& T = ctx.tail_ring();
    Element tail = op == AdelicOp::Add ? T.add(x.tail, y.tail) : T.mul(x.tail, y.tail);
    return make_adelic(ctx, std::move(comps), std::move(tail));
}

AdelicMatrix adelic_involute(const AdelicMatrix& x) {
    std::vector<std::pair<Place, Element>> comps;
    for (const auto& [v, e] : x.components) comps.emplace_back(v, e.ring->involute(e));
    return make_adelic(*x.ctx, std::move(comps), x.tail.ring->involute(x.tail));
}

std::pair<AdelicMatrix, AdelicMatrix> support_split(const AdelicMatrix& a,
                                                    const std::vector<Place>& s_prime) {
    for (const auto& [v, e] : a.components) {
        bool found = false;
        for (const auto& w : s_prime) found = found || (w == v);
        if (!found)
            throw std::invalid_argument("S' must contain the support; missing " + v.str());
    }
    const AdelicContext& ctx = *a.ctx;
    std::vector<std::pair<Place, Element>> left, right;
    for (const Place& v : s_prime) {
        left.emplace_back(v, component_at(a, v));
        right.emplace_back(v, ctx.component_ring(v).one());
    }
    AdelicMatrix a_s = make_adelic(ctx, std::move(left), ctx.tail_ring().one());
    AdelicMatrix a_tail = make_adelic(ctx, std::move(right), a.tail);
    return {std::move(a_s), std::move(a_tail)};
}

// ---------------------------------------------------------------------------
// division

namespace {

bool tail_is_unit(const AdelicContext& ctx, const Element& m) {
    switch (ctx.base) {
        case AdelicBase::QuadField: {
            // unit of M(n, Z[sqrt d]): integral entries with det of norm +-1
            const Ring& T = *m.ring;
            auto inv = T.try_invert(m);
            if (!inv) return false;
            return quad_tail_integral(*inv);
        }
        default:
            // integral matrix rings: try_invert already demands integrality
            return m.ring->is_unit(m);
    }
}

Element tail_neg(const Element& x) { return x.ring->neg(x); }

// uniform integral tail solve: closed forms, then a bounded search over
// symmetric integral matrices
DivisionStep solve_tail(const AdelicContext& ctx, const Element& a, const Element& c) {
    const Ring& T = ctx.tail_ring();
    if (tail_is_unit(ctx, a)) return {T.zero(), a};
    if (T.is_zero(a) && tail_is_unit(ctx, c)) return {T.one(), tail_neg(c)};
    if (ctx.base == AdelicBase::QuadField)
        throw TailUnsolved("quad tails support the canonical closed forms only");

    auto attempt = [&](const Element& s) -> std::optional<DivisionStep> {
        if (!T.is_symmetric(s)) return std::nullopt;
        Element r = T.sub_(a, T.mul(s, c));
        if (!tail_is_unit(ctx, r)) return std::nullopt;
        return DivisionStep{s, std::move(r)};
    };

    if (ctx.base == AdelicBase::RationalField) {
        // symmetric integer matrices with entries in [-B, B], B <= 8
        uint64_t n = ctx.n;
        uint64_t free = n * (n + 1) / 2;
        const Ring& Z = ring_for(make_integers());
        for (int64_t bound = 1; bound <= 8; bound *= 2) {
            uint64_t width = 2 * static_cast<uint64_t>(bound) + 1;
            uint64_t total = 1;
            for (uint64_t i = 0; i < free; ++i) total *= width;
            for (uint64_t idx = 0; idx < total; ++idx) {
                uint64_t t = idx;
                std::vector<Element> e(n * n, Z.zero());
                for (uint64_t i = 0; i < n; ++i)
                    for (uint64_t j = i; j < n; ++j) {
                        int64_t v = static_cast<int64_t>(t % width) - bound;
                        t /= width;
                        e[i * n + j] = Z.from_int(v);
                        e[j * n + i] = Z.from_int(v);
                    }
                if (auto st = attempt(matrix_from_entries(T, std::move(e)))) return *st;
            }
        }
        throw TailUnsolved("bounded integral symmetric search exhausted (B <= 8)");
    }

    if (ctx.base == AdelicBase::QuatFunctionField && ctx.n == 1) {
        // SplitQuat symmetric template [[al,be],[ga,al]] with entries of
        // degree <= 2
        const Ring& P = poly_ring_gf(ctx.q);
        const Ring& B = ring_for(make_gf(ctx.q));
        const Ring& SQ = matrix_base(T);
        uint64_t bn = *B.size();
        uint64_t count = bn * bn * bn;  // three coefficients per polynomial
        auto poly_at = [&](uint64_t idx) {
            Element p = P.zero();
            p.sub.clear();
            for (int i = 0; i < 3; ++i) {
                p.sub.push_back(B.element_at(idx % bn));
                idx /= bn;
            }
            return P.add(p, P.zero());
        };
        for (uint64_t ia = 0; ia < count; ++ia)
            for (uint64_t ib = 0; ib < count; ++ib)
                for (uint64_t ic = 0; ic < count; ++ic) {
                    Element blk = matrix_from_entries(
                        SQ, {poly_at(ia), poly_at(ib), poly_at(ic), poly_at(ia)});
                    if (auto st = attempt(matrix_from_entries(T, {blk}))) return *st;
                }
        throw TailUnsolved("bounded polynomial symmetric search exhausted");
    }
    throw TailUnsolved("no uniform tail solve beyond the canonical closed forms");
}

AdelicDivision divide_impl(const AdelicMatrix& a, const AdelicMatrix& c, uint64_t seed) {
    if (a.ctx != c.ctx) throw DescriptorMismatch();
    const AdelicContext& ctx = *a.ctx;
    std::vector<std::pair<Place, Element>> s_comps, r_comps;
    uint64_t place_index = 0;
    for (const Place& v : union_support(a, c)) {
        Element av = component_at(a, v), cv = component_at(c, v);
        DivisionChain chain = divide(av, cv, seed + 7919 * place_index++);
        s_comps.emplace_back(v, chain.steps.front().s);
        r_comps.emplace_back(v, chain.steps.front().r);
    }
    if (!derive_symmetry(a.tail, c.tail))
        throw DivideError(DivideFail::SymmetryViolation, "tail pair fails a*c = c*a");
    DivisionStep tail_step = solve_tail(ctx, a.tail, c.tail);

    AdelicDivision out{make_adelic(ctx, std::move(s_comps), tail_step.s),
                       make_adelic(ctx, std::move(r_comps), tail_step.r)};
    // componentwise verification of a = s*c + r, including the tail
    AdelicMatrix rebuilt = adelic_op(adelic_op(out.s, c, AdelicOp::Mul), out.r, AdelicOp::Add);
    if (!(rebuilt == a))
        throw DivideError(DivideFail::PostconditionViolation, "adelic replay failed");
    for (const auto& [v, e] : out.r.components)
        if (!e.ring->is_unit(e))
            throw DivideError(DivideFail::PostconditionViolation,
                              "remainder not invertible at place " + v.str());
    if (!tail_is_unit(ctx, out.r.tail))
        throw DivideError(DivideFail::PostconditionViolation, "tail remainder not a unit");
    return out;
}

}  // namespace

AdelicDivision adelic_divide(const AdelicMatrix& a, const AdelicMatrix& c, uint64_t seed) {
    if (a.ctx->base != AdelicBase::RationalField)
        throw UnsupportedRing("adelic_divide expects the rational base");
    return divide_impl(a, c, seed);
}

AdelicDivision quad_adelic_divide(const AdelicMatrix& a, const AdelicMatrix& c, uint64_t seed) {
    if (a.ctx->base != AdelicBase::QuadField)
        throw UnsupportedRing("quad_adelic_divide expects a quadratic base");
    return divide_impl(a, c, seed);
}

QuatAdelicOutcome quat_adelic_divide(const AdelicMatrix& a, const AdelicMatrix& c,
                                     uint64_t seed) {
    QuatAdelicOutcome out;
    if (a.ctx->base == AdelicBase::QuatRationalField) {
        // 2 is regular over Q: the ring is not *-Euclidean; emit the witness
        // pair and its exhaustion certificate at a finite truncation
        const Ring& SQQ = ring_for(make_split_quat(make_rationals()));
        QuatCharZeroRefusal refusal;
        refusal.witness_a = parse_element(SQQ, "[[1,0],[1,0]]");
        refusal.witness_c = parse_element(SQQ, "[[0,1],[0,1]]");
        const Ring& trunc = ring_for(make_split_quat(make_residue_ring(3, 2)));
        refusal.truncation = trunc.desc()->str();
        refusal.certificate = certify_not_star_euclidean(
            parse_element(trunc, "[[1,0],[1,0]]"), parse_element(trunc, "[[0,1],[0,1]]"));
        out.refusal = std::move(refusal);
        return out;
    }
    if (a.ctx->base != AdelicBase::QuatFunctionField)
        throw UnsupportedRing("quat_adelic_divide expects a quaternionic base");
    out.division = divide_impl(a, c, seed);
    return out;
}

// ---------------------------------------------------------------------------
// literals

AdelicMatrix parse_adelic(const AdelicContext& ctx, const std::string& text) {
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i >= text.size() || text[i] != '{') throw ParseError("expected '{'", i);
    ++i;
    std::vector<std::pair<Place, Element>> comps;
    std::optional<Element> tail;
    for (;;) {
        skip();
        if (i < text.size() && text[i] == '}') {
            ++i;
            break;
        }
        // key up to ':'
        size_t key_start = i;
        int depth = 0;
        while (i < text.size() && (text[i] != ':' || depth > 0)) {
            if (text[i] == '(' || text[i] == '[') ++depth;
            if (text[i] == ')' || text[i] == ']') --depth;
            ++i;
        }
        if (i >= text.size()) throw ParseError("expected ':'", i);
        std::string key = text.substr(key_start, i - key_start);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back())))
            key.pop_back();
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.front())))
            key.erase(key.begin());
        ++i;  // ':'
        // value up to top-level ',' or '}'
        skip();
        size_t val_start = i;
        depth = 0;
        while (i < text.size() && ((text[i] != ',' && text[i] != '}') || depth > 0)) {
            if (text[i] == '(' || text[i] == '[' || text[i] == '{') ++depth;
            if (text[i] == ')' || text[i] == ']' || text[i] == '}') --depth;
            ++i;
        }
        std::string val = text.substr(val_start, i - val_start);
        if (key == "tail") {
            tail = parse_element(ctx.tail_ring(), val);
        } else {
            Place v;
            if (key == "oo") {
                v = place_infinity();
            } else if (ctx.base == AdelicBase::QuatFunctionField) {
                v = place_poly(key, ctx.q);
            } else {
                v = place_prime(BigInt(key));
            }
            comps.emplace_back(v, parse_element(ctx.component_ring(v), val));
        }
        skip();
        if (i < text.size() && text[i] == ',') ++i;
    }
    if (!tail) throw ParseError("adelic literal needs a tail entry", i);
    return make_adelic(ctx, std::move(comps), std::move(*tail));
}

}  // namespace slstar
