#include "slstar/local.hpp"

namespace slstar {

namespace {

bool division_kind(const Ring& r) { return r.is_division_ring(); }

}  // namespace

StarLocalClassification classify_star_local(const Ring& r) {
    StarLocalClassification c;
    c.residue = r.residue_descriptor();
    auto radical = [&r](const Element& x) { return r.radical_member(x); };
    c.in_radical = radical;

    switch (r.kind()) {
        case RingKind::PrimeField:
        case RingKind::FiniteField:
        case RingKind::QuadExtField:
        case RingKind::QuadExtQ:
        case RingKind::Rationals:
        case RingKind::RationalQuat:
        case RingKind::RatFunField:
            c.kind = LocalKind::OneLocal;
            c.in_p = radical;
            c.in_p_star = radical;
            c.p_text = "(0)";
            c.p_star_text = "(0)";
            return c;
        case RingKind::ResidueRing:
            c.kind = LocalKind::OneLocal;
            c.in_p = radical;
            c.in_p_star = radical;
            c.p_text = "(" + std::to_string(r.desc()->p) + ")";
            c.p_star_text = c.p_text;
            return c;
        case RingKind::TruncatedPoly:
            c.kind = LocalKind::OneLocal;
            c.in_p = radical;
            c.in_p_star = radical;
            c.p_text = "(t)";
            c.p_star_text = "(t)";
            return c;
        case RingKind::Product: {
            const Ring& comp = ring_for(r.desc()->sub[0]);
            auto comp_cls = classify_star_local(comp);
            if (comp_cls.kind != LocalKind::OneLocal) {
                c.kind = LocalKind::NotStarLocal;
                return c;
            }
            auto comp_rad = [&comp](const Element& x) { return comp.radical_member(x); };
            c.kind = LocalKind::TwoLocal;
            c.in_p = [comp_rad](const Element& x) { return comp_rad(x.sub[0]); };
            c.in_p_star = [comp_rad](const Element& x) { return comp_rad(x.sub[1]); };
            c.p_text = "m x R";
            c.p_star_text = "R x m";
            return c;
        }
        case RingKind::Matrix:
        case RingKind::SplitQuat: {
            // entrywise lift of the base classification; for n > 1 the two
            // "primes" are the ideals M(n, p) and M(n, p*), and the radical
            // M(n, J) is the unique maximal stable ideal
            const Ring& base = matrix_base(r);
            auto base_cls = classify_star_local(base);
            if (base_cls.kind == LocalKind::NotStarLocal) {
                c.kind = LocalKind::NotStarLocal;
                return c;
            }
            c.kind = base_cls.kind;
            auto in_p = base_cls.in_p;
            auto in_ps = base_cls.in_p_star;
            c.in_p = [in_p](const Element& m) {
                for (const auto& e : m.sub)
                    if (!in_p(e)) return false;
                return true;
            };
            c.in_p_star = [in_ps](const Element& m) {
                for (const auto& e : m.sub)
                    if (!in_ps(e)) return false;
                return true;
            };
            c.p_text = "M(n, " + base_cls.p_text + ")";
            c.p_star_text = "M(n, " + base_cls.p_star_text + ")";
            return c;
        }
        default:
            c.kind = LocalKind::NotStarLocal;
            return c;
    }
}

bool jacobson_membership(const Element& x) { return x.ring->radical_member(x); }

bool jacobson_membership_bruteforce(const Element& x) {
    const Ring& r = *x.ring;
    auto n = r.size();
    if (!n || *n > 256) throw UnsupportedRing("brute-force radical capped at ring size 256");
    for (uint64_t i = 0; i < *n; ++i) {
        Element a = r.element_at(i);
        Element ax = r.mul(a, x);
        for (uint64_t j = 0; j < *n; ++j) {
            Element axb = r.mul(ax, r.element_at(j));
            if (!r.is_unit(r.add(r.one(), axb))) return false;
        }
    }
    return true;
}

Element project_residue(const Element& x) { return x.ring->project(x); }

Element section_lift(const Ring& upstairs, const Element& xbar) {
    return upstairs.section(xbar);
}

std::pair<Element, Element> decompose_radical(const Element& a) {
    const Ring& r = *a.ring;
    Element a_sigma = r.section(r.project(a));
    Element a_j = r.sub_(a, a_sigma);
    if (!r.radical_member(a_j))
        throw std::logic_error("decomposition residual escaped the radical");
    return {std::move(a_sigma), std::move(a_j)};
}

bool is_unit_via_reduction(const Element& a) {
    const Ring& r = *a.ring;
    if (!is_star_local_base(r)) throw UnsupportedRing("not a *-local kind: " + r.desc()->str());
    const Ring& down = ring_for(r.residue_descriptor());
    return down.is_unit(r.project(a));
}

bool is_star_local_base(const Ring& r) {
    switch (r.kind()) {
        case RingKind::PrimeField:
        case RingKind::FiniteField:
        case RingKind::QuadExtField:
        case RingKind::QuadExtQ:
        case RingKind::Rationals:
        case RingKind::RationalQuat:
        case RingKind::RatFunField:
        case RingKind::ResidueRing:
        case RingKind::TruncatedPoly: return true;
        case RingKind::Product:
            return classify_star_local(r).kind == LocalKind::TwoLocal;
        case RingKind::Matrix:
        case RingKind::SplitQuat:
            return is_star_local_base(matrix_base(r));
        default: return false;
    }
}

}  // namespace slstar
