#include "slstar/star_euclid.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "slstar/local.hpp"

namespace slstar {

namespace {

bool is_matrix_kind(const Ring& r) {
    return r.kind() == RingKind::Matrix || r.kind() == RingKind::SplitQuat;
}

bool field_like_base(const Ring& b) {
    switch (b.kind()) {
        case RingKind::PrimeField:
        case RingKind::FiniteField:
        case RingKind::QuadExtField:
        case RingKind::QuadExtQ:
        case RingKind::Rationals:
        case RingKind::RatFunField: return true;
        default: return false;
    }
}

uint64_t support_size(const Element& x) {
    if (x.sub.empty() || !is_matrix_kind(*x.ring)) return x.ring->is_zero(x) ? 0 : 1;
    const Ring& b = matrix_base(*x.ring);
    uint64_t s = 0;
    for (const auto& e : x.sub)
        if (!b.is_zero(e)) ++s;
    return s;
}

// ---- row reduction over a division-ring base -------------------------------

struct Echelon {
    std::vector<Element> mat;    // rows x cols, reduced
    std::vector<Element> trans;  // rows x rows with trans * original = mat
    uint64_t rank = 0;
};

Echelon row_echelon(const Ring& B, uint64_t rows, uint64_t cols, std::vector<Element> m) {
    Echelon e;
    e.trans.assign(rows * rows, B.zero());
    for (uint64_t i = 0; i < rows; ++i) e.trans[i * rows + i] = B.one();
    uint64_t cur = 0;
    for (uint64_t col = 0; col < cols && cur < rows; ++col) {
        uint64_t piv = rows;
        for (uint64_t r = cur; r < rows; ++r)
            if (B.is_unit(m[r * cols + col])) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        if (piv != cur) {
            for (uint64_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[cur * cols + j]);
            for (uint64_t j = 0; j < rows; ++j)
                std::swap(e.trans[piv * rows + j], e.trans[cur * rows + j]);
        }
        Element pinv = *B.try_invert(m[cur * cols + col]);
        for (uint64_t j = 0; j < cols; ++j) m[cur * cols + j] = B.mul(pinv, m[cur * cols + j]);
        for (uint64_t j = 0; j < rows; ++j)
            e.trans[cur * rows + j] = B.mul(pinv, e.trans[cur * rows + j]);
        for (uint64_t r = 0; r < rows; ++r) {
            if (r == cur || B.is_zero(m[r * cols + col])) continue;
            Element f = m[r * cols + col];
            for (uint64_t j = 0; j < cols; ++j)
                m[r * cols + j] = B.sub_(m[r * cols + j], B.mul(f, m[cur * cols + j]));
            for (uint64_t j = 0; j < rows; ++j)
                e.trans[r * rows + j] = B.sub_(e.trans[r * rows + j], B.mul(f, e.trans[cur * rows + j]));
        }
        ++cur;
    }
    e.rank = cur;
    e.mat = std::move(m);
    return e;
}

// ---- coprimality ------------------------------------------------------------

std::optional<CoprimeCertificate> cert_impl(const Element& a, const Element& c);

std::optional<CoprimeCertificate> cert_division_matrix(const Element& a, const Element& c) {
    const Ring& A = *a.ring;
    const Ring& B = matrix_base(A);
    uint64_t n = matrix_dim(A);
    std::vector<Element> stack(2 * n * n);
    for (uint64_t i = 0; i < n; ++i)
        for (uint64_t j = 0; j < n; ++j) {
            stack[i * n + j] = entry(a, i, j);
            stack[(n + i) * n + j] = entry(c, i, j);
        }
    Echelon e = row_echelon(B, 2 * n, n, std::move(stack));
    if (e.rank != n) return std::nullopt;
    std::vector<Element> xe(n * n), ye(n * n);
    for (uint64_t i = 0; i < n; ++i)
        for (uint64_t j = 0; j < n; ++j) {
            xe[i * n + j] = e.trans[i * 2 * n + j];
            ye[i * n + j] = e.trans[i * 2 * n + n + j];
        }
    return CoprimeCertificate{matrix_from_entries(A, std::move(xe)),
                              matrix_from_entries(A, std::move(ye))};
}

std::optional<CoprimeCertificate> cert_lift(const Element& a, const Element& c) {
    const Ring& A = *a.ring;
    const Ring& Abar = ring_for(A.residue_descriptor());
    auto down = cert_impl(A.project(a), A.project(c));
    if (!down) return std::nullopt;
    Element x0 = A.section(down->x);
    Element y0 = A.section(down->y);
    Element u = A.add(A.mul(x0, a), A.mul(y0, c));
    auto uinv = A.try_invert(u);  // 1 + radical, invertible
    if (!uinv) throw std::logic_error("lifted certificate unit correction failed");
    (void)Abar;
    return CoprimeCertificate{A.mul(*uinv, x0), A.mul(*uinv, y0)};
}

std::optional<CoprimeCertificate> cert_impl(const Element& a, const Element& c) {
    const Ring& A = *a.ring;
    switch (A.kind()) {
        case RingKind::Matrix:
        case RingKind::SplitQuat: {
            const Ring& B = matrix_base(A);
            if (B.is_division_ring()) return cert_division_matrix(a, c);
            if (B.kind() == RingKind::Product) {
                auto [a1, a2] = prod_components(a);
                auto [c1, c2] = prod_components(c);
                auto x1 = cert_impl(a1, c1);
                if (!x1) return std::nullopt;
                auto x2 = cert_impl(a2, c2);
                if (!x2) return std::nullopt;
                return CoprimeCertificate{prod_merge(A, x1->x, x2->x),
                                          prod_merge(A, x1->y, x2->y)};
            }
            if (B.kind() == RingKind::ResidueRing || B.kind() == RingKind::TruncatedPoly)
                return cert_lift(a, c);
            if (is_matrix_kind(B)) {
                const Ring& BB = matrix_base(B);
                if (BB.is_division_ring()) {
                    // flatten both to matrices over the scalar division ring
                    uint64_t n = matrix_dim(A), m = matrix_dim(B);
                    const Ring& FLAT = matrix_ring(n * m, BB.desc());
                    auto flatten = [&](const Element& z) {
                        std::vector<Element> f(n * m * n * m);
                        for (uint64_t i = 0; i < n; ++i)
                            for (uint64_t j = 0; j < n; ++j)
                                for (uint64_t r = 0; r < m; ++r)
                                    for (uint64_t s = 0; s < m; ++s)
                                        f[(i * m + r) * n * m + (j * m + s)] =
                                            entry(entry(z, i, j), r, s);
                        return matrix_from_entries(FLAT, std::move(f));
                    };
                    auto unflatten = [&](const Element& z) {
                        uint64_t nm = n * m;
                        std::vector<Element> e(n * n);
                        for (uint64_t i = 0; i < n; ++i)
                            for (uint64_t j = 0; j < n; ++j) {
                                std::vector<Element> blk(m * m);
                                for (uint64_t r = 0; r < m; ++r)
                                    for (uint64_t s = 0; s < m; ++s)
                                        blk[r * m + s] = entry(z, i * m + r, j * m + s);
                                e[i * n + j] = matrix_from_entries(B, std::move(blk));
                            }
                        return matrix_from_entries(A, std::move(e));
                    };
                    auto fc = cert_impl(flatten(a), flatten(c));
                    if (!fc) return std::nullopt;
                    return CoprimeCertificate{unflatten(fc->x), unflatten(fc->y)};
                }
                return cert_lift(a, c);
            }
            throw UnsupportedRing("coprimality over base " + B.desc()->str());
        }
        case RingKind::Product: {
            auto x1 = cert_impl(a.sub[0], c.sub[0]);
            if (!x1) return std::nullopt;
            auto x2 = cert_impl(a.sub[1], c.sub[1]);
            if (!x2) return std::nullopt;
            return CoprimeCertificate{prod_merge(A, x1->x, x2->x), prod_merge(A, x1->y, x2->y)};
        }
        case RingKind::ResidueRing:
        case RingKind::TruncatedPoly:
            return cert_lift(a, c);
        default: {
            if (A.is_division_ring()) {
                if (!A.is_zero(a)) return CoprimeCertificate{*A.try_invert(a), A.zero()};
                if (!A.is_zero(c)) return CoprimeCertificate{A.zero(), *A.try_invert(c)};
                return std::nullopt;
            }
            throw UnsupportedRing("coprimality over " + A.desc()->str());
        }
    }
}

}  // namespace

std::optional<CoprimeCertificate> check_coprime(const Element& a, const Element& c) {
    require_same_ring(a, c);
    auto cert = cert_impl(a, c);
    if (cert) {
        const Ring& A = *a.ring;
        Element lhs = A.add(A.mul(cert->x, a), A.mul(cert->y, c));
        if (!A.is_one(lhs)) throw std::logic_error("certificate identity failed");
    }
    return cert;
}

bool derive_symmetry(const Element& a, const Element& c) {
    require_same_ring(a, c);
    const Ring& A = *a.ring;
    return A.mul(A.involute(a), c) == A.mul(A.involute(c), a);
}

void verify_step(const Element& a, const Element& c, const DivisionStep& st) {
    const Ring& A = *a.ring;
    if (!A.is_symmetric(st.s))
        throw DivideError(DivideFail::PostconditionViolation, "quotient not symmetric");
    if (A.add(A.mul(st.s, c), st.r) != a)
        throw DivideError(DivideFail::PostconditionViolation, "a = s*c + r violated");
    if (!A.is_unit(st.r))
        throw DivideError(DivideFail::PostconditionViolation, "remainder not a unit");
}

// ---------------------------------------------------------------------------
// symmetric candidate machinery

const std::vector<Element>& symmetric_sweep_order(const Ring& r) {
    static std::mutex mu;
    static std::map<const Ring*, std::vector<Element>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(&r);
    if (it != cache.end()) return it->second;
    auto syms = symmetric_elements(r);
    std::vector<uint64_t> idx(syms.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](uint64_t x, uint64_t y) {
        return support_size(syms[x]) < support_size(syms[y]);
    });
    std::vector<Element> sorted;
    sorted.reserve(syms.size());
    for (uint64_t i : idx) sorted.push_back(std::move(syms[i]));
    return cache.emplace(&r, std::move(sorted)).first->second;
}

namespace {

// height-bounded scalar sample used to build random symmetric matrices
Element sample_height(const Ring& b, Rng& rng, int64_t h) {
    switch (b.kind()) {
        case RingKind::Rationals:
        case RingKind::Integers: return b.from_int(rng.centered(h));
        case RingKind::QuadExtQ: {
            Element e = b.zero();
            e.sub[0] = e.sub[0].ring->from_int(rng.centered(h));
            e.sub[1] = e.sub[1].ring->from_int(rng.centered(h));
            return e;
        }
        case RingKind::RationalQuat: {
            Element e = b.zero();
            for (auto& coord : e.q) coord = rng.centered(h);
            return e;
        }
        case RingKind::Product: {
            const Ring& comp = ring_for(b.desc()->sub[0]);
            Element e = b.zero();
            e.sub[0] = sample_height(comp, rng, h);
            e.sub[1] = sample_height(comp, rng, h);
            return e;
        }
        case RingKind::PolyRing:
        case RingKind::RatFunField: {
            // polynomial of degree <= 2 with random coefficients
            const Ring& coeffs = ring_for(b.desc()->sub[0]);
            const Ring& polys = b.kind() == RingKind::PolyRing
                                    ? b
                                    : ring_for(make_poly_ring(b.desc()->sub[0]));
            uint64_t cn = *coeffs.size();
            Element p = polys.zero();
            p.sub.clear();
            uint64_t deg = rng.below(3);
            for (uint64_t i = 0; i <= deg; ++i) p.sub.push_back(coeffs.element_at(rng.below(cn)));
            p = polys.add(p, polys.zero());  // canonicalize (trim)
            if (b.kind() == RingKind::PolyRing) return p;
            Element frac = b.one();  // num 1, den 1
            frac.sub[0] = std::move(p);
            return frac;
        }
        default: {
            auto n = b.size();
            if (!n) throw UnsupportedRing("no height sampler for " + b.desc()->str());
            return b.element_at(rng.below(*n));
        }
    }
}

// element of the fixed subring of the involution, height-bounded
Element sample_fixed_point(const Ring& b, Rng& rng, int64_t h) {
    switch (b.kind()) {
        case RingKind::QuadExtField: {
            const Ring& k = ring_for(b.desc()->sub[0]);
            Element e = b.zero();
            e.sub[0] = k.element_at(rng.below(*k.size()));
            return e;
        }
        case RingKind::QuadExtQ: {
            Element e = b.zero();
            e.sub[0] = e.sub[0].ring->from_int(rng.centered(h));
            return e;
        }
        case RingKind::RationalQuat: {
            Element e = b.zero();
            e.q[0] = rng.centered(h);
            return e;
        }
        default: return sample_height(b, rng, h);  // trivial involution kinds
    }
}

}  // namespace

Element random_element(const Ring& b, Rng& rng, int64_t h) {
    if (b.kind() == RingKind::SplitQuat || b.kind() == RingKind::Matrix) {
        uint64_t n = matrix_dim(b);
        const Ring& bb = matrix_base(b);
        std::vector<Element> e(n * n);
        for (auto& x : e) x = random_element(bb, rng, h);
        return matrix_from_entries(b, std::move(e));
    }
    return sample_height(b, rng, h);
}

Element random_symmetric(const Ring& r, Rng& rng, int64_t height) {
    switch (r.kind()) {
        case RingKind::SplitQuat: {
            const Ring& b = matrix_base(r);
            Element al = sample_height(b, rng, height);
            if (r.desc()->characteristic() == 2) {
                Element be = sample_height(b, rng, height);
                Element ga = sample_height(b, rng, height);
                return matrix_from_entries(r, {al, be, ga, al});
            }
            return matrix_from_entries(r, {al, b.zero(), b.zero(), al});
        }
        case RingKind::Matrix: {
            const Ring& b = matrix_base(r);
            uint64_t n = matrix_dim(r);
            if (b.kind() == RingKind::Product) {
                // the flip couples the components: s = (m1, m1 involuted)
                const Ring& comp = ring_for(b.desc()->sub[0]);
                const Ring& mc = matrix_ring(n, comp.desc());
                Element m1 = random_element(mc, rng, height);
                return prod_merge(r, m1, mc.involute(m1));
            }
            std::vector<Element> e(n * n, b.zero());
            for (uint64_t i = 0; i < n; ++i) {
                for (uint64_t j = i + 1; j < n; ++j) {
                    Element x = random_element(b, rng, height);
                    e[j * n + i] = b.involute(x);
                    e[i * n + j] = std::move(x);
                }
                e[i * n + i] = (b.kind() == RingKind::SplitQuat || b.kind() == RingKind::Matrix)
                                   ? random_symmetric(b, rng, height)
                                   : sample_fixed_point(b, rng, height);
            }
            return matrix_from_entries(r, std::move(e));
        }
        default: return sample_fixed_point(r, rng, height);
    }
}

// ---------------------------------------------------------------------------
// division algorithms

namespace {

std::optional<DivisionStep> closed_forms(const Element& a, const Element& c) {
    const Ring& A = *a.ring;
    if (A.is_unit(a)) return DivisionStep{A.zero(), a};
    if (A.is_zero(a) && A.is_unit(c)) return DivisionStep{A.one(), A.neg(c)};
    return std::nullopt;
}

void require_hypotheses(const Element& a, const Element& c) {
    if (!check_coprime(a, c))
        throw DivideError(DivideFail::NotCoprime, "Aa + Ac != A");
    if (!derive_symmetry(a, c))
        throw DivideError(DivideFail::SymmetryViolation, "a*c is not symmetric");
}

// finite sweep / randomized search for a symmetric s with a - s*c invertible
DivisionStep search_symmetric_step(const Element& a, const Element& c, uint64_t seed) {
    const Ring& A = *a.ring;
    if (auto st = closed_forms(a, c)) return *st;
    if (A.size()) {
        for (const Element& s : symmetric_sweep_order(A)) {
            Element r = A.sub_(a, A.mul(s, c));
            if (A.is_unit(r)) return DivisionStep{s, std::move(r)};
        }
        throw DivideError(DivideFail::SearchExhausted,
                          "no symmetric quotient leaves a unit remainder");
    }
    Rng rng(seed ^ 0x5eedf00d);
    for (int64_t bound = 1; bound <= 64; bound *= 2) {
        for (int tries = 0; tries < 256; ++tries) {
            Element s = random_symmetric(A, rng, bound);
            Element r = A.sub_(a, A.mul(s, c));
            if (A.is_unit(r)) return DivisionStep{std::move(s), std::move(r)};
        }
    }
    throw DivideError(DivideFail::SearchExhausted, "randomized symmetric search gave up");
}

DivisionStep dispatch_step(const Element& a, const Element& c, uint64_t seed);

}  // namespace

DivisionStep divide_field_matrix(const Element& a, const Element& c, uint64_t seed) {
    const Ring& A = *a.ring;
    bool scalar_field = A.is_division_ring() && A.desc()->is_commutative();
    if (!scalar_field) {
        if (!is_matrix_kind(A) || !field_like_base(matrix_base(A)))
            throw DivideError(DivideFail::Unsupported,
                              "divide_field_matrix needs a matrix ring over a field");
    }
    require_hypotheses(a, c);
    return search_symmetric_step(a, c, seed);
}

DivisionStep divide_two_local(const Element& a, const Element& c) {
    const Ring& A = *a.ring;
    const Ring* prod = nullptr;
    uint64_t n = 1;
    if (A.kind() == RingKind::Product) {
        prod = &A;
    } else if (is_matrix_kind(A) && matrix_base(A).kind() == RingKind::Product) {
        prod = &matrix_base(A);
        n = matrix_dim(A);
    } else {
        throw DivideError(DivideFail::Unsupported, "divide_two_local needs a product base");
    }
    const Ring& comp = ring_for(prod->desc()->sub[0]);
    if (!comp.is_division_ring())
        throw DivideError(DivideFail::Unsupported, "product components must be division rings");
    require_hypotheses(a, c);
    if (auto st = closed_forms(a, c)) return *st;

    auto [a1, a2] = prod_components(a);
    auto [c1, c2] = prod_components(c);
    (void)a2;
    (void)c2;

    std::vector<Element> a1e(n * n), c1e(n * n);
    if (n == 1) {
        a1e[0] = a1;
        c1e[0] = c1;
    } else {
        a1e = a1.sub;
        c1e = c1.sub;
    }

    // e = invertible echelon transform of a1; the zero rows are then filled
    // with rows of c1 completing the row space
    Echelon ech = row_echelon(comp, n, n, a1e);
    std::vector<Element> basis;  // reduced nonzero rows, each of length n
    for (uint64_t i = 0; i < ech.rank; ++i)
        basis.insert(basis.end(), ech.mat.begin() + i * n, ech.mat.begin() + (i + 1) * n);

    auto reduces_to_zero = [&](std::vector<Element> row) {
        // reduce against current basis rows (each has a unit leading entry)
        for (size_t b = 0; b * n < basis.size(); ++b) {
            uint64_t lead = n;
            for (uint64_t j = 0; j < n; ++j)
                if (!comp.is_zero(basis[b * n + j])) {
                    lead = j;
                    break;
                }
            if (lead == n || comp.is_zero(row[lead])) continue;
            Element f = comp.mul(row[lead], *comp.try_invert(basis[b * n + lead]));
            for (uint64_t j = 0; j < n; ++j)
                row[j] = comp.sub_(row[j], comp.mul(f, basis[b * n + j]));
        }
        for (uint64_t j = 0; j < n; ++j)
            if (!comp.is_zero(row[j])) return std::make_pair(false, row);
        return std::make_pair(true, row);
    };

    std::vector<Element> f(n * n, comp.zero());
    uint64_t slot = ech.rank;
    for (uint64_t i = 0; i < n && slot < n; ++i) {
        std::vector<Element> row(c1e.begin() + i * n, c1e.begin() + (i + 1) * n);
        auto [zero, reduced] = reduces_to_zero(row);
        if (zero) continue;
        basis.insert(basis.end(), reduced.begin(), reduced.end());
        f[slot * n + i] = comp.one();
        ++slot;
    }
    if (slot < n)
        throw DivideError(DivideFail::NotCoprime, "rows of c do not complete the row space");

    // s1 = -e^{-1} f over M(n, comp)
    const Ring& mc = matrix_ring(n, comp.desc());
    Element E = matrix_from_entries(mc, [&] {
        std::vector<Element> t(n * n);
        for (uint64_t i = 0; i < n * n; ++i) t[i] = ech.trans[i];
        return t;
    }());
    Element F = matrix_from_entries(mc, std::move(f));
    Element s1 = mc.neg(mc.mul(*mc.try_invert(E), F));
    Element s2 = mc.involute(s1);  // entrywise involution + transpose
    Element s, r;
    if (A.kind() == RingKind::Product) {
        s = prod_merge(A, s1.sub[0], s2.sub[0]);
    } else {
        s = prod_merge(A, s1, s2);
    }
    r = A.sub_(a, A.mul(s, c));
    if (!A.is_unit(r))
        throw DivideError(DivideFail::PostconditionViolation,
                          "two-division-ring remainder failed to be a unit");
    return DivisionStep{std::move(s), std::move(r)};
}

DivisionStep divide_char2_quat(const Element& a, const Element& c) {
    const Ring& A = *a.ring;
    if (A.kind() != RingKind::SplitQuat)
        throw DivideError(DivideFail::Unsupported, "divide_char2_quat needs SplitQuat(D)");
    if (A.desc()->characteristic() != 2)
        throw DivideError(DivideFail::WrongCharacteristic, "base is not of characteristic 2");
    const Ring& D = matrix_base(A);
    if (!D.is_division_ring())
        throw DivideError(DivideFail::Unsupported, "SplitQuat base must be a field here");
    if (!check_coprime(a, c))
        throw DivideError(DivideFail::NotCoprime, "Ha + Hc != H");
    if (auto st = closed_forms(a, c)) return *st;

    // template shapes: [[x,y],[0,x]], [[x,0],[y,x]], [[0,x],[x,0]];
    // all symmetric in characteristic 2
    auto try_template = [&](const Element& e00, const Element& e01, const Element& e10,
                            const Element& e11) -> std::optional<DivisionStep> {
        Element s = matrix_from_entries(A, {e00, e01, e10, e11});
        Element r = A.sub_(a, A.mul(s, c));
        if (A.is_unit(r)) return DivisionStep{std::move(s), std::move(r)};
        return std::nullopt;
    };

    auto sweep = [&](auto&& gen_pairs) -> std::optional<DivisionStep> {
        for (const auto& [x, y] : gen_pairs) {
            if (auto st = try_template(x, y, D.zero(), x)) return st;
            if (auto st = try_template(x, D.zero(), y, x)) return st;
            if (auto st = try_template(D.zero(), x, x, D.zero())) return st;
        }
        return std::nullopt;
    };

    if (auto nd = D.size()) {
        std::vector<std::pair<Element, Element>> pairs;
        pairs.reserve(*nd * *nd);
        for (uint64_t i = 0; i < *nd; ++i)
            for (uint64_t j = 0; j < *nd; ++j)
                pairs.emplace_back(D.element_at(i), D.element_at(j));
        if (auto st = sweep(pairs)) return *st;
        throw DivideError(DivideFail::SearchExhausted, "all template quotients failed");
    }
    // infinite char-2 field (rational function fields): grow the height
    Rng rng(0xc2c2c2c2ULL);
    for (int64_t h = 1; h <= 64; h *= 2) {
        std::vector<std::pair<Element, Element>> pairs;
        for (int t = 0; t < 128; ++t)
            pairs.emplace_back(sample_height(D, rng, h), sample_height(D, rng, h));
        if (auto st = sweep(pairs)) return *st;
    }
    throw DivideError(DivideFail::SearchExhausted, "template search gave up");
}

DivisionStep divide_lift(const Element& a, const Element& c, uint64_t seed) {
    const Ring& A = *a.ring;
    if (!is_star_local_base(A))
        throw DivideError(DivideFail::Unsupported, "divide_lift needs a *-local kind");
    if (A.kind() == RingKind::SplitQuat) {
        const Ring& B = matrix_base(A);
        bool char2_local = B.desc()->characteristic() == 2;
        if (!B.is_division_ring() && !char2_local)
            throw DivideError(DivideFail::Unsupported,
                              "symmetric lifting over SplitQuat needs a char-2 local base");
    }
    require_hypotheses(a, c);
    if (auto st = closed_forms(a, c)) return *st;
    const Ring& down = ring_for(A.residue_descriptor());
    if (&down == &A)
        throw DivideError(DivideFail::Unsupported, "ring is already semisimple");
    DivisionStep dstep = dispatch_step(A.project(a), A.project(c), seed);
    Element s = A.section(dstep.s);
    if (!A.is_symmetric(s))
        throw DivideError(DivideFail::PostconditionViolation,
                          "section did not preserve symmetry");
    Element r = A.sub_(a, A.mul(s, c));
    if (!A.is_unit(r))
        throw DivideError(DivideFail::PostconditionViolation,
                          "lifted remainder failed to be a unit");
    return DivisionStep{std::move(s), std::move(r)};
}

namespace {

DivisionStep dispatch_step(const Element& a, const Element& c, uint64_t seed) {
    const Ring& A = *a.ring;
    if (auto st = closed_forms(a, c)) return *st;

    if (is_matrix_kind(A)) {
        const Ring& B = matrix_base(A);
        if (A.kind() == RingKind::SplitQuat && field_like_base(B)) {
            if (A.desc()->characteristic() == 2) return divide_char2_quat(a, c);
            // 2 regular in the base: only scalar quotients exist; an
            // exhausted sweep is the genuine counterexample
            try {
                return search_symmetric_step(a, c, seed);
            } catch (DivideError& e) {
                if (e.fail == DivideFail::SearchExhausted)
                    throw DivideError(DivideFail::NotStarEuclidean,
                                      "no symmetric quotient exists (2 regular in the base)");
                throw;
            }
        }
        if (B.kind() == RingKind::Product) {
            const Ring& comp = ring_for(B.desc()->sub[0]);
            if (comp.is_division_ring()) return divide_two_local(a, c);
            return divide_lift(a, c, seed);
        }
        if (field_like_base(B)) return divide_field_matrix(a, c, seed);
        if (B.kind() == RingKind::ResidueRing || B.kind() == RingKind::TruncatedPoly) {
            if (A.kind() == RingKind::SplitQuat && B.desc()->characteristic() != 2) {
                try {
                    return search_symmetric_step(a, c, seed);
                } catch (DivideError& e) {
                    if (e.fail == DivideFail::SearchExhausted)
                        throw DivideError(DivideFail::NotStarEuclidean,
                                          "no symmetric quotient exists");
                    throw;
                }
            }
            return divide_lift(a, c, seed);
        }
        if (B.kind() == RingKind::RationalQuat || is_matrix_kind(B))
            return search_symmetric_step(a, c, seed);
        throw DivideError(DivideFail::Unsupported, "no division algorithm for " + A.desc()->str());
    }
    switch (A.kind()) {
        case RingKind::Product:
            return divide_two_local(a, c);
        case RingKind::ResidueRing:
        case RingKind::TruncatedPoly:
            return divide_lift(a, c, seed);
        default:
            if (A.is_division_ring())
                // closed forms exhaust the coprime pairs over a division ring
                throw DivideError(DivideFail::NotCoprime, "no unit among a, c");
            throw DivideError(DivideFail::Unsupported, "no division algorithm for " + A.desc()->str());
    }
}

}  // namespace

DivisionChain divide(const Element& a, const Element& c, uint64_t seed) {
    require_hypotheses(a, c);
    DivisionStep st = dispatch_step(a, c, seed);
    verify_step(a, c, st);
    DivisionChain chain{a, c, {std::move(st)}};
    return chain;
}

DivisionChain divide_chain(const Element& a, const Element& c, uint64_t seed,
                           unsigned max_steps) {
    require_hypotheses(a, c);
    DivisionChain chain{a, c, {}};
    Element rm1 = a, r0 = c;
    for (unsigned i = 0; i < max_steps; ++i) {
        DivisionStep st = dispatch_step(rm1, r0, seed + i);
        chain.steps.push_back(st);
        if (a.ring->is_unit(st.r)) return chain;
        rm1 = r0;
        r0 = st.r;
    }
    throw DivideError(DivideFail::SearchExhausted, "chain cap reached");
}

ExhaustionCertificate certify_not_star_euclidean(const Element& a, const Element& c) {
    const Ring& A = *a.ring;
    if (!A.size()) throw InfiniteRingError();
    if (!check_coprime(a, c) || !derive_symmetry(a, c))
        throw DivideError(DivideFail::HypothesesNotMet,
                          "pair does not satisfy the division hypotheses");
    ExhaustionCertificate cert;
    for (const Element& s : symmetric_sweep_order(A)) {
        ++cert.symmetric_count;
        Element r = A.sub_(a, A.mul(s, c));
        if (A.is_unit(r)) ++cert.unit_remainders;
    }
    cert.certified = cert.unit_remainders == 0;
    return cert;
}

}  // namespace slstar
