#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "slstar/ring.hpp"

namespace slstar {

// Finite ring with all operations precomputed as id tables. This is the
// kernel-side representation: sweeps and group enumeration run on raw
// uint16 ids with no allocation. The generic Ring is kept alongside as the
// reference implementation and for conversions.
struct TableRing {
    const Ring* ring = nullptr;
    uint32_t n = 0;
    uint16_t zero = 0, one = 0;
    std::vector<uint16_t> add, mul;  // n*n, row-major [a*n + b]
    std::vector<uint16_t> neg, invol;
    std::vector<int32_t> inv;  // -1 for non-units
    std::vector<uint8_t> unit;
    std::vector<uint16_t> sym;  // symmetric ids, enumeration order

    const TableRing* residue = nullptr;  // == this when semisimple
    std::vector<uint16_t> proj;          // id -> residue id
    std::vector<uint16_t> sect;          // residue id -> id

    // decomposition of the residue ring into matrix algebras over finite
    // fields; entries are field ids, d*d per element, used for rank tests
    struct FlatComponent {
        const TableRing* field = nullptr;
        uint32_t d = 1;
        std::vector<uint16_t> entries;  // [id * d*d + r*d + s]
    };
    std::vector<FlatComponent> flat;

    uint16_t addf(uint16_t a, uint16_t b) const { return add[a * n + b]; }
    uint16_t mulf(uint16_t a, uint16_t b) const { return mul[a * n + b]; }
    uint16_t subf(uint16_t a, uint16_t b) const { return add[a * n + neg[b]]; }
    bool is_unit(uint16_t a) const { return unit[a] != 0; }

    Element to_element(uint16_t id) const { return ring->element_at(id); }
    uint16_t to_id(const Element& e) const { return static_cast<uint16_t>(ring->index_of(e)); }
};

// interned; rings of more than 4096 elements are rejected
const TableRing& table_ring(const Ring& r);

// ---- packed 2x2 matrices over a TableRing base ------------------------------

// row-major [a b; c d]
using PMat = std::array<uint16_t, 4>;

enum class MatInvolution { StarTranspose, SplitQuatJ };

inline PMat pmul(const TableRing& t, const PMat& x, const PMat& y) {
    return {t.addf(t.mulf(x[0], y[0]), t.mulf(x[1], y[2])),
            t.addf(t.mulf(x[0], y[1]), t.mulf(x[1], y[3])),
            t.addf(t.mulf(x[2], y[0]), t.mulf(x[3], y[2])),
            t.addf(t.mulf(x[2], y[1]), t.mulf(x[3], y[3]))};
}
inline PMat padd(const TableRing& t, const PMat& x, const PMat& y) {
    return {t.addf(x[0], y[0]), t.addf(x[1], y[1]), t.addf(x[2], y[2]), t.addf(x[3], y[3])};
}
inline PMat psub(const TableRing& t, const PMat& x, const PMat& y) {
    return {t.subf(x[0], y[0]), t.subf(x[1], y[1]), t.subf(x[2], y[2]), t.subf(x[3], y[3])};
}
inline PMat pinvolute(const TableRing& t, MatInvolution kind, const PMat& x) {
    if (kind == MatInvolution::StarTranspose)
        return {t.invol[x[0]], t.invol[x[2]], t.invol[x[1]], t.invol[x[3]]};
    return {t.invol[x[3]], t.neg[t.invol[x[1]]], t.neg[t.invol[x[2]]], t.invol[x[0]]};
}
inline uint64_t pindex(const TableRing& t, const PMat& x) {
    // matches the generic enumeration order (entry 0 least significant)
    return ((static_cast<uint64_t>(x[3]) * t.n + x[2]) * t.n + x[1]) * t.n + x[0];
}
inline PMat pfrom_index(const TableRing& t, uint64_t idx) {
    PMat x;
    x[0] = static_cast<uint16_t>(idx % t.n);
    idx /= t.n;
    x[1] = static_cast<uint16_t>(idx % t.n);
    idx /= t.n;
    x[2] = static_cast<uint16_t>(idx % t.n);
    idx /= t.n;
    x[3] = static_cast<uint16_t>(idx);
    return x;
}

// 2x2 matrix space over a table ring with its own involution; precomputes
// unit tests and the symmetric sweep order at the matrix level
struct PMatSpace {
    const TableRing* base = nullptr;
    MatInvolution invo;
    const Ring* matrix_ring_ = nullptr;  // the generic Mat(2, base) / SplitQuat
    uint64_t count = 0;                  // n^4

    std::vector<uint8_t> unit_bits;      // [matrix index] -> unit?
    std::vector<uint32_t> sym_by_support;  // matrix indices, sorted by support

    // residue structure at the matrix level
    const PMatSpace* residue = nullptr;
    PMat project(const PMat& m) const {
        const auto& p = base->proj;
        return {p[m[0]], p[m[1]], p[m[2]], p[m[3]]};
    }
    PMat lift(const PMat& m) const {
        const auto& s = base->sect;
        return {s[m[0]], s[m[1]], s[m[2]], s[m[3]]};
    }

    bool is_unit(const PMat& m) const { return unit_bits[pindex(*base, m)] != 0; }
    bool is_symmetric(const PMat& m) const { return pinvolute(*base, invo, m) == m; }

    Element to_element(const PMat& m) const;
    PMat from_element(const Element& e) const;

    // Aa + Ac = A, decided by stacked full column rank on every simple
    // factor of the residue
    bool coprime(const PMat& a, const PMat& c) const;
};

// interned per generic matrix ring (Mat(2, base) or SplitQuat(base))
const PMatSpace& pmat_space(const Ring& matrix_ring);

}  // namespace slstar
