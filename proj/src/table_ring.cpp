#include "slstar/table_ring.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace slstar {

namespace {

constexpr uint32_t kMaxTableSize = 4096;

std::recursive_mutex table_mutex;
std::map<const Ring*, std::unique_ptr<TableRing>>& table_registry() {
    static std::map<const Ring*, std::unique_ptr<TableRing>> reg;
    return reg;
}
std::map<const Ring*, std::unique_ptr<PMatSpace>>& space_registry() {
    static std::map<const Ring*, std::unique_ptr<PMatSpace>> reg;
    return reg;
}

// (field table, block dim, entry extraction) for one simple factor of the
// semisimple quotient; extraction works on generic elements at build time
struct FlatBuilder {
    const TableRing* field;
    uint32_t d;
    std::function<void(const Element&, std::vector<uint16_t>&, uint32_t, uint32_t, uint32_t)>
        extract;  // (x, out, stride, row0, col0)
};

std::vector<FlatBuilder> flat_builders(const Ring& r) {
    switch (r.kind()) {
        case RingKind::PrimeField:
        case RingKind::FiniteField:
        case RingKind::QuadExtField: {
            const TableRing& f = table_ring(r);
            return {{&f, 1,
                     [&f](const Element& x, std::vector<uint16_t>& out, uint32_t stride,
                          uint32_t r0, uint32_t c0) { out[r0 * stride + c0] = f.to_id(x); }}};
        }
        case RingKind::ResidueRing:
        case RingKind::TruncatedPoly: {
            const Ring& res = ring_for(r.residue_descriptor());
            const TableRing& f = table_ring(res);
            return {{&f, 1,
                     [&f, &r](const Element& x, std::vector<uint16_t>& out, uint32_t stride,
                              uint32_t r0, uint32_t c0) {
                         out[r0 * stride + c0] = f.to_id(r.project(x));
                     }}};
        }
        case RingKind::Product: {
            const Ring& comp = ring_for(r.desc()->sub[0]);
            auto inner = flat_builders(comp);
            std::vector<FlatBuilder> out;
            for (size_t side = 0; side < 2; ++side)
                for (const auto& fb : inner) {
                    auto ex = fb.extract;
                    out.push_back({fb.field, fb.d,
                                   [ex, side](const Element& x, std::vector<uint16_t>& o,
                                              uint32_t stride, uint32_t r0, uint32_t c0) {
                                       ex(x.sub[side], o, stride, r0, c0);
                                   }});
                }
            return out;
        }
        case RingKind::Matrix:
        case RingKind::SplitQuat: {
            const Ring& base = matrix_base(r);
            uint32_t m = static_cast<uint32_t>(matrix_dim(r));
            auto inner = flat_builders(base);
            std::vector<FlatBuilder> out;
            for (const auto& fb : inner) {
                auto ex = fb.extract;
                uint32_t di = fb.d;
                out.push_back(
                    {fb.field, m * di,
                     [ex, di, m](const Element& x, std::vector<uint16_t>& o, uint32_t stride,
                                 uint32_t r0, uint32_t c0) {
                         for (uint32_t i = 0; i < m; ++i)
                             for (uint32_t j = 0; j < m; ++j)
                                 ex(entry(x, i, j), o, stride, r0 + i * di, c0 + j * di);
                     }});
            }
            return out;
        }
        default:
            throw UnsupportedRing("no semisimple decomposition for " + r.desc()->str());
    }
}

// column rank of a rows x cols id-matrix over a field table
uint32_t field_rank(const TableRing& f, uint32_t rows, uint32_t cols, uint16_t* m) {
    uint32_t rank = 0;
    for (uint32_t col = 0; col < cols && rank < rows; ++col) {
        uint32_t piv = rows;
        for (uint32_t r = rank; r < rows; ++r)
            if (m[r * cols + col] != f.zero) {
                piv = r;
                break;
            }
        if (piv == rows) continue;
        if (piv != rank)
            for (uint32_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[rank * cols + j]);
        uint16_t pinv = static_cast<uint16_t>(f.inv[m[rank * cols + col]]);
        for (uint32_t j = 0; j < cols; ++j)
            m[rank * cols + j] = f.mulf(pinv, m[rank * cols + j]);
        for (uint32_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            uint16_t x = m[r * cols + col];
            if (x == f.zero) continue;
            for (uint32_t j = 0; j < cols; ++j)
                m[r * cols + j] = f.subf(m[r * cols + j], f.mulf(x, m[rank * cols + j]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

const TableRing& table_ring(const Ring& r) {
    std::lock_guard<std::recursive_mutex> lock(table_mutex);
    auto& reg = table_registry();
    auto it = reg.find(&r);
    if (it != reg.end()) return *it->second;

    auto size = r.size();
    if (!size || *size > kMaxTableSize)
        throw UnsupportedRing("ring too large for tables: " + r.desc()->str());
    auto t = std::make_unique<TableRing>();
    t->ring = &r;
    t->n = static_cast<uint32_t>(*size);
    uint32_t n = t->n;

    std::vector<Element> elems;
    elems.reserve(n);
    for (uint32_t i = 0; i < n; ++i) elems.push_back(r.element_at(i));

    t->zero = static_cast<uint16_t>(r.index_of(r.zero()));
    t->one = static_cast<uint16_t>(r.index_of(r.one()));
    t->add.resize(static_cast<size_t>(n) * n);
    t->mul.resize(static_cast<size_t>(n) * n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j) {
            t->add[i * n + j] = static_cast<uint16_t>(r.index_of(r.add(elems[i], elems[j])));
            t->mul[i * n + j] = static_cast<uint16_t>(r.index_of(r.mul(elems[i], elems[j])));
        }
    t->neg.resize(n);
    t->invol.resize(n);
    t->inv.assign(n, -1);
    t->unit.assign(n, 0);
    for (uint32_t i = 0; i < n; ++i) {
        t->neg[i] = static_cast<uint16_t>(r.index_of(r.neg(elems[i])));
        t->invol[i] = static_cast<uint16_t>(r.index_of(r.involute(elems[i])));
        if (auto inv = r.try_invert(elems[i])) {
            t->inv[i] = static_cast<int32_t>(r.index_of(*inv));
            t->unit[i] = 1;
        }
        if (t->invol[i] == i) t->sym.push_back(static_cast<uint16_t>(i));
    }

    const Ring& res = ring_for(r.residue_descriptor());
    if (&res == &r) {
        t->residue = t.get();
        t->proj.resize(n);
        t->sect.resize(n);
        for (uint32_t i = 0; i < n; ++i) {
            t->proj[i] = static_cast<uint16_t>(i);
            t->sect[i] = static_cast<uint16_t>(i);
        }
    } else {
        const TableRing& rt = table_ring(res);
        t->residue = &rt;
        t->proj.resize(n);
        for (uint32_t i = 0; i < n; ++i)
            t->proj[i] = static_cast<uint16_t>(res.index_of(r.project(elems[i])));
        t->sect.resize(rt.n);
        for (uint32_t i = 0; i < rt.n; ++i)
            t->sect[i] = static_cast<uint16_t>(r.index_of(r.section(res.element_at(i))));
    }

    // register before building the flat decomposition: the flat component of
    // a field refers back to this very table
    auto [pos, inserted] = reg.emplace(&r, std::move(t));
    TableRing& tr = *pos->second;

    for (const auto& fb : flat_builders(r)) {
        TableRing::FlatComponent fc;
        fc.field = fb.field;
        fc.d = fb.d;
        fc.entries.resize(static_cast<size_t>(n) * fb.d * fb.d);
        std::vector<uint16_t> buf(fb.d * fb.d);
        for (uint32_t i = 0; i < n; ++i) {
            fb.extract(elems[i], buf, fb.d, 0, 0);
            std::copy(buf.begin(), buf.end(),
                      fc.entries.begin() + static_cast<size_t>(i) * fb.d * fb.d);
        }
        tr.flat.push_back(std::move(fc));
    }
    return tr;
}

// ---------------------------------------------------------------------------

Element PMatSpace::to_element(const PMat& m) const {
    return matrix_from_entries(*matrix_ring_, {base->to_element(m[0]), base->to_element(m[1]),
                                               base->to_element(m[2]), base->to_element(m[3])});
}

PMat PMatSpace::from_element(const Element& e) const {
    return {base->to_id(e.sub[0]), base->to_id(e.sub[1]), base->to_id(e.sub[2]),
            base->to_id(e.sub[3])};
}

bool PMatSpace::coprime(const PMat& a, const PMat& c) const {
    for (const auto& fc : base->flat) {
        uint32_t d = fc.d;
        uint32_t rows = 4 * d, cols = 2 * d;
        uint16_t buf[128];
        auto put = [&](uint32_t row0, const PMat& m) {
            for (uint32_t bi = 0; bi < 2; ++bi)
                for (uint32_t bj = 0; bj < 2; ++bj) {
                    const uint16_t* e = &fc.entries[static_cast<size_t>(m[bi * 2 + bj]) * d * d];
                    for (uint32_t r = 0; r < d; ++r)
                        for (uint32_t s = 0; s < d; ++s)
                            buf[(row0 + bi * d + r) * cols + bj * d + s] = e[r * d + s];
                }
        };
        put(0, a);
        put(2 * d, c);
        if (field_rank(*fc.field, rows, cols, buf) != cols) return false;
    }
    return true;
}

const PMatSpace& pmat_space(const Ring& mring) {
    std::lock_guard<std::recursive_mutex> lock(table_mutex);
    auto& reg = space_registry();
    auto it = reg.find(&mring);
    if (it != reg.end()) return *it->second;

    if ((mring.kind() != RingKind::Matrix && mring.kind() != RingKind::SplitQuat) ||
        matrix_dim(mring) != 2)
        throw UnsupportedRing("pmat_space needs a 2x2 matrix ring");
    auto sp = std::make_unique<PMatSpace>();
    sp->matrix_ring_ = &mring;
    sp->base = &table_ring(matrix_base(mring));
    sp->invo = mring.kind() == RingKind::SplitQuat ? MatInvolution::SplitQuatJ
                                                   : MatInvolution::StarTranspose;
    const TableRing& bt = *sp->base;
    if (bt.n > 40) throw UnsupportedRing("base too large for a packed matrix space");
    sp->count = static_cast<uint64_t>(bt.n) * bt.n * bt.n * bt.n;

    sp->unit_bits.assign(sp->count, 0);
    std::vector<uint32_t> syms;
    for (uint64_t idx = 0; idx < sp->count; ++idx) {
        PMat m = pfrom_index(bt, idx);
        // unit iff full rank on every simple factor of the residue
        bool u = true;
        for (const auto& fc : bt.flat) {
            uint32_t d = fc.d, dim = 2 * d;
            uint16_t buf[64];
            for (uint32_t bi = 0; bi < 2 && u; ++bi)
                for (uint32_t bj = 0; bj < 2; ++bj) {
                    const uint16_t* e = &fc.entries[static_cast<size_t>(m[bi * 2 + bj]) * d * d];
                    for (uint32_t r = 0; r < d; ++r)
                        for (uint32_t s = 0; s < d; ++s)
                            buf[(bi * d + r) * dim + bj * d + s] = e[r * d + s];
                }
            if (field_rank(*fc.field, dim, dim, buf) != dim) {
                u = false;
                break;
            }
        }
        sp->unit_bits[idx] = u ? 1 : 0;
        if (pinvolute(bt, sp->invo, m) == m) syms.push_back(static_cast<uint32_t>(idx));
    }
    auto support = [&](uint32_t idx) {
        PMat m = pfrom_index(bt, idx);
        uint32_t s = 0;
        for (auto e : m)
            if (e != bt.zero) ++s;
        return s;
    };
    std::stable_sort(syms.begin(), syms.end(),
                     [&](uint32_t x, uint32_t y) { return support(x) < support(y); });
    sp->sym_by_support = std::move(syms);

    const Ring& resring = ring_for(mring.residue_descriptor());
    sp->residue = &resring == &mring ? sp.get() : &pmat_space(resring);

    auto [pos, inserted] = reg.emplace(&mring, std::move(sp));
    return *pos->second;
}

}  // namespace slstar
