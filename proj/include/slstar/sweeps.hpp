#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slstar/table_ring.hpp"

namespace slstar {

// -------- pair sweeps over 2x2 matrix rings ----------------------------------

struct PairSweepResult {
    uint64_t pairs_scanned = 0;   // all (a,c) considered
    uint64_t pairs_valid = 0;     // coprime with a*c symmetric
    uint64_t steps_verified = 0;  // valid pairs with a verified length-1 step
    uint64_t failures = 0;
    std::vector<std::pair<uint64_t, uint64_t>> failure_samples;  // first few ids

    bool all_divide() const { return failures == 0 && steps_verified == pairs_valid; }
};

struct PackedStep {
    PMat s, r;
};

// closed forms, then the symmetric sweep (semisimple) or the residue solve
// lifted through the section (otherwise)
std::optional<PackedStep> packed_divide(const PMatSpace& sp, const PMat& a, const PMat& c);

// straightforward per-pair reference: full double loop, one solve per pair
PairSweepResult sweep_divide_pairs_reference(const Ring& matrix_ring);

// production kernel: shares one residue solve across each radical fiber and
// parallelizes the outer loop when asked
PairSweepResult sweep_divide_pairs(const Ring& matrix_ring, bool parallel);

// -------- packed SL_* enumeration and closure --------------------------------

// blocks a,b,c,d as 16-bit coefficient-ring ids, a least significant
using GElem = uint64_t;

inline GElem gpack(uint16_t a, uint16_t b, uint16_t c, uint16_t d) {
    return static_cast<uint64_t>(a) | (static_cast<uint64_t>(b) << 16) |
           (static_cast<uint64_t>(c) << 32) | (static_cast<uint64_t>(d) << 48);
}
inline std::array<uint16_t, 4> gunpack(GElem g) {
    return {static_cast<uint16_t>(g), static_cast<uint16_t>(g >> 16),
            static_cast<uint16_t>(g >> 32), static_cast<uint16_t>(g >> 48)};
}

GElem gmul(const TableRing& t, GElem x, GElem y);
bool gis_sl_star(const TableRing& t, GElem g);

struct GroupSet {
    std::vector<GElem> elems;  // sorted
    bool complete = true;      // false when the cap stopped the walk
};

GroupSet enumerate_sl_star_packed(const Ring& coeff_ring, uint64_t cap, bool parallel);
GroupSet closure_bfs_packed(const Ring& coeff_ring, uint64_t cap, bool parallel);

Element gelem_to_element(const Ring& group_ring, const TableRing& t, GElem g);

}  // namespace slstar
