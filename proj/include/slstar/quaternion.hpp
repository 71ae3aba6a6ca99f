#pragma once

#include "slstar/ring.hpp"

namespace slstar {

// reduced norm x^2+y^2+z^2+w^2 of a rational quaternion
Rational quat_nrd(const Element& q);

// Dieudonne determinant class: a field value over a commutative base, the
// reduced-norm value (nonnegative rational) over the rational quaternions
struct DieudonneClass {
    bool zero = false;
    Element value;

    bool is_identity() const { return !zero && value.ring->is_one(value); }
};

DieudonneClass dieudonne_det_2x2(const Element& m);
DieudonneClass dieudonne_det_n(const Element& m);
DieudonneClass dieudonne_mul(const DieudonneClass& a, const DieudonneClass& b);

// membership in the Dieudonne special linear group
bool sl2_membership_dieudonne(const Element& m);

// the three equivalent invertibility conditions over a *-local base,
// each computed by an independent route
struct GlCriterion {
    bool invertible;    // (i) a two-sided inverse exists
    bool congruence;    // (ii) some b has ba in the principal congruence subgroup
    bool residue_dets;  // (iii) both residue determinants are nonzero
    bool agree() const { return invertible == congruence && congruence == residue_dets; }
};
GlCriterion gl_criterion(const Element& a);

struct DecompositionFailed : std::runtime_error {
    explicit DecompositionFailed(const std::string& what) : std::runtime_error(what) {}
};

// g = h_q * m with q a quaternion unit and m a rational matrix of det 1
struct DhSl2f {
    Element q;  // rational quaternion
    Element m;  // element of Mat(2, Q)
};
DhSl2f decompose_dh_sl2f(const Element& g);

// lift of a rational 2x2 matrix to a quaternion-entry block matrix
Element embed_rational_sl2(const Ring& quat_group_ring, const Element& m_over_q);

}  // namespace slstar
