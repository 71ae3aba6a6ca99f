#pragma once

#include <functional>

#include "slstar/ring.hpp"

namespace slstar {

enum class LocalKind { OneLocal, TwoLocal, NotStarLocal };

// Maximal-spectrum data for a *-local ring: the (at most two) maximal primes
// as membership predicates, and the radical J = p ∩ p*.
struct StarLocalClassification {
    LocalKind kind;
    DescriptorPtr residue;
    std::function<bool(const Element&)> in_p;
    std::function<bool(const Element&)> in_p_star;
    std::function<bool(const Element&)> in_radical;
    std::string p_text, p_star_text;
};

StarLocalClassification classify_star_local(const Ring& r);

// structural radical test for built-in kinds
bool jacobson_membership(const Element& x);
// independent oracle: x in J iff 1 + a·x·b is a unit for all a, b
// (finite rings of size <= 256 only)
bool jacobson_membership_bruteforce(const Element& x);

Element project_residue(const Element& x);
Element section_lift(const Ring& upstairs, const Element& xbar);

// unique splitting a = a_sigma + a_J with a_sigma in the representative set
std::pair<Element, Element> decompose_radical(const Element& a);

// unit test by reduction: project and decide invertibility downstairs
bool is_unit_via_reduction(const Element& a);

// true when divide_lift-style section arguments apply to this ring
bool is_star_local_base(const Ring& r);

}  // namespace slstar
