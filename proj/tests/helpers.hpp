#pragma once

#include <random>

#include "zca/field.hpp"

// shared fixture builders for the test suites
namespace zt {

using namespace zca;

inline FieldPtr F2() { return Field::make({2, 1, {}, {}}); }
inline FieldPtr F3() { return Field::make({3, 1, {}, {}}); }
inline FieldPtr F5() { return Field::make({5, 1, {}, {}}); }
inline FieldPtr F4() { return Field::make({2, 2, {1, 1, 1}, {}}); }       // a^2+a+1
inline FieldPtr F9() { return Field::make({3, 2, {1, 0, 1}, {}}); }       // a^2+1
inline FieldPtr F2u() { return Field::make({2, 1, {}, {"u"}}); }
inline FieldPtr F3u() { return Field::make({3, 1, {}, {"u"}}); }
inline FieldPtr F5u() { return Field::make({5, 1, {}, {"u"}}); }
inline FieldPtr F2xyz() { return Field::make({2, 1, {}, {"x", "y", "z"}}); }
inline FieldPtr F3xyz() { return Field::make({3, 1, {}, {"x", "y", "z"}}); }

inline FieldElement rand_poly_elem(const FieldPtr& K, std::mt19937& rng, uint32_t max_deg,
                                   uint32_t max_terms) {
    std::uniform_int_distribution<uint32_t> nterms(0, max_terms);
    std::uniform_int_distribution<uint32_t> dexp(0, max_deg);
    std::uniform_int_distribution<uint32_t> dscal(0, K->gf().q() - 1);
    FieldElement acc = FieldElement::zero(K);
    uint32_t n = nterms(rng);
    for (uint32_t t = 0; t < n; ++t) {
        FieldElement term = FieldElement::from_scalar(K, dscal(rng));
        for (uint32_t i = 0; i < K->r(); ++i)
            term = term * FieldElement::var(K, i).pow(dexp(rng));
        acc = acc + term;
    }
    return acc;
}

inline FieldElement rand_elem(const FieldPtr& K, std::mt19937& rng, uint32_t max_deg,
                              uint32_t max_terms) {
    FieldElement num = rand_poly_elem(K, rng, max_deg, max_terms);
    FieldElement den = FieldElement::zero(K);
    while (den.is_zero()) den = rand_poly_elem(K, rng, max_deg, max_terms);
    return num / den;
}

}  // namespace zt
