#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zca/errors.hpp"
#include "zca/tpoly.hpp"

namespace zca {

enum class Direction { LSB, MSB };

using Tuple = std::vector<uint64_t>;  // a point of N^d

// Deterministic automaton over the digit-tuple alphabet Sigma_p^d with {0,1}
// outputs and a declared reading direction.  A digit tuple (j_1..j_d) is
// encoded as the index sum j_v p^v (variable 1 in the lowest slot).  Language
// invariant: acceptance of an integer tuple does not depend on padding
// (trailing all-zero digit tuples for LSB machines, leading ones for MSB).
struct Dfa {
    uint32_t p = 2;
    uint32_t d = 1;
    Direction dir = Direction::LSB;
    uint32_t start = 0;
    std::vector<uint8_t> out;
    std::vector<std::vector<uint32_t>> delta;

    uint32_t num_states() const { return (uint32_t)out.size(); }
    uint32_t alphabet() const { return digit_count(p, d); }
    uint32_t step(uint32_t q, uint32_t digit) const { return delta[q][digit]; }
    uint32_t run(uint32_t q, const std::vector<uint32_t>& word) const;

    bool same_shape(const Dfa& o) const { return p == o.p && d == o.d && dir == o.dir; }
};

// shape and padding-invariance check; throws input_error on violation
void dfa_validate(const Dfa& a);

// trivial automata
Dfa dfa_empty_lang(uint32_t p, uint32_t d, Direction dir);
Dfa dfa_full_lang(uint32_t p, uint32_t d, Direction dir);

// canonical digit encoding of a tuple (no padding beyond the highest digit;
// the zero tuple is the empty word)
std::vector<uint32_t> encode_tuple(uint32_t p, uint32_t d, Direction dir, const Tuple& n);
Tuple decode_word(uint32_t p, uint32_t d, Direction dir, const std::vector<uint32_t>& word);

bool dfa_accepts(const Dfa& a, const Tuple& n);

// Moore partition refinement; deterministic canonical state numbering
Dfa dfa_minimize(const Dfa& a);
// BFS renumbering only (no merging)
Dfa dfa_canonical(const Dfa& a);

enum class BoolOp { And, Or, Xor, Diff };
Dfa dfa_combine(BoolOp op, const Dfa& a, const Dfa& b);  // minimized product
Dfa dfa_complement(const Dfa& a);

// LSB <-> MSB: language reversal by subset construction, then minimization
Dfa dfa_reverse_direction(const Dfa& a);

// emptiness of the represented SET; when nonempty produces a witness of
// minimal max-norm
bool dfa_is_empty(const Dfa& a, Tuple* witness = nullptr);

// finiteness of the represented set; fills elements (lex-sorted) when finite
bool dfa_is_finite(const Dfa& a, std::vector<Tuple>* elements = nullptr);

bool dfa_equal(const Dfa& a, const Dfa& b);

// all members with max-norm <= bound, lexicographic
std::vector<Tuple> dfa_enumerate(const Dfa& a, uint64_t bound);

// state count of the minimized LSB automaton = cardinality of the p-kernel
uint32_t dfa_complexity(const Dfa& a);

struct PeriodicityResult {
    bool periodic = false;
    uint64_t preperiod = 0;  // membership is period-periodic from this point on
    uint64_t period = 0;
    uint64_t cap = 0;  // largest candidate period that was tested
};
// d = 1 only. Sound in both directions up to the candidate cap: a certificate
// is verified by automaton equality, a negative answer means no period <= cap.
PeriodicityResult dfa_eventually_periodic(const Dfa& a, uint64_t period_cap = 4096);

// building blocks ------------------------------------------------------------

// all coordinates <= B
Dfa dfa_box(uint32_t p, uint32_t d, Direction dir, uint64_t B);
// d=1: n ≡ r (mod q) for r in residues
Dfa dfa_residue(uint32_t p, Direction dir, uint64_t q, const std::set<uint64_t>& residues);
// d=1: n >= N0
Dfa dfa_threshold(uint32_t p, Direction dir, uint64_t N0);
// exactly the given tuples
Dfa dfa_finite_set(uint32_t p, uint32_t d, Direction dir, const std::vector<Tuple>& pts);
// coordinate v equals zero
Dfa dfa_coord_zero(uint32_t p, uint32_t d, Direction dir, uint32_t v);
// d=1: accepts n iff a accepts n + q
Dfa dfa_shift_membership(const Dfa& a, uint64_t q);
// words that are canonical encodings (no spurious padding)
Dfa dfa_canonical_encodings(uint32_t p, uint32_t d, Direction dir);
// lift a one-dimensional automaton to d dimensions, reading coordinate v
Dfa dfa_coord_lift(const Dfa& a, uint32_t d, uint32_t v);

}  // namespace zca
