#pragma once

#include <optional>

#include "zca/dfa.hpp"

namespace zca {

using IntTuple = std::vector<int64_t>;

// Automatic subset of Z^d as 2^d orthant automata over N^d, indexed by the
// sign bitmask (bit v set: coordinate v negative).  Orthant automata must
// agree on shared boundary points; assembly verifies this exactly.
struct SignedDfa {
    uint32_t p = 2;
    uint32_t d = 1;
    std::vector<Dfa> orthants;  // size 2^d, LSB automata over N^d

    const Dfa& orthant(uint32_t mask) const { return orthants[mask]; }
};

SignedDfa assemble_signed(uint32_t p, uint32_t d, std::vector<Dfa> orthants);
bool signed_membership(const SignedDfa& s, const IntTuple& n);

// pointwise algebra lifted from the orthants
SignedDfa signed_combine(BoolOp op, const SignedDfa& a, const SignedDfa& b);
bool signed_equal(const SignedDfa& a, const SignedDfa& b);
bool signed_is_empty(const SignedDfa& a, IntTuple* witness = nullptr);

// the signed-alphabet encoding of one integer tuple: per coordinate a sign
// character then the digits, most significant last (LSB reading order)
std::vector<std::string> signed_encode(uint32_t p, const IntTuple& n);

// Finitely generated abelian group presented by m generators. When the target
// structure is declared, generator images live in Z^free_rank x prod Z/torsion.
struct GroupSpec {
    uint32_t m = 0;
    std::vector<std::string> labels;
    struct Target {
        uint32_t free_rank = 0;
        std::vector<uint64_t> torsion;                // orders of the cyclic factors
        std::vector<std::vector<int64_t>> images;     // one row per generator
    };
    std::optional<Target> target;

    // evaluation of an exponent vector in the declared target
    std::vector<int64_t> evaluate(const IntTuple& exponents) const;
};

// An automatic subset of the group, stored as its Z^m preimage.
struct GroupAutomaticSet {
    GroupSpec spec;
    SignedDfa preimage;
};

GroupAutomaticSet group_pullback(GroupSpec spec, SignedDfa preimage);
bool group_membership(const GroupAutomaticSet& g, const IntTuple& exponents);

}  // namespace zca
