#pragma once

#include <stdexcept>
#include <string>

namespace zca {

// Bad or inconsistent input data (unparsable text, non-irreducible modulus,
// mismatched automaton parameters, seed that isolates no branch, ...).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configurable ceiling was hit (state count, Kronecker dimension, ...).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A truncated series does not carry enough terms for the requested operation.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated internal invariant; indicates a bug, not bad input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace zca
