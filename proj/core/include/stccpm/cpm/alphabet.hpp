#pragma once

#include "stccpm/rational.hpp"

#include <span>
#include <vector>

namespace stccpm {

// Equally spaced symbol levels values[i] = -M + 1 + 2i + offset.
struct Alphabet {
    std::vector<Rational> values;
    Rational offset;

    int size() const { return static_cast<int>(values.size()); }
    const Rational& operator[](int i) const { return values[static_cast<std::size_t>(i)]; }

    static Alphabet standard(int M);
    // The second-antenna alphabet of the parallel code: standard(M) shifted by 1/h.
    static Alphabet shifted(int M, const Rational& offset);
};

// Reflected Gray code. Bits are MSB first.
int gray_to_index(std::span<const int> bits);
std::vector<int> index_to_gray(int index, int bits_per_symbol);
unsigned gray_code(unsigned index);

// Throws ParameterError if bits.size() != log2(alphabet size).
Rational gray_map(std::span<const int> bits, const Alphabet& alphabet);

// Number of differing bits between the Gray labels of two symbol indices.
int bit_errors(int index_a, int index_b);

}  // namespace stccpm
