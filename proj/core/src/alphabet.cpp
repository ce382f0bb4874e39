#include "stccpm/cpm/alphabet.hpp"

#include "stccpm/error.hpp"

#include <bit>

namespace stccpm {

Alphabet Alphabet::standard(int M) { return shifted(M, Rational(0)); }

Alphabet Alphabet::shifted(int M, const Rational& offset) {
    Alphabet a;
    a.offset = offset;
    a.values.reserve(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        a.values.push_back(Rational(-M + 1 + 2 * i) + offset);
    }
    return a;
}

unsigned gray_code(unsigned index) { return index ^ (index >> 1); }

int gray_to_index(std::span<const int> bits) {
    unsigned g = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw ParameterError("bit values must be 0 or 1");
        g = (g << 1) | static_cast<unsigned>(b);
    }
    unsigned index = g;
    for (unsigned shift = g >> 1; shift != 0; shift >>= 1) index ^= shift;
    return static_cast<int>(index);
}

std::vector<int> index_to_gray(int index, int bits_per_symbol) {
    unsigned g = gray_code(static_cast<unsigned>(index));
    std::vector<int> bits(static_cast<std::size_t>(bits_per_symbol));
    for (int i = 0; i < bits_per_symbol; ++i) {
        bits[static_cast<std::size_t>(i)] = static_cast<int>((g >> (bits_per_symbol - 1 - i)) & 1u);
    }
    return bits;
}

Rational gray_map(std::span<const int> bits, const Alphabet& alphabet) {
    int expected = std::countr_zero(static_cast<unsigned>(alphabet.size()));
    if (static_cast<int>(bits.size()) != expected) {
        throw ParameterError("gray_map: expected " + std::to_string(expected) + " bits, got " +
                             std::to_string(bits.size()));
    }
    return alphabet[gray_to_index(bits)];
}

int bit_errors(int index_a, int index_b) {
    return std::popcount(gray_code(static_cast<unsigned>(index_a)) ^
                         gray_code(static_cast<unsigned>(index_b)));
}

}  // namespace stccpm
