#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slc {

// Clustering costs reach ~n²·W, past the 64-bit range for large corpora, so
// every cost accumulator is 128-bit and overflow is a hard error.
using cost128 = __int128;

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline cost128 checked_add(cost128 a, cost128 b) {
    cost128 out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw OverflowError("128-bit cost addition overflowed");
    }
    return out;
}

inline cost128 checked_mul(cost128 a, cost128 b) {
    cost128 out;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw OverflowError("128-bit cost multiplication overflowed");
    }
    return out;
}

inline std::string cost_to_string(cost128 value) {
    if (value == 0) {
        return "0";
    }
    const bool negative = value < 0;
    unsigned __int128 mag =
        negative ? static_cast<unsigned __int128>(-(value + 1)) + 1
                 : static_cast<unsigned __int128>(value);
    std::string digits;
    while (mag > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (negative) {
        digits.push_back('-');
    }
    return {digits.rbegin(), digits.rend()};
}

inline double cost_to_double(cost128 value) {
    return static_cast<double>(value);
}

} // namespace slc
