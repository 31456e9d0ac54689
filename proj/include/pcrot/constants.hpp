#pragma once

#include "pcrot/scalar.hpp"

namespace pcrot {

// Rational enclosures of two irrational rotation numbers, half-width 1e-62.
inline Interval golden_box() {
    return enclose_decimal("0.61803398874989484820458683436563811772030917980576286213544862271", 62);
}

inline Interval quarter_pi_box() {
    return enclose_decimal("0.78539816339744830961566084581987572104929234984377645524373614808", 62);
}

}  // namespace pcrot
