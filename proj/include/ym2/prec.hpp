#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include "exact.hpp"

namespace ym2 {

// Software float with a ~133-bit mantissa for q-sums and theta series.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<40>>;

inline Real to_real(const Rat& r) {
    return Real(r.get_num().get_str()) / Real(r.get_den().get_str());
}

inline Real to_real(const mpz_class& z) { return Real(z.get_str()); }

}  // namespace ym2
