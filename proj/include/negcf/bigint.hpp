#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace negcf {

/// Arbitrary-precision integer used for every coefficient and every
/// numerator/denominator in the library.
using BigInt = mpz_class;

using Coefficients = std::vector<BigInt>;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

inline BigInt abs_of(const BigInt& x) { return abs(x); }

inline int sign_of(const BigInt& x) { return sgn(x); }

/// True for the coefficients the singularization map removes: 0, 1 and -1.
inline bool is_unit_or_zero(const BigInt& x) { return mpz_cmpabs_ui(x.get_mpz_t(), 1) <= 0; }

std::string join(const Coefficients& xs, const char* sep = ",");

std::size_t hash_value(const BigInt& x);

}  // namespace negcf
