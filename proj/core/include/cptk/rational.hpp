#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace cptk {

// Arbitrary-precision exact rational. Every scalar in the kernel bottoms out
// here; there is no floating-point representation anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Rat& r) { return r.str(); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

inline int sign_of(const Rat& r) { return r.sign(); }

} // namespace cptk
