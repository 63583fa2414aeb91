#pragma once

#include <gmpxx.h>

#include <string>

namespace cheb {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline double to_double(const Rational& q) { return q.get_d(); }

} // namespace cheb
