#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "urn/types.hpp"

namespace urn {

// Expression templates are off so the type behaves as a plain value inside Eigen.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

using RationalVector = Vector<Rational>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace urn
