#pragma once
// Literal builders for test scalars and vectors.

#include <initializer_list>
#include <string>
#include <vector>

#include "olab/hermspace.hpp"
#include "olab/starfields.hpp"

namespace th {

inline olab::Rational r(const std::string& s) { return olab::parse_rational(s); }
inline olab::Scalar q(const std::string& s) { return olab::Scalar(r(s)); }
inline olab::Scalar c(const std::string& re, const std::string& im) {
  return olab::Scalar(olab::GaussianRational(r(re), r(im)));
}
inline olab::Scalar h(const std::string& a, const std::string& b, const std::string& cc,
                      const std::string& d) {
  return olab::Scalar(olab::Quaternion(r(a), r(b), r(cc), r(d)));
}

inline olab::Vector vec(olab::Sfield f, std::initializer_list<olab::Scalar> xs) {
  return olab::Vector(f, std::vector<olab::Scalar>(xs));
}

}  // namespace th
