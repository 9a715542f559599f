#pragma once

// Fraction-free evaluation of row-vector maps up to a positive rational
// factor. Rays only see a vector up to central scalars, so ray maps can clear
// denominators once, multiply integers, and normalize once at the end instead
// of reducing every intermediate fraction.

#include <array>
#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "olab/linalg.hpp"
#include "olab/starfields.hpp"

namespace olab::detail {

using IntQuat = std::array<mpz_class, 4>;
using IntRow = std::vector<IntQuat>;

/// A positive integer multiple of u with integral components.
IntRow clear_denominators(const Vector& u);
Vector to_vector(Sfield f, const IntRow& r);
/// The multiple of r whose leading nonzero coordinate is 1 (zero row: zeros).
Vector normalized(Sfield f, IntRow r);

/// u ↦ Σᵢ σ(uᵢ)·rows[i], correct up to a positive rational factor.
class ProjectiveAction {
 public:
  ProjectiveAction(Sfield f, const SfieldMorphism& sigma, const std::vector<Vector>& rows,
                   std::size_t ncols);

  IntRow apply(const IntRow& u) const;

 private:
  IntQuat twist(const IntQuat& x) const;

  Sfield field_;
  SfieldMorphism::Kind kind_;
  IntQuat q_;
  IntQuat q_conj_;
  std::vector<IntRow> rows_;
  std::size_t ncols_;
};

}  // namespace olab::detail
