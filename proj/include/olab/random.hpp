#pragma once

// Seeded generators for scalars, spaces and maps. Everything is derived from
// std::mt19937_64 output by explicit arithmetic, so a seed reproduces the same
// values with any standard library.

#include <cstdint>
#include <random>

#include "olab/hermspace.hpp"

namespace olab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 11) & 1u; }

 private:
  std::mt19937_64 engine_;
};

namespace gen {

/// Numerator in [−bound, bound], denominator in [1, bound].
Rational rational(Rng& rng, int bound = 10);
Rational nonzero_rational(Rng& rng, int bound = 10);
Rational positive_rational(Rng& rng, int bound = 10);

Scalar scalar(Rng& rng, Sfield f, int bound = 10);
Scalar nonzero_scalar(Rng& rng, Sfield f, int bound = 10);
/// Integer components in [−bound, bound].
Scalar integral_scalar(Rng& rng, Sfield f, int bound = 2);
/// Nonzero (for dim > 0) vector with integral coordinates.
Vector integral_vector(Rng& rng, const HermitianSpace& h, int bound = 2);
/// Norm-one scalar: ±1 over Q, q²/N(q) otherwise.
Scalar unit_scalar(Rng& rng, Sfield f);

Vector vector(Rng& rng, const HermitianSpace& h, int bound = 10);
Vector nonzero_vector(Rng& rng, const HermitianSpace& h, int bound = 10);

/// Certified space: positive diagonal over HQ, and over Q and Qi a Hermitian
/// matrix with small off-diagonal entries, resampled until it certifies.
HermitianSpace space(Rng& rng, Sfield f, std::size_t n);
/// The same space with its form multiplied by a positive rational.
HermitianSpace scaled_space(const HermitianSpace& h, const Rational& mu);

/// Coordinates from scalar(rng, f, bound); a negative bound asks for integral
/// coordinates in [bound, −bound] instead.
Subspace subspace(Rng& rng, const HermitianSpace& h, std::size_t k, int bound = 5);

SemilinearMap linear_map(Rng& rng, const HermitianSpace& h1, const HermitianSpace& h2);
SemilinearMap invertible_map(Rng& rng, const HermitianSpace& h);
/// Product of generalized reflections u ↦ u − ⟨u,a⟩⟨a,a⟩⁻¹(1−ζ)a, |ζ| = 1.
SemilinearMap unitary_map(Rng& rng, const HermitianSpace& h, int factors = 2);
/// κ·U (over Qi optionally composed with coordinatewise conjugation) into a
/// rescaled copy of h; covers σ = id, conj and inner(κ).
SemilinearMap quasiunitary_map(Rng& rng, const HermitianSpace& h);
/// Partial isometry U∘proj_S for a random k-dim S and unitary U of h.
PartialIsometryDescriptor partial_isometry(Rng& rng, const HermitianSpace& h, std::size_t k);

}  // namespace gen
}  // namespace olab
