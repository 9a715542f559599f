#pragma once

// Fast orthogonality tests for bulk pair checks. Coordinates are reduced
// modulo the prime 2^61 − 1 (a ring homomorphism on p-integral rationals, and
// on quaternions componentwise), so a nonzero residue of ⟨x,y⟩ proves x ̸⊥ y.
// Zero residues and non-p-integral inputs fall back to exact arithmetic.

#include <array>
#include <cstdint>
#include <vector>

#include "olab/orthoset.hpp"

namespace olab::detail {

using Residue = std::array<std::uint64_t, 4>;

/// Flat residues. Left rows hold the components of each coordinate; right
/// rows hold each component followed by its negation, so every term of the
/// pairing is a plain product and sums can be reduced once at the end.
struct ResidueRow {
  bool valid = false;
  std::vector<std::uint64_t> coords;
};

class PerpKernel {
 public:
  explicit PerpKernel(const HermitianSpace& h);

  /// Residues of the representative (empty row for the zero ray).
  ResidueRow left(const Ray& x) const;
  /// Residues of G·y∗, so that ⟨x,y⟩ ≡ Σ xᵢ·(G·y∗)ᵢ.
  ResidueRow right(const Ray& y) const;

  bool perp(const Ray& x, const ResidueRow& lx, const Ray& y, const ResidueRow& ry) const;

 private:
  HermitianSpace space_;
  /// Components per scalar: 1, 2 or 4.
  std::size_t width_;
  std::vector<std::vector<Residue>> gram_;
  bool gram_valid_ = true;
};

}  // namespace olab::detail
