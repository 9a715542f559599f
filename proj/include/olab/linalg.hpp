#pragma once

// Vectors over a left scalar action and row reduction over the supported
// skew fields. All row operations multiply on the left.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "olab/starfields.hpp"

namespace olab {

class Vector {
 public:
  Vector(Sfield f, std::size_t n) : field_(f), coords_(n, Scalar::zero(f)) {}
  /// Throws InputError when a coordinate is not in f.
  Vector(Sfield f, std::vector<Scalar> coords);

  static Vector unit(Sfield f, std::size_t n, std::size_t i);

  Sfield sfield() const { return field_; }
  std::size_t size() const { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Scalar>& coords() const { return coords_; }

  bool is_zero() const;
  /// Index of the first nonzero coordinate, or size() for the zero vector.
  std::size_t leading_index() const;

  friend Vector operator+(const Vector& u, const Vector& v);
  friend Vector operator-(const Vector& u, const Vector& v);
  Vector operator-() const;
  /// Left scalar action (α·u)ᵢ = α·uᵢ.
  friend Vector operator*(const Scalar& alpha, const Vector& u);
  Vector& operator+=(const Vector& v) { return *this = *this + v; }

  friend bool operator==(const Vector& u, const Vector& v) {
    return u.field_ == v.field_ && u.coords_ == v.coords_;
  }

  std::string to_string() const;

 private:
  Sfield field_;
  std::vector<Scalar> coords_;
};

/// Rows in reduced echelon form: pivot entries 1, zeros above and below
/// each pivot. Pivot search picks the first nonzero column, topmost row.
struct Echelon {
  std::vector<Vector> rows;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return rows.size(); }
};

Echelon reduce_rows(Sfield f, std::size_t ncols, std::span<const Vector> rows);
std::size_t row_rank(Sfield f, std::size_t ncols, std::span<const Vector> rows);

/// Basis (in reduced echelon form) of { c : Σ cᵢ·rowsᵢ = 0 }.
std::vector<Vector> left_null_space(Sfield f, std::size_t ncols, std::span<const Vector> rows);

/// Some c with Σ cᵢ·rowsᵢ = target, if one exists.
std::optional<std::vector<Scalar>> left_solve(Sfield f, std::size_t ncols,
                                              std::span<const Vector> rows, const Vector& target);

/// For square invertible R, the matrix C with C·R = I (rows of C returned).
std::optional<std::vector<Vector>> left_inverse(Sfield f, std::span<const Vector> rows);

}  // namespace olab
