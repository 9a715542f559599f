#pragma once

// Exact arithmetic for the three supported *-sfields:
//   Q   rationals, identity involution
//   Qi  Gaussian rationals, complex conjugation
//   HQ  rational quaternions, quaternion conjugation
// and for the morphisms between them (identity, conjugation, inner).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace olab {

using Rational = mpq_class;

/// Parses "p/q" or "p" into a canonical rational. Throws InputError.
Rational parse_rational(std::string_view text);
/// Always "p/q", so "4" is written as "4/1".
std::string format_rational(const Rational& r);

enum class Sfield : std::uint8_t { Q, Qi, HQ };

std::string_view sfield_name(Sfield f);
Sfield parse_sfield(std::string_view name);

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  /// re² + im²
  Rational norm() const { return re * re + im * im; }
  GaussianRational inverse() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// a + b·i + c·j + d·k with i² = j² = k² = ijk = −1.
struct Quaternion {
  Rational a;
  Rational b;
  Rational c;
  Rational d;

  Quaternion() = default;
  Quaternion(Rational a_, Rational b_, Rational c_, Rational d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Quaternion real(const Rational& r) { return {r, 0, 0, 0}; }
  static Quaternion unit_i() { return {0, 1, 0, 0}; }
  static Quaternion unit_j() { return {0, 0, 1, 0}; }
  static Quaternion unit_k() { return {0, 0, 0, 1}; }

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0 && sgn(d) == 0; }
  bool is_real() const { return sgn(b) == 0 && sgn(c) == 0 && sgn(d) == 0; }
  Quaternion conj() const { return {a, -b, -c, -d}; }
  /// N(q) = q·q∗ = a² + b² + c² + d²
  Rational norm() const { return a * a + b * b + c * c + d * d; }
  Quaternion inverse() const;

  friend Quaternion operator+(const Quaternion& x, const Quaternion& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend Quaternion operator-(const Quaternion& x, const Quaternion& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend Quaternion operator*(const Quaternion& x, const Quaternion& y);
  Quaternion operator-() const { return {-a, -b, -c, -d}; }
  friend bool operator==(const Quaternion& x, const Quaternion& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

/// An element of one of the supported sfields. The alternative held fixes
/// the sfield; mixing sfields in one operation raises InputError.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(Rational r) : value_(std::move(r)) {}  // NOLINT: implicit by design of the zoo
  Scalar(GaussianRational g) : value_(std::move(g)) {}
  Scalar(Quaternion q) : value_(std::move(q)) {}

  static Scalar zero(Sfield f);
  static Scalar one(Sfield f);
  /// The rational r viewed as an element of f.
  static Scalar from_rational(Sfield f, const Rational& r);

  Sfield sfield() const { return static_cast<Sfield>(value_.index()); }

  const Rational& as_rational() const;
  const GaussianRational& as_gaussian() const;
  const Quaternion& as_quaternion() const;
  /// Embeds any supported scalar into HQ (Q ⊂ Qi ⊂ HQ via i ↦ i).
  Quaternion to_quaternion() const;

  bool is_zero() const;
  bool is_one() const;
  /// True when the value lies in the rational prime subfield.
  bool is_rational() const;
  /// Rational part when is_rational(); throws InputError otherwise.
  Rational rational_value() const;

  /// Two-sided inverse. Throws DivisionByZero on zero.
  Scalar inverse() const;
  /// The standard involution of the scalar's sfield.
  Scalar star() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }

  friend bool operator==(const Scalar& x, const Scalar& y) { return x.value_ == y.value_; }

  std::string to_string() const;

  using Storage = std::variant<Rational, GaussianRational, Quaternion>;
  const Storage& storage() const { return value_; }

 private:
  Storage value_;
};

/// involution(t, a): a∗ for the involution attached to sfield t.
Scalar involution(Sfield t, const Scalar& a);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar inv(const Scalar& a);

/// Sfield isomorphism of one of the classified kinds. Every represented
/// morphism has source = target.
class SfieldMorphism {
 public:
  enum class Kind : std::uint8_t { Identity, Conjugation, Inner };

  static SfieldMorphism identity(Sfield f);
  /// Complex conjugation on Qi.
  static SfieldMorphism conjugation();
  /// a ↦ q·a·q⁻¹ on HQ; q is rescaled so its first nonzero component is 1.
  /// A real q yields the identity.
  static SfieldMorphism inner(const Quaternion& q);

  Sfield source() const { return field_; }
  Sfield target() const { return field_; }
  Kind kind() const { return kind_; }
  /// Canonical conjugator for Kind::Inner, 1 otherwise.
  const Quaternion& conjugator() const { return q_; }
  bool is_identity() const { return kind_ == Kind::Identity; }

  Scalar apply(const Scalar& a) const;
  SfieldMorphism inverse() const;

  friend bool operator==(const SfieldMorphism&, const SfieldMorphism&) = default;

  std::string to_string() const;

 private:
  SfieldMorphism(Sfield f, Kind k, Quaternion q) : field_(f), kind_(k), q_(std::move(q)) {}

  Sfield field_;
  Kind kind_;
  Quaternion q_;
};

Scalar apply_morphism(const SfieldMorphism& sigma, const Scalar& a);
/// sigma ∘ tau (tau applied first).
SfieldMorphism compose_morphisms(const SfieldMorphism& sigma, const SfieldMorphism& tau);
SfieldMorphism invert_morphism(const SfieldMorphism& sigma);
/// inner(kappa) on kappa's sfield; the identity when the sfield is commutative.
SfieldMorphism inner_for(const Scalar& kappa);

}  // namespace olab
