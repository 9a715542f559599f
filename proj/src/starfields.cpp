#include "olab/starfields.hpp"

#include <sstream>

#include "olab/errors.hpp"

namespace olab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& x) {
    auto b = x.find_first_not_of(" \t");
    auto e = x.find_last_not_of(" \t");
    x = b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw InputError("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && part.front() == '-') part.remove_prefix(1);
    if (part.empty()) return false;
    for (char ch : part)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw InputError("rational literal with zero denominator: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string_view sfield_name(Sfield f) {
  switch (f) {
    case Sfield::Q: return "Q";
    case Sfield::Qi: return "Qi";
    case Sfield::HQ: return "HQ";
  }
  return "?";
}

Sfield parse_sfield(std::string_view name) {
  if (name == "Q") return Sfield::Q;
  if (name == "Qi") return Sfield::Qi;
  if (name == "HQ") return Sfield::HQ;
  throw InputError("unknown sfield tag '" + std::string(name) + "'");
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero Gaussian rational");
  Rational n = norm();
  return {re / n, -im / n};
}

Quaternion operator*(const Quaternion& x, const Quaternion& y) {
  return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
          x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
          x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
          x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

Quaternion Quaternion::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero quaternion");
  Rational n = norm();
  return {a / n, -b / n, -c / n, -d / n};
}

// ---------------------------------------------------------------------------
// Scalar

namespace {

[[noreturn]] void mismatch(const Scalar& x, const Scalar& y) {
  throw InputError("sfield mismatch: " + std::string(sfield_name(x.sfield())) + " vs " +
                   std::string(sfield_name(y.sfield())));
}

template <class Op>
Scalar binary(const Scalar& x, const Scalar& y, Op op) {
  if (x.storage().index() != y.storage().index()) mismatch(x, y);
  return std::visit(
      [&](const auto& a) -> Scalar {
        using T = std::decay_t<decltype(a)>;
        return Scalar(T(op(a, std::get<T>(y.storage()))));
      },
      x.storage());
}

}  // namespace

Scalar Scalar::zero(Sfield f) { return from_rational(f, 0); }
Scalar Scalar::one(Sfield f) { return from_rational(f, 1); }

Scalar Scalar::from_rational(Sfield f, const Rational& r) {
  switch (f) {
    case Sfield::Q: return Scalar(r);
    case Sfield::Qi: return Scalar(GaussianRational(r, 0));
    case Sfield::HQ: return Scalar(Quaternion::real(r));
  }
  throw InputError("bad sfield");
}

const Rational& Scalar::as_rational() const {
  if (auto p = std::get_if<Rational>(&value_)) return *p;
  throw InputError("scalar is not in Q");
}

const GaussianRational& Scalar::as_gaussian() const {
  if (auto p = std::get_if<GaussianRational>(&value_)) return *p;
  throw InputError("scalar is not in Qi");
}

const Quaternion& Scalar::as_quaternion() const {
  if (auto p = std::get_if<Quaternion>(&value_)) return *p;
  throw InputError("scalar is not in HQ");
}

Quaternion Scalar::to_quaternion() const {
  return std::visit(
      [](const auto& a) -> Quaternion {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>) return Quaternion::real(a);
        else if constexpr (std::is_same_v<T, GaussianRational>) return {a.re, a.im, 0, 0};
        else return a;
      },
      value_);
}

bool Scalar::is_zero() const {
  return std::visit(
      [](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>) return sgn(a) == 0;
        else return a.is_zero();
      },
      value_);
}

bool Scalar::is_one() const { return *this == one(sfield()); }

bool Scalar::is_rational() const {
  return std::visit(
      [](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>) return true;
        else if constexpr (std::is_same_v<T, GaussianRational>) return sgn(a.im) == 0;
        else return a.is_real();
      },
      value_);
}

Rational Scalar::rational_value() const {
  if (!is_rational()) throw InputError("scalar " + to_string() + " is not rational");
  return to_quaternion().a;
}

Scalar Scalar::inverse() const {
  return std::visit(
      [](const auto& a) -> Scalar {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>) {
          if (sgn(a) == 0) throw DivisionByZero("inverse of zero rational");
          return Scalar(Rational(1 / a));
        } else {
          return Scalar(a.inverse());
        }
      },
      value_);
}

Scalar Scalar::star() const {
  return std::visit(
      [](const auto& a) -> Scalar {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Rational>) return Scalar(a);
        else return Scalar(a.conj());
      },
      value_);
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a + b; });
}
Scalar operator-(const Scalar& x, const Scalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a - b; });
}
Scalar operator*(const Scalar& x, const Scalar& y) {
  return binary(x, y, [](const auto& a, const auto& b) { return a * b; });
}

Scalar Scalar::operator-() const {
  return std::visit(
      [](const auto& a) -> Scalar {
        using T = std::decay_t<decltype(a)>;
        return Scalar(T(-a));
      },
      value_);
}

std::string Scalar::to_string() const {
  Quaternion q = to_quaternion();
  switch (sfield()) {
    case Sfield::Q: return format_rational(q.a);
    case Sfield::Qi: return "(" + format_rational(q.a) + ")+(" + format_rational(q.b) + ")i";
    case Sfield::HQ:
      return "(" + format_rational(q.a) + ")+(" + format_rational(q.b) + ")i+(" +
             format_rational(q.c) + ")j+(" + format_rational(q.d) + ")k";
  }
  return "?";
}

Scalar involution(Sfield t, const Scalar& a) {
  if (a.sfield() != t)
    throw InputError("scalar in " + std::string(sfield_name(a.sfield())) +
                     " given for sfield " + std::string(sfield_name(t)));
  return a.star();
}

Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar inv(const Scalar& a) { return a.inverse(); }

// ---------------------------------------------------------------------------
// Morphisms

SfieldMorphism SfieldMorphism::identity(Sfield f) {
  return SfieldMorphism(f, Kind::Identity, Quaternion::real(1));
}

SfieldMorphism SfieldMorphism::conjugation() {
  return SfieldMorphism(Sfield::Qi, Kind::Conjugation, Quaternion::real(1));
}

SfieldMorphism SfieldMorphism::inner(const Quaternion& q) {
  if (q.is_zero()) throw InputError("inner automorphism by zero quaternion");
  if (q.is_real()) return identity(Sfield::HQ);
  const Rational* lead = nullptr;
  for (const Rational* comp : {&q.a, &q.b, &q.c, &q.d})
    if (sgn(*comp) != 0) {
      lead = comp;
      break;
    }
  Rational s = 1 / *lead;
  return SfieldMorphism(Sfield::HQ, Kind::Inner, Quaternion::real(s) * q);
}

Scalar SfieldMorphism::apply(const Scalar& a) const {
  if (a.sfield() != field_)
    throw InputError("morphism on " + std::string(sfield_name(field_)) + " applied to " +
                     std::string(sfield_name(a.sfield())) + " scalar");
  switch (kind_) {
    case Kind::Identity: return a;
    case Kind::Conjugation: return a.star();
    case Kind::Inner: return Scalar(q_ * a.as_quaternion() * q_.inverse());
  }
  return a;
}

SfieldMorphism SfieldMorphism::inverse() const {
  if (kind_ == Kind::Inner) return inner(q_.conj());  // q⁻¹ = q∗/N(q), and N(q) is central
  return *this;
}

std::string SfieldMorphism::to_string() const {
  switch (kind_) {
    case Kind::Identity: return "id[" + std::string(sfield_name(field_)) + "]";
    case Kind::Conjugation: return "conj";
    case Kind::Inner: return "inner" + Scalar(q_).to_string();
  }
  return "?";
}

Scalar apply_morphism(const SfieldMorphism& sigma, const Scalar& a) { return sigma.apply(a); }

SfieldMorphism compose_morphisms(const SfieldMorphism& sigma, const SfieldMorphism& tau) {
  if (sigma.source() != tau.target())
    throw InputError("morphisms not composable: " + sigma.to_string() + " after " +
                     tau.to_string());
  using K = SfieldMorphism::Kind;
  if (tau.kind() == K::Identity) return sigma;
  if (sigma.kind() == K::Identity) return tau;
  if (sigma.kind() == K::Conjugation) return SfieldMorphism::identity(Sfield::Qi);
  return SfieldMorphism::inner(sigma.conjugator() * tau.conjugator());
}

SfieldMorphism invert_morphism(const SfieldMorphism& sigma) { return sigma.inverse(); }

SfieldMorphism inner_for(const Scalar& kappa) {
  if (kappa.sfield() == Sfield::HQ) return SfieldMorphism::inner(kappa.as_quaternion());
  return SfieldMorphism::identity(kappa.sfield());
}

}  // namespace olab
