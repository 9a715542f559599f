#include "integral.hpp"

namespace olab::detail {

namespace {

// acc += x·y, skipping components that vanish identically in the sfield.
void mul_add(Sfield f, IntQuat& acc, const IntQuat& x, const IntQuat& y) {
  switch (f) {
    case Sfield::Q:
      acc[0] += x[0] * y[0];
      return;
    case Sfield::Qi:
      acc[0] += x[0] * y[0] - x[1] * y[1];
      acc[1] += x[0] * y[1] + x[1] * y[0];
      return;
    case Sfield::HQ:
      acc[0] += x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
      acc[1] += x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
      acc[2] += x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1];
      acc[3] += x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0];
      return;
  }
}

IntQuat mul(Sfield f, const IntQuat& x, const IntQuat& y) {
  IntQuat out{0, 0, 0, 0};
  mul_add(f, out, x, y);
  return out;
}

std::array<Rational, 4> components(const Scalar& s) {
  Quaternion q = s.to_quaternion();
  return {q.a, q.b, q.c, q.d};
}

IntRow clear_rows(const std::vector<std::array<Rational, 4>>& comps) {
  mpz_class l = 1;
  for (const auto& c : comps)
    for (const auto& r : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den_mpz_t());
  IntRow out(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k) out[i][k] = comps[i][k].get_num() * (l / comps[i][k].get_den());
  return out;
}

}  // namespace

IntRow clear_denominators(const Vector& u) {
  std::vector<std::array<Rational, 4>> comps;
  comps.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) comps.push_back(components(u[i]));
  return clear_rows(comps);
}

Vector to_vector(Sfield f, const IntRow& r) {
  std::vector<Scalar> coords;
  coords.reserve(r.size());
  for (const auto& x : r) {
    switch (f) {
      case Sfield::Q: coords.emplace_back(Rational(x[0])); break;
      case Sfield::Qi: coords.emplace_back(GaussianRational(Rational(x[0]), Rational(x[1]))); break;
      case Sfield::HQ:
        coords.emplace_back(Quaternion(Rational(x[0]), Rational(x[1]), Rational(x[2]), Rational(x[3])));
        break;
    }
  }
  return Vector(f, std::move(coords));
}

Vector normalized(Sfield f, IntRow r) {
  auto is_zero = [](const IntQuat& x) { return x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0; };
  std::size_t lead = 0;
  while (lead < r.size() && is_zero(r[lead])) ++lead;
  if (lead == r.size()) return to_vector(f, r);
  mpz_class g = 0;
  for (const auto& x : r)
    for (const auto& c : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 1)
    for (auto& x : r)
      for (auto& c : x) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  // L⁻¹·x = L̄·x / N(L).
  const IntQuat l = r[lead];
  const IntQuat l_conj{l[0], -l[1], -l[2], -l[3]};
  const mpz_class n = l[0] * l[0] + l[1] * l[1] + l[2] * l[2] + l[3] * l[3];
  std::vector<Scalar> coords;
  coords.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i == lead) {
      coords.push_back(Scalar::one(f));
      continue;
    }
    IntQuat p = mul(f, l_conj, r[i]);
    std::array<Rational, 4> q;
    for (std::size_t k = 0; k < 4; ++k) {
      q[k] = Rational(p[k], n);
      q[k].canonicalize();
    }
    switch (f) {
      case Sfield::Q: coords.emplace_back(q[0]); break;
      case Sfield::Qi: coords.emplace_back(GaussianRational(q[0], q[1])); break;
      case Sfield::HQ: coords.emplace_back(Quaternion(q[0], q[1], q[2], q[3])); break;
    }
  }
  return Vector(f, std::move(coords));
}

ProjectiveAction::ProjectiveAction(Sfield f, const SfieldMorphism& sigma,
                                   const std::vector<Vector>& rows, std::size_t ncols)
    : field_(f), kind_(sigma.kind()), ncols_(ncols) {
  if (kind_ == SfieldMorphism::Kind::Inner) {
    const Quaternion& q = sigma.conjugator();
    IntRow c = clear_rows({{q.a, q.b, q.c, q.d}});
    q_ = c[0];
    q_conj_ = {q_[0], -q_[1], -q_[2], -q_[3]};
  }
  // One common denominator for the whole matrix keeps the map's scale uniform.
  std::vector<std::array<Rational, 4>> comps;
  for (const auto& row : rows)
    for (std::size_t j = 0; j < ncols; ++j) comps.push_back(components(row[j]));
  IntRow flat = clear_rows(comps);
  rows_.assign(rows.size(), IntRow(ncols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) rows_[i][j] = std::move(flat[i * ncols + j]);
}

// σ(x) up to the positive factor N(q) for inner automorphisms.
IntQuat ProjectiveAction::twist(const IntQuat& x) const {
  switch (kind_) {
    case SfieldMorphism::Kind::Identity: return x;
    case SfieldMorphism::Kind::Conjugation: return {x[0], -x[1], x[2], x[3]};
    case SfieldMorphism::Kind::Inner: return mul(field_, mul(field_, q_, x), q_conj_);
  }
  return x;
}

IntRow ProjectiveAction::apply(const IntRow& u) const {
  IntRow out(ncols_, IntQuat{0, 0, 0, 0});
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const IntQuat& x = u[i];
    if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0) continue;
    IntQuat s = twist(x);
    for (std::size_t j = 0; j < ncols_; ++j) mul_add(field_, out[j], s, rows_[i][j]);
  }
  return out;
}

}  // namespace olab::detail
