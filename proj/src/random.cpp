#include "olab/random.hpp"

#include "olab/errors.hpp"

namespace olab {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

namespace gen {

Rational rational(Rng& rng, int bound) {
  Rational r(rng.uniform(-bound, bound), rng.uniform(1, bound));
  r.canonicalize();
  return r;
}

Rational nonzero_rational(Rng& rng, int bound) {
  for (;;) {
    Rational r = rational(rng, bound);
    if (sgn(r) != 0) return r;
  }
}

Rational positive_rational(Rng& rng, int bound) {
  Rational r(rng.uniform(1, bound), rng.uniform(1, bound));
  r.canonicalize();
  return r;
}

Scalar scalar(Rng& rng, Sfield f, int bound) {
  switch (f) {
    case Sfield::Q: return Scalar(rational(rng, bound));
    case Sfield::Qi: {
      auto re = rational(rng, bound);
      return Scalar(GaussianRational(re, rational(rng, bound)));
    }
    case Sfield::HQ: {
      auto a = rational(rng, bound);
      auto b = rational(rng, bound);
      auto c = rational(rng, bound);
      return Scalar(Quaternion(a, b, c, rational(rng, bound)));
    }
  }
  return Scalar();
}

Scalar nonzero_scalar(Rng& rng, Sfield f, int bound) {
  for (;;) {
    Scalar s = scalar(rng, f, bound);
    if (!s.is_zero()) return s;
  }
}

Scalar integral_scalar(Rng& rng, Sfield f, int bound) {
  auto n = [&] { return Rational(rng.uniform(-bound, bound)); };
  switch (f) {
    case Sfield::Q: return Scalar(n());
    case Sfield::Qi: {
      auto re = n();
      return Scalar(GaussianRational(re, n()));
    }
    case Sfield::HQ: {
      auto a = n();
      auto b = n();
      auto c = n();
      return Scalar(Quaternion(a, b, c, n()));
    }
  }
  return Scalar();
}

Vector integral_vector(Rng& rng, const HermitianSpace& h, int bound) {
  for (;;) {
    Vector v = h.zero();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = integral_scalar(rng, h.sfield(), bound);
    if (!v.is_zero() || h.dim() == 0) return v;
  }
}

Scalar unit_scalar(Rng& rng, Sfield f) {
  if (f == Sfield::Q) return Scalar(Rational(rng.coin() ? 1 : -1));
  Scalar q = integral_scalar(rng, f, 2);
  while (q.is_zero()) q = integral_scalar(rng, f, 2);
  Rational n = q.to_quaternion().norm();
  return Scalar::from_rational(f, 1 / n) * q * q;
}

Vector vector(Rng& rng, const HermitianSpace& h, int bound) {
  Vector v = h.zero();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scalar(rng, h.sfield(), bound);
  return v;
}

Vector nonzero_vector(Rng& rng, const HermitianSpace& h, int bound) {
  if (h.dim() == 0) throw InputError("zero space has no nonzero vectors");
  for (;;) {
    Vector v = vector(rng, h, bound);
    if (!v.is_zero()) return v;
  }
}

HermitianSpace space(Rng& rng, Sfield f, std::size_t n) {
  for (;;) {
    Matrix g(n, std::vector<Scalar>(n, Scalar::zero(f)));
    for (std::size_t i = 0; i < n; ++i) {
      // Shifting the diagonal by n keeps rejections rare in higher dimensions.
      g[i][i] = Scalar::from_rational(f, positive_rational(rng, 10) + static_cast<long>(n));
      if (f == Sfield::HQ) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng.uniform(0, 2) == 0) continue;
        g[i][j] = scalar(rng, f, 2);
        g[j][i] = g[i][j].star();
      }
    }
    try {
      return HermitianSpace(f, std::move(g));
    } catch (const CertificateError&) {
    }
  }
}

HermitianSpace scaled_space(const HermitianSpace& h, const Rational& mu) {
  Matrix g = h.gram();
  Scalar m = Scalar::from_rational(h.sfield(), mu);
  for (auto& row : g)
    for (auto& x : row) x = m * x;
  return HermitianSpace(h.sfield(), std::move(g));
}

Subspace subspace(Rng& rng, const HermitianSpace& h, std::size_t k, int bound) {
  if (k > h.dim()) throw InputError("subspace dimension exceeds ambient dimension");
  for (;;) {
    std::vector<Vector> vs;
    for (std::size_t i = 0; i < k; ++i)
      vs.push_back(bound > 0 ? vector(rng, h, bound) : integral_vector(rng, h, -bound));
    Subspace s(h, vs);
    if (s.dim() == k) return s;
  }
}

SemilinearMap linear_map(Rng& rng, const HermitianSpace& h1, const HermitianSpace& h2) {
  std::vector<Vector> images;
  for (std::size_t i = 0; i < h1.dim(); ++i) images.push_back(vector(rng, h2, 5));
  return SemilinearMap::linear(h1, h2, std::move(images));
}

SemilinearMap invertible_map(Rng& rng, const HermitianSpace& h) {
  for (;;) {
    auto m = linear_map(rng, h, h);
    if (m.is_bijective()) return m;
  }
}

SemilinearMap unitary_map(Rng& rng, const HermitianSpace& h, int factors) {
  auto u = SemilinearMap::identity(h);
  if (h.dim() == 0) return u;
  for (int k = 0; k < factors; ++k) {
    Vector a = integral_vector(rng, h, 2);
    Scalar t_inv = herm_form(h, a, a).inverse();
    Scalar beta = Scalar::one(h.sfield()) - unit_scalar(rng, h.sfield());
    if (beta.is_zero()) continue;
    std::vector<Vector> images;
    for (std::size_t j = 0; j < h.dim(); ++j) {
      Vector e = h.unit(j);
      images.push_back(e - (herm_form(h, e, a) * t_inv * beta) * a);
    }
    u = compose(SemilinearMap::linear(h, h, std::move(images)), u);
  }
  return u;
}

SemilinearMap quasiunitary_map(Rng& rng, const HermitianSpace& h) {
  const Sfield f = h.sfield();
  HermitianSpace target = scaled_space(h, positive_rational(rng, 4));
  Scalar kappa = nonzero_scalar(rng, f, 3);
  SemilinearMap base = SemilinearMap::identity(h);
  if (f == Sfield::Qi && rng.coin()) {
    // Coordinatewise conjugation into the space with conjugated Gram matrix.
    Matrix g = target.gram();
    for (auto& row : g)
      for (auto& x : row) x = x.star();
    target = HermitianSpace(f, std::move(g));
    std::vector<Vector> images;
    for (std::size_t i = 0; i < h.dim(); ++i) images.push_back(target.unit(i));
    base = SemilinearMap(h, target, SfieldMorphism::conjugation(), std::move(images));
  } else {
    base = SemilinearMap::linear(h, target, SemilinearMap::identity(h).images());
  }
  return compose(unitary_map(rng, target), base).scaled(kappa);
}

PartialIsometryDescriptor partial_isometry(Rng& rng, const HermitianSpace& h, std::size_t k) {
  // Small entries keep the frame coordinates, and everything derived from
  // them, cheap to work with.
  Subspace s1 = subspace(rng, h, k, -2);
  auto u = unitary_map(rng, h, 1);
  std::vector<Vector> moved;
  for (const auto& b : s1.basis()) moved.push_back(u.apply(b));
  Subspace s2(h, moved);
  SubspaceFrame f1(s1);
  SubspaceFrame f2(s2);
  std::vector<Vector> core_images;
  for (const auto& e : f1.basis()) core_images.push_back(f2.coordinates(u.apply(e)));
  auto core = SemilinearMap::linear(f1.space(), f2.space(), std::move(core_images));
  return make_partial_isometry(s1, s2, core);
}

}  // namespace gen
}  // namespace olab
