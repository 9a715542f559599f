#include "olab/hermspace.hpp"

#include <nlohmann/json.hpp>

#include "olab/errors.hpp"

namespace olab {

namespace {

nlohmann::json scalar_list(std::span<const Scalar> xs) {
  auto out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

// Generators of F over Q, used to pin down antihomomorphisms.
std::vector<Scalar> generators(Sfield f) {
  switch (f) {
    case Sfield::Q: return {};
    case Sfield::Qi: return {Scalar(GaussianRational(0, 1))};
    case Sfield::HQ: return {Scalar(Quaternion::unit_i()), Scalar(Quaternion::unit_j())};
  }
  return {};
}

std::vector<Rational> certify(Sfield f, const Matrix& g) {
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].size() != n) throw InputError("gram matrix is not square");
    for (const auto& x : g[i])
      if (x.sfield() != f) throw InputError("gram entry outside the space's sfield");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!(g[j][i] == g[i][j].star()))
        throw CertificateError("gram matrix is not Hermitian at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");

  std::vector<Rational> cert;
  if (f == Sfield::HQ) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && !g[i][j].is_zero())
          throw CertificateError("quaternionic gram matrix must be diagonal");
      if (!g[i][i].is_rational() || sgn(g[i][i].rational_value()) <= 0)
        throw CertificateError("quaternionic gram diagonal entry " + std::to_string(i) +
                               " is not a positive rational");
      cert.push_back(g[i][i].rational_value());
    }
    return cert;
  }

  // Leading principal minors via Schur complements: minor_k = minor_{k-1}·pivot_k.
  Matrix s = g;
  Rational minor = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Scalar& p = s[k][k];
    if (!p.is_rational() || sgn(p.rational_value()) <= 0)
      throw CertificateError("leading principal minor " + std::to_string(k + 1) +
                             " is not positive");
    minor *= p.rational_value();
    cert.push_back(minor);
    Scalar pinv = p.inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s[i][k].is_zero()) continue;
      Scalar factor = s[i][k] * pinv;
      for (std::size_t j = k + 1; j < n; ++j) s[i][j] -= factor * s[k][j];
    }
  }
  return cert;
}

}  // namespace

HermitianSpace::HermitianSpace(Sfield f, Matrix gram) {
  auto cert = certify(f, gram);
  data_ = std::make_shared<const Data>(Data{f, gram.size(), std::move(gram), std::move(cert)});
}

HermitianSpace HermitianSpace::standard(Sfield f, std::size_t n) {
  Matrix g(n, std::vector<Scalar>(n, Scalar::zero(f)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = Scalar::one(f);
  return HermitianSpace(f, std::move(g));
}

HermitianSpace HermitianSpace::diagonal(Sfield f, std::span<const Rational> entries) {
  const std::size_t n = entries.size();
  Matrix g(n, std::vector<Scalar>(n, Scalar::zero(f)));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = Scalar::from_rational(f, entries[i]);
  return HermitianSpace(f, std::move(g));
}

Vector HermitianSpace::vector(std::vector<Scalar> coords) const {
  Vector v(sfield(), std::move(coords));
  check(v);
  return v;
}

void HermitianSpace::check(const Vector& u) const {
  if (u.sfield() != sfield() || u.size() != dim())
    throw InputError("vector " + u.to_string() + " does not belong to a " +
                     std::string(sfield_name(sfield())) + "^" + std::to_string(dim()) +
                     " space");
}

Scalar herm_form(const HermitianSpace& h, const Vector& u, const Vector& v) {
  h.check(u);
  h.check(v);
  const std::size_t n = h.dim();
  Scalar total = Scalar::zero(h.sfield());
  std::vector<Scalar> vstar(n);
  for (std::size_t j = 0; j < n; ++j) vstar[j] = v[j].star();
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].is_zero()) continue;
    Scalar row = Scalar::zero(h.sfield());
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& gij = h.gram(i, j);
      if (gij.is_zero() || vstar[j].is_zero()) continue;
      row += gij * vstar[j];
    }
    total += u[i] * row;
  }
  return total;
}

std::vector<Vector> gram_schmidt(const HermitianSpace& h, std::span<const Vector> basis) {
  const Sfield f = h.sfield();
  std::vector<Vector> out;
  std::vector<Scalar> norms;
  // transforms[k]: coefficients expressing out[k] in the input vectors.
  std::vector<Vector> transforms;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    h.check(basis[k]);
    Vector e = basis[k];
    Vector t = Vector::unit(f, basis.size(), k);
    for (std::size_t i = 0; i < out.size(); ++i) {
      Scalar c = herm_form(h, basis[k], out[i]) * norms[i].inverse();
      if (c.is_zero()) continue;
      e = e - c * out[i];
      t = t - c * transforms[i];
    }
    if (e.is_zero())
      throw DependencyError("gram_schmidt: input vectors are linearly dependent",
                            {{"coefficients", scalar_list(t.coords())}});
    norms.push_back(herm_form(h, e, e));
    out.push_back(std::move(e));
    transforms.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subspaces

Subspace::Subspace(HermitianSpace h, std::span<const Vector> spanning) : space_(std::move(h)) {
  for (const auto& v : spanning) space_.check(v);
  basis_ = reduce_rows(space_.sfield(), space_.dim(), spanning).rows;
}

Subspace Subspace::full(const HermitianSpace& h) {
  std::vector<Vector> units;
  for (std::size_t i = 0; i < h.dim(); ++i) units.push_back(h.unit(i));
  return Subspace(h, units);
}

bool Subspace::contains(const Vector& u) const {
  space_.check(u);
  Vector rest = u;
  for (const auto& row : basis_) {
    const Scalar a = rest[row.leading_index()];
    if (!a.is_zero()) rest = rest - a * row;
  }
  return rest.is_zero();
}

std::vector<Vector> Subspace::orthogonal_basis() const { return gram_schmidt(space_, basis_); }

Subspace orthocomplement(const Subspace& s) {
  const HermitianSpace& h = s.space();
  const std::size_t n = h.dim();
  const std::size_t k = s.dim();
  // Row i holds the i-th entries of the columns G·v∗, one per basis vector v;
  // u·rows = 0 means ⟨u,v⟩ = 0 for every basis vector.
  std::vector<Vector> rows(n, Vector(h.sfield(), k));
  for (std::size_t c = 0; c < k; ++c) {
    const Vector& v = s.basis()[c];
    for (std::size_t i = 0; i < n; ++i) {
      Scalar acc = Scalar::zero(h.sfield());
      for (std::size_t j = 0; j < n; ++j) acc += h.gram(i, j) * v[j].star();
      rows[i][c] = acc;
    }
  }
  return Subspace(h, left_null_space(h.sfield(), k, rows));
}

Projection project(const Subspace& s, const Vector& u) {
  const HermitianSpace& h = s.space();
  h.check(u);
  Vector us = h.zero();
  for (const auto& e : s.orthogonal_basis()) {
    Scalar c = herm_form(h, u, e) * herm_form(h, e, e).inverse();
    if (!c.is_zero()) us += c * e;
  }
  return {us, u - us};
}

Vector dual_representative(const HermitianSpace& h, const Vector& rho) {
  h.check(rho);
  if (rho.is_zero()) return h.zero();
  const Sfield f = h.sfield();
  std::vector<Vector> column;
  for (std::size_t i = 0; i < h.dim(); ++i) column.emplace_back(f, std::vector<Scalar>{rho[i]});
  Subspace kernel(h, left_null_space(f, 1, column));
  Subspace normal = orthocomplement(kernel);
  const Vector& y = normal.basis().front();
  auto apply_rho = [&](const Vector& u) {
    Scalar acc = Scalar::zero(f);
    for (std::size_t i = 0; i < h.dim(); ++i) acc += u[i] * rho[i];
    return acc;
  };
  Vector x = apply_rho(y).inverse() * y;
  return herm_form(h, x, x).inverse() * x;
}

// ---------------------------------------------------------------------------
// Frames

namespace {
HermitianSpace frame_space_of(const HermitianSpace& h, const std::vector<Vector>& basis) {
  const std::size_t k = basis.size();
  Matrix g(k, std::vector<Scalar>(k, Scalar::zero(h.sfield())));
  for (std::size_t i = 0; i < k; ++i) g[i][i] = herm_form(h, basis[i], basis[i]);
  return HermitianSpace(h.sfield(), std::move(g));
}
}  // namespace

SubspaceFrame::SubspaceFrame(const Subspace& s)
    : subspace_(s),
      basis_(s.orthogonal_basis()),
      frame_space_(frame_space_of(s.space(), basis_)) {}

Vector SubspaceFrame::coordinates(const Vector& u) const {
  const HermitianSpace& h = subspace_.space();
  Vector c = frame_space_.zero();
  for (std::size_t i = 0; i < basis_.size(); ++i)
    c[i] = herm_form(h, u, basis_[i]) * frame_space_.gram(i, i).inverse();
  return c;
}

Vector SubspaceFrame::embed(const Vector& c) const {
  frame_space_.check(c);
  Vector u = subspace_.space().zero();
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (!c[i].is_zero()) u += c[i] * basis_[i];
  return u;
}

// ---------------------------------------------------------------------------
// Semilinear maps

SemilinearMap::SemilinearMap(HermitianSpace domain, HermitianSpace codomain, SfieldMorphism sigma,
                             std::vector<Vector> images)
    : domain_(std::move(domain)),
      codomain_(std::move(codomain)),
      sigma_(std::move(sigma)),
      images_(std::move(images)) {
  if (sigma_.source() != domain_.sfield() || sigma_.target() != codomain_.sfield())
    throw InputError("sfield morphism " + sigma_.to_string() +
                     " does not match the map's domain and codomain");
  if (images_.size() != domain_.dim())
    throw InputError("map has " + std::to_string(images_.size()) + " basis images, domain has " +
                     "dimension " + std::to_string(domain_.dim()));
  for (const auto& v : images_) codomain_.check(v);
}

SemilinearMap SemilinearMap::identity(const HermitianSpace& h) {
  std::vector<Vector> images;
  for (std::size_t i = 0; i < h.dim(); ++i) images.push_back(h.unit(i));
  return linear(h, h, std::move(images));
}

SemilinearMap SemilinearMap::zero(const HermitianSpace& domain, const HermitianSpace& codomain) {
  return linear(domain, codomain, std::vector<Vector>(domain.dim(), codomain.zero()));
}

SemilinearMap SemilinearMap::linear(HermitianSpace domain, HermitianSpace codomain,
                                    std::vector<Vector> images) {
  auto sigma = SfieldMorphism::identity(domain.sfield());
  return SemilinearMap(std::move(domain), std::move(codomain), sigma, std::move(images));
}

Vector SemilinearMap::apply(const Vector& u) const {
  domain_.check(u);
  Vector out = codomain_.zero();
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (!u[i].is_zero()) out += sigma_.apply(u[i]) * images_[i];
  return out;
}

std::size_t SemilinearMap::rank() const {
  return row_rank(codomain_.sfield(), codomain_.dim(), images_);
}

bool SemilinearMap::is_bijective() const {
  return domain_.dim() == codomain_.dim() && rank() == domain_.dim();
}

Subspace SemilinearMap::kernel() const {
  auto sigma_inv = sigma_.inverse();
  std::vector<Vector> basis;
  for (const auto& c : left_null_space(codomain_.sfield(), codomain_.dim(), images_)) {
    Vector u = domain_.zero();
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = sigma_inv.apply(c[i]);
    basis.push_back(std::move(u));
  }
  return Subspace(domain_, basis);
}

Subspace SemilinearMap::image() const { return Subspace(codomain_, images_); }

SemilinearMap SemilinearMap::scaled(const Scalar& kappa) const {
  std::vector<Vector> images;
  for (const auto& v : images_) images.push_back(kappa * v);
  return SemilinearMap(domain_, codomain_, compose_morphisms(inner_for(kappa), sigma_),
                       std::move(images));
}

SemilinearMap SemilinearMap::inverse() const {
  if (!is_bijective()) throw InputError("map is not bijective");
  auto c = left_inverse(codomain_.sfield(), images_);
  auto sigma_inv = sigma_.inverse();
  std::vector<Vector> images;
  for (const auto& row : *c) {
    Vector u = domain_.zero();
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = sigma_inv.apply(row[i]);
    images.push_back(std::move(u));
  }
  return SemilinearMap(codomain_, domain_, sigma_inv, std::move(images));
}

SemilinearMap compose(const SemilinearMap& outer, const SemilinearMap& inner) {
  if (!(inner.codomain() == outer.domain())) throw InputError("maps are not composable");
  std::vector<Vector> images;
  for (const auto& v : inner.images()) images.push_back(outer.apply(v));
  return SemilinearMap(inner.domain(), outer.codomain(),
                       compose_morphisms(outer.sigma(), inner.sigma()), std::move(images));
}

SemilinearMap adjoint_linear(const SemilinearMap& phi) {
  if (!phi.is_linear()) throw InputError("adjoint_linear requires a linear map");
  const HermitianSpace& h1 = phi.domain();
  const HermitianSpace& h2 = phi.codomain();
  std::vector<Vector> images;
  for (std::size_t j = 0; j < h2.dim(); ++j) {
    Vector rho = h1.zero();
    for (std::size_t i = 0; i < h1.dim(); ++i) rho[i] = herm_form(h2, phi.images()[i], h2.unit(j));
    images.push_back(dual_representative(h1, rho));
  }
  return SemilinearMap::linear(h2, h1, std::move(images));
}

bool satisfies_form_relation(const SemilinearMap& phi, const Scalar& lambda) {
  const HermitianSpace& h1 = phi.domain();
  const HermitianSpace& h2 = phi.codomain();
  const auto& sigma = phi.sigma();
  const auto& img = phi.images();
  for (std::size_t i = 0; i < h1.dim(); ++i)
    for (std::size_t j = 0; j < h1.dim(); ++j)
      if (!(herm_form(h2, img[i], img[j]) == sigma.apply(h1.gram(i, j)) * lambda)) return false;
  if (h1.dim() == 0) return true;
  for (const auto& g : generators(h1.sfield()))
    if (!(lambda * sigma.apply(g).star() == sigma.apply(g.star()) * lambda)) return false;
  return true;
}

std::optional<QuasiunitaryCertificate> is_quasiunitary(const SemilinearMap& phi) {
  if (!phi.is_bijective()) throw InputError("is_quasiunitary requires a bijective map");
  const HermitianSpace& h1 = phi.domain();
  if (h1.dim() == 0) return QuasiunitaryCertificate{phi.sigma(), Scalar::one(h1.sfield())};
  const auto& e0 = phi.images().front();
  Scalar lambda = phi.sigma().apply(h1.gram(0, 0)).inverse() * herm_form(phi.codomain(), e0, e0);
  if (lambda.is_zero() || !satisfies_form_relation(phi, lambda)) return std::nullopt;
  return QuasiunitaryCertificate{phi.sigma(), lambda};
}

// ---------------------------------------------------------------------------
// Partial isometries

SemilinearMap frame_projection(const SubspaceFrame& frame) {
  const HermitianSpace& h = frame.subspace().space();
  std::vector<Vector> images;
  for (std::size_t j = 0; j < h.dim(); ++j) images.push_back(frame.coordinates(h.unit(j)));
  return SemilinearMap::linear(h, frame.space(), std::move(images));
}

SemilinearMap frame_inclusion(const SubspaceFrame& frame) {
  return SemilinearMap::linear(frame.space(), frame.subspace().space(), frame.basis());
}

PartialIsometryDescriptor make_partial_isometry(const Subspace& s1, const Subspace& s2,
                                                const SemilinearMap& core) {
  if (s1.dim() != s2.dim())
    throw InputError("partial isometry subspaces differ in dimension: " +
                     std::to_string(s1.dim()) + " vs " + std::to_string(s2.dim()));
  SubspaceFrame f1(s1);
  SubspaceFrame f2(s2);
  if (!(core.domain() == f1.space()) || !(core.codomain() == f2.space()))
    throw InputError("core must act between the frames of s1 and s2");
  auto cert = is_quasiunitary(core);
  if (!cert) throw InputError("core map is not quasiunitary");
  auto map = compose(frame_inclusion(f2), compose(core, frame_projection(f1)));
  return PartialIsometryDescriptor{std::move(map), s1, s2, core, std::move(*cert)};
}

SemilinearMap generalized_inverse(const PartialIsometryDescriptor& d) {
  if (!d.is_isometry())
    throw UnsupportedVariant("generalized_inverse needs a unitary core; transport the "
                             "partial quasiisometry first");
  SubspaceFrame f1(d.s1);
  SubspaceFrame f2(d.s2);
  return compose(frame_inclusion(f1), compose(d.core.inverse(), frame_projection(f2)));
}

}  // namespace olab
