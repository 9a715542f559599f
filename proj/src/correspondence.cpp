#include "olab/correspondence.hpp"

#include <mutex>
#include <string>
#include <unordered_map>

#include "olab/errors.hpp"
#include "olab/io.hpp"
#include "olab/parallel.hpp"
#include "integral.hpp"
#include "perp_kernel.hpp"

namespace olab {

namespace {

std::vector<Scalar> generators(Sfield f) {
  switch (f) {
    case Sfield::Q: return {};
    case Sfield::Qi: return {Scalar(GaussianRational(0, 1))};
    case Sfield::HQ: return {Scalar(Quaternion::unit_i()), Scalar(Quaternion::unit_j())};
  }
  return {};
}

std::vector<Vector> standard_basis(const HermitianSpace& h) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < h.dim(); ++i) out.push_back(h.unit(i));
  return out;
}

// Coefficients (a, b) with r = a·p + b·q, both nonzero.
std::optional<std::pair<Scalar, Scalar>> split(const HermitianSpace& h, const Vector& p,
                                               const Vector& q, const Vector& r) {
  std::vector<Vector> rows{p, q};
  auto c = left_solve(h.sfield(), h.dim(), rows, r);
  if (!c || (*c)[0].is_zero() || (*c)[1].is_zero()) return std::nullopt;
  return std::make_pair((*c)[0], (*c)[1]);
}

// The automorphism of f taking each generator g to images[g], if it is in the zoo.
std::optional<SfieldMorphism> classify(Sfield f, const std::vector<Scalar>& gens,
                                       const std::vector<Scalar>& images) {
  switch (f) {
    case Sfield::Q: return SfieldMorphism::identity(f);
    case Sfield::Qi:
      if (images[0] == gens[0]) return SfieldMorphism::identity(f);
      if (images[0] == -gens[0]) return SfieldMorphism::conjugation();
      return std::nullopt;
    case Sfield::HQ: {
      // q·g = s_g·q for both generators: a Q-linear system in q's components.
      const Quaternion basis[4] = {Quaternion::real(1), Quaternion::unit_i(), Quaternion::unit_j(),
                                   Quaternion::unit_k()};
      std::vector<Vector> rows;
      for (const auto& b : basis) {
        std::vector<Scalar> row;
        for (std::size_t g = 0; g < gens.size(); ++g) {
          Quaternion d = b * gens[g].as_quaternion() - images[g].as_quaternion() * b;
          for (const Rational* comp : {&d.a, &d.b, &d.c, &d.d}) row.emplace_back(*comp);
        }
        rows.emplace_back(Sfield::Q, std::move(row));
      }
      auto null = left_null_space(Sfield::Q, 4 * gens.size(), rows);
      if (null.empty()) return std::nullopt;
      const Vector& v = null.front();
      auto sigma = SfieldMorphism::inner(Quaternion(v[0].as_rational(), v[1].as_rational(),
                                                    v[2].as_rational(), v[3].as_rational()));
      for (std::size_t g = 0; g < gens.size(); ++g)
        if (!(sigma.apply(gens[g]) == images[g])) return std::nullopt;
      return sigma;
    }
  }
  return std::nullopt;
}

// First probe pair (x ⊥ y) whose images are not orthogonal.
std::optional<std::pair<Ray, Ray>> orthogonality_violation(const RayMap& f, const ProbeSet& probes) {
  const auto& xs = probes.rays;
  auto fx = map_probes(f, xs);
  detail::PerpKernel k1(f.domain());
  detail::PerpKernel k2(f.codomain());
  std::vector<detail::ResidueRow> l1(xs.size()), r1(xs.size()), l2(xs.size()), r2(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    l1[i] = k1.left(xs[i]);
    r1[i] = k1.right(xs[i]);
    l2[i] = k2.left(fx[i]);
    r2[i] = k2.right(fx[i]);
  });
  std::vector<std::optional<std::size_t>> bad(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < xs.size(); ++j)
      if (k1.perp(xs[i], l1[i], xs[j], r1[j]) && !k2.perp(fx[i], l2[i], fx[j], r2[j])) {
        bad[i] = j;
        return;
      }
  });
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (bad[i]) return std::make_pair(xs[i], xs[*bad[i]]);
  return std::nullopt;
}

void require_same_sfield(const RayMap& f) {
  if (f.domain().sfield() != f.codomain().sfield())
    throw NotInducedError("no sfield isomorphism between " +
                          std::string(sfield_name(f.domain().sfield())) + " and " +
                          std::string(sfield_name(f.codomain().sfield())) + " is represented");
}

// Shared transport: Gram σ⁻¹(Gᵢⱼ·λ⁻¹), involution α ↦ μ·σ⁻¹(σ(α)∗)·μ⁻¹.
TransportResult transport(const SemilinearMap& phi, const Scalar& lambda, ProbeSpec probes) {
  const HermitianSpace& h2 = phi.codomain();
  const SfieldMorphism sigma = phi.sigma();
  const SfieldMorphism sigma_inv = sigma.inverse();
  const Sfield f1 = phi.domain().sfield();
  if (!(lambda.star() == lambda))
    throw TransportDegeneracy("λ is not Hermitian", {{"lambda", io::to_json(lambda)}});
  const Scalar lambda_inv = lambda.inverse();
  const Scalar mu = sigma_inv.apply(lambda);

  Matrix g(h2.dim(), std::vector<Scalar>(h2.dim(), Scalar::zero(f1)));
  for (std::size_t i = 0; i < h2.dim(); ++i)
    for (std::size_t j = 0; j < h2.dim(); ++j) g[i][j] = sigma_inv.apply(h2.gram(i, j) * lambda_inv);

  auto star = [&](const Scalar& a) { return mu * sigma_inv.apply(sigma.apply(a).star()) * mu.inverse(); };

  Report report;
  bool hermitian = true;
  for (std::size_t i = 0; i < g.size() && hermitian; ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (!(g[j][i] == star(g[i][j]))) {
        hermitian = false;
        report.fail("transport/hermitian", {{"i", i}, {"j", j}});
        break;
      }
  if (hermitian) report.pass("transport/hermitian");

  // H₂' is stored as an ordinary space, so its involution must be the standard one.
  for (const auto& gen : generators(f1))
    if (!(star(gen) == gen.star()))
      throw TransportDegeneracy("transported involution differs from the standard one",
                                {{"generator", io::to_json(gen)}, {"image", io::to_json(star(gen))}});

  std::optional<HermitianSpace> h2p;
  try {
    h2p.emplace(f1, std::move(g));
  } catch (const CertificateError& e) {
    throw TransportDegeneracy(std::string("transported form fails its certificate: ") + e.what());
  }

  std::vector<Vector> tau_images;
  for (std::size_t j = 0; j < h2.dim(); ++j) tau_images.push_back(h2p->unit(j));
  SemilinearMap tau(h2, *h2p, sigma_inv, std::move(tau_images));
  SemilinearMap composed = compose(tau, phi);
  if (composed.is_linear())
    report.pass("transport/linear");
  else
    report.fail("transport/linear", {{"sigma", io::to_json(composed.sigma())}});

  auto p2 = ProbeSet::generate(h2, probes);
  auto p2p = ProbeSet::generate(*h2p, probes);
  auto iso = verify_adjoint_pair(induce(tau), induce(tau.inverse()), p2, p2p);
  iso.prefix("transport/tau-orthoiso");
  report.merge(iso);

  return TransportResult{*h2p, std::move(tau), std::move(composed), sigma, mu, std::move(report)};
}

}  // namespace

RayMap induce(const SemilinearMap& phi) { return RayMap::induced(phi); }

std::optional<Scalar> scalar_ratio(const SemilinearMap& psi, const SemilinearMap& phi) {
  if (!(psi.domain() == phi.domain()) || !(psi.codomain() == phi.codomain()))
    throw InputError("scalar_ratio: maps have different domains or codomains");
  if (phi.rank() < 2) throw PreconditionError("scalar_ratio needs a map of rank >= 2");
  std::optional<Scalar> kappa;
  for (std::size_t i = 0; i < phi.images().size() && !kappa; ++i) {
    const Vector& v = phi.images()[i];
    const std::size_t lead = v.leading_index();
    if (lead == v.size()) continue;
    kappa = psi.images()[i][lead] * v[lead].inverse();
  }
  if (!kappa || kappa->is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < phi.images().size(); ++i)
    if (!(psi.images()[i] == *kappa * phi.images()[i])) return std::nullopt;
  if (!(psi.sigma() == compose_morphisms(inner_for(*kappa), phi.sigma()))) return std::nullopt;
  return kappa;
}

Scalar piziak_lambda(const SemilinearMap& phi, ProbeSpec probes) {
  const HermitianSpace& h1 = phi.domain();
  const HermitianSpace& h2 = phi.codomain();
  if (h1.dim() < 2) throw PreconditionError("piziak_lambda needs a domain of dimension >= 2");

  auto ortho = gram_schmidt(h1, standard_basis(h1));
  for (std::size_t i = 0; i < ortho.size(); ++i)
    for (std::size_t j = 0; j < ortho.size(); ++j) {
      if (i == j) continue;
      if (!herm_form(h2, phi.apply(ortho[i]), phi.apply(ortho[j])).is_zero())
        throw NotOrthogonalityPreserving(
            "orthogonal basis vectors with non-orthogonal images",
            {{"u", io::to_json(ortho[i])}, {"v", io::to_json(ortho[j])}});
    }
  if (auto bad = orthogonality_violation(induce(phi), ProbeSet::generate(h1, probes)))
    throw NotOrthogonalityPreserving("orthogonal probe pair with non-orthogonal images",
                                     {{"x", io::rep_json(bad->first)}, {"y", io::rep_json(bad->second)}});

  std::vector<Vector> vs = standard_basis(h1);
  vs.insert(vs.end(), ortho.begin(), ortho.end());
  std::optional<Scalar> lambda;
  for (const auto& v : vs) {
    // w = ⟨e_k,v⟩⁻¹·e_k for the first basis vector not orthogonal to v.
    std::optional<Vector> w;
    for (std::size_t k = 0; k < h1.dim() && !w; ++k) {
      Scalar c = herm_form(h1, h1.unit(k), v);
      if (!c.is_zero()) w = c.inverse() * h1.unit(k);
    }
    Scalar lambda_v = herm_form(h2, phi.apply(*w), phi.apply(v));
    if (!lambda)
      lambda = lambda_v;
    else if (!(lambda_v == *lambda))
      throw InconsistencyError("Piziak factors differ between basis vectors",
                               {{"v", io::to_json(v)},
                                {"lambda_v", io::to_json(lambda_v)},
                                {"lambda", io::to_json(*lambda)}});
  }
  if (!satisfies_form_relation(phi, *lambda))
    throw InconsistencyError("form relation fails for the common Piziak factor",
                             {{"lambda", io::to_json(*lambda)}, {"sigma", io::to_json(phi.sigma())}});
  if (phi.is_bijective() && !(lambda->star() == *lambda))
    throw InconsistencyError("Piziak factor of a bijective map is not Hermitian",
                             {{"lambda", io::to_json(*lambda)}});
  return *lambda;
}

Scalar TransportResult::transported_star(const Scalar& alpha) const {
  return mu * sigma.inverse().apply(sigma.apply(alpha).star()) * mu.inverse();
}

TransportResult transport_linear(const SemilinearMap& phi, ProbeSpec probes) {
  return transport(phi, Scalar::one(phi.codomain().sfield()), probes);
}

TransportResult transport_unitary(const SemilinearMap& phi, const QuasiunitaryCertificate& cert,
                                  ProbeSpec probes) {
  if (!(cert.sigma == phi.sigma()) || cert.lambda.is_zero() ||
      !satisfies_form_relation(phi, cert.lambda))
    throw InputError("transport_unitary: certificate does not match the map");
  auto result = transport(phi, cert.lambda, probes);
  auto check = is_quasiunitary(result.composed);
  if (check && check->sigma.is_identity() && check->lambda.is_one())
    result.report.pass("transport/unitary");
  else
    result.report.fail("transport/unitary", {{"composed", io::to_json(result.composed)}});
  return result;
}

// ---------------------------------------------------------------------------

namespace {

CoordinatizationResult coordinatize_impl(const RayMap& f, const std::optional<RayMap>& adjoint,
                                         ProbeSpec spec, bool verify_adjoint) {
  require_same_sfield(f);
  const HermitianSpace& h1 = f.domain();
  const HermitianSpace& h2 = f.codomain();
  const Sfield fld = h1.sfield();
  auto probes1 = ProbeSet::generate(h1, spec);
  Report report;

  Subspace k(h1);
  if (adjoint) {
    auto probes2 = ProbeSet::generate(h2, spec);
    if (verify_adjoint) {
      auto pair = verify_adjoint_pair(f, *adjoint, probes1, probes2);
      if (!pair.ok())
        throw PreconditionError("claimed adjoint fails on probes", pair.first_failure()->witness);
      report.merge(pair);
    }
    k = perp_closure(h1, map_probes(*adjoint, probes2.rays));
  } else {
    auto images = map_probes(f, probes1.rays);
    std::vector<Ray> zeros;
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i].is_zero()) zeros.push_back(probes1.rays[i]);
    k = orthocomplement(perp_closure(h1, zeros));
  }
  if (k.dim() < 3)
    throw PreconditionError("coordinatize needs rank >= 3, found " + std::to_string(k.dim()));

  auto u = k.orthogonal_basis();
  auto value = [&](const Vector& v) {
    Ray r = f(ray_of(h1, v));
    if (r.is_zero())
      throw NotInducedError("f kills a vector of (ker f)⊥", {{"x", io::rep_json(ray_of(h1, v))}});
    return r.rep();
  };

  std::vector<Vector> phi_u{value(u[0])};
  for (std::size_t i = 1; i < u.size(); ++i) {
    Vector w = value(u[i]);
    Vector r = value(u[0] + u[i]);
    auto ab = split(h2, phi_u[0], w, r);
    if (!ab)
      throw NotInducedError("f(<u1+ui>) is not a proper combination of f(<u1>) and f(<ui>)",
                            {{"x", io::rep_json(ray_of(h1, u[0] + u[i]))}});
    phi_u.push_back(ab->first.inverse() * ab->second * w);
  }

  auto gens = generators(fld);
  std::vector<Scalar> gen_images;
  for (const auto& g : gens) {
    Vector r = value(u[0] + g * u[1]);
    auto ab = split(h2, phi_u[0], phi_u[1], r);
    if (!ab)
      throw NotInducedError("cannot read off the sfield morphism on a generator",
                            {{"generator", io::to_json(g)}});
    gen_images.push_back(ab->first.inverse() * ab->second);
  }
  auto sigma = classify(fld, gens, gen_images);
  if (!sigma) {
    nlohmann::json w = nlohmann::json::array();
    for (std::size_t g = 0; g < gens.size(); ++g)
      w.push_back({{"generator", io::to_json(gens[g])}, {"image", io::to_json(gen_images[g])}});
    throw NotInducedError("generator images do not define a represented automorphism", w);
  }

  // e_j = Σ cⱼᵢ·uᵢ + (component in K⊥), so φ(e_j) = Σ σ(cⱼᵢ)·φ(uᵢ).
  std::vector<Vector> images;
  for (std::size_t j = 0; j < h1.dim(); ++j) {
    Vector img = h2.zero();
    for (std::size_t i = 0; i < u.size(); ++i) {
      Scalar c = herm_form(h1, h1.unit(j), u[i]) * herm_form(h1, u[i], u[i]).inverse();
      if (!c.is_zero()) img += sigma->apply(c) * phi_u[i];
    }
    images.push_back(std::move(img));
  }
  SemilinearMap phi(h1, h2, *sigma, std::move(images));
  // Any nonzero multiple induces f; pick the one whose first nonzero image
  // has leading coordinate 1, which keeps entries small.
  for (const auto& img : phi.images()) {
    const std::size_t lead = img.leading_index();
    if (lead == img.size()) continue;
    if (!img[lead].is_one()) {
      phi = phi.scaled(img[lead].inverse());
      sigma = phi.sigma();
    }
    break;
  }

  auto mine = map_probes(induce(phi), probes1.rays);
  auto theirs = map_probes(f, probes1.rays);
  for (std::size_t i = 0; i < mine.size(); ++i)
    if (!(mine[i] == theirs[i]))
      throw NotInducedError("reconstructed map disagrees with f on a probe",
                            {{"x", io::rep_json(probes1.rays[i])},
                             {"f(x)", io::rep_json(theirs[i])},
                             {"P(phi)(x)", io::rep_json(mine[i])}});
  report.pass("coordinatize/probe-agreement", {{"probes", mine.size()}, {"rank", k.dim()}});
  return CoordinatizationResult{std::move(phi), *sigma, std::move(report)};
}

}  // namespace

CoordinatizationResult coordinatize(const RayMap& f, const std::optional<RayMap>& adjoint,
                                    ProbeSpec probes) {
  return coordinatize_impl(f, adjoint, probes, true);
}

WignerResult wigner_reconstruct(const RayMap& f, const RayMap& f_inverse, ProbeSpec spec) {
  const HermitianSpace& h1 = f.domain();
  const HermitianSpace& h2 = f.codomain();
  if (h1.dim() < 3 || h2.dim() < 3)
    throw PreconditionError("wigner_reconstruct needs spaces of dimension >= 3");
  auto p1 = ProbeSet::generate(h1, spec);
  auto p2 = ProbeSet::generate(h2, spec);
  auto pair = verify_adjoint_pair(f, f_inverse, p1, p2);
  if (!pair.ok())
    throw NotOrthoisoError("f and its inverse do not form an adjoint pair",
                           pair.first_failure()->witness);
  auto fx = map_probes(f, p1.rays);
  auto back = map_probes(f_inverse, fx);
  for (std::size_t i = 0; i < back.size(); ++i)
    if (!(back[i] == p1.rays[i]))
      throw NotOrthoisoError("f_inverse does not invert f", {{"x", io::rep_json(p1.rays[i])}});
  auto gy = map_probes(f_inverse, p2.rays);
  auto forth = map_probes(f, gy);
  for (std::size_t j = 0; j < forth.size(); ++j)
    if (!(forth[j] == p2.rays[j]))
      throw NotOrthoisoError("f does not invert f_inverse", {{"y", io::rep_json(p2.rays[j])}});
  require_same_sfield(f);

  auto coord = coordinatize_impl(f, f_inverse, spec, false);
  coord.verified.merge(pair);
  Scalar lambda = piziak_lambda(coord.map, spec);
  auto cert = is_quasiunitary(coord.map);
  if (!cert || !(cert->lambda == lambda))
    throw NotOrthoisoError("reconstructed map is not quasiunitary",
                           {{"map", io::to_json(coord.map)}});
  coord.verified.pass("wigner/quasiunitary",
                      {{"sigma", io::to_json(cert->sigma)}, {"lambda", io::to_json(cert->lambda)}});
  return WignerResult{std::move(coord), std::move(*cert)};
}

SemilinearMap fix_subspace_normalize(const RayMap& f, const RayMap& f_inverse, const Subspace& s,
                                     ProbeSpec spec) {
  if (f.domain().dim() < 3) throw PreconditionError("fix_subspace_normalize needs dim H >= 3");
  if (s.dim() < 2) throw PreconditionError("fix_subspace_normalize needs dim S >= 2");
  if (!(s.space() == f.domain()) || !(f.domain() == f.codomain()))
    throw InputError("fix_subspace_normalize expects an automorphism of P(S's space)");
  auto inside = ProbeSet::within(s, spec);
  for (const auto& x : inside.rays)
    if (!(f(x) == x))
      throw PreconditionError("f does not fix P(S) pointwise", {{"x", io::rep_json(x)}});

  auto psi = wigner_reconstruct(f, f_inverse, spec).coordinatization.map;
  const Vector& s0 = s.basis().front();
  const std::size_t lead = s0.leading_index();
  Scalar kappa = psi.apply(s0)[lead] * s0[lead].inverse();
  for (const auto& b : s.basis())
    if (!(psi.apply(b) == kappa * b))
      throw InconsistencyError("restriction to S is not a scalar multiple of the identity",
                               {{"s", io::to_json(b)}, {"kappa", io::to_json(kappa)}});
  if (!(psi.sigma() == inner_for(kappa)))
    throw InconsistencyError("inconsistent fixed subspace: σ is not inner(κ)",
                             {{"sigma", io::to_json(psi.sigma())}, {"kappa", io::to_json(kappa)}});
  SemilinearMap phi = psi.scaled(kappa.inverse());
  auto cert = is_quasiunitary(phi);
  if (!cert || !cert->sigma.is_identity() || !cert->lambda.is_one())
    throw InconsistencyError("normalized map is not unitary", {{"map", io::to_json(phi)}});
  return phi;
}

// ---------------------------------------------------------------------------

namespace {

// The core oracles are queried repeatedly on the same probes, and each query
// projects through large frame coordinates, so answers are cached.
struct RayCache {
  std::mutex lock;
  std::unordered_map<std::string, Ray> answers;
};

// Frame embedding and frame coordinates as ray-level actions.
struct FrameActions {
  std::shared_ptr<const detail::ProjectiveAction> embed;
  std::shared_ptr<const detail::ProjectiveAction> coordinates;
};

FrameActions frame_actions(const SubspaceFrame& frame) {
  const HermitianSpace& h = frame.subspace().space();
  const Sfield f = h.sfield();
  const auto& basis = frame.basis();
  // coordinates(u)_k = ⟨u,e_k⟩·⟨e_k,e_k⟩⁻¹, so row j holds ⟨e_j,e_k⟩·⟨e_k,e_k⟩⁻¹.
  std::vector<Vector> rows;
  for (std::size_t j = 0; j < h.dim(); ++j) {
    std::vector<Scalar> row;
    for (const auto& e : basis) row.push_back(herm_form(h, h.unit(j), e) * herm_form(h, e, e).inverse());
    rows.emplace_back(f, std::move(row));
  }
  auto id = SfieldMorphism::identity(f);
  return {std::make_shared<const detail::ProjectiveAction>(f, id, basis, h.dim()),
          std::make_shared<const detail::ProjectiveAction>(f, id, rows, basis.size())};
}

Ray act(const detail::ProjectiveAction& a, const HermitianSpace& target, const Ray& x) {
  if (x.is_zero()) return Ray::zero(target);
  return ray_of(target, detail::normalized(target.sfield(), a.apply(detail::clear_denominators(x.rep()))));
}

RayMap frame_restriction(const RayMap& f, const SubspaceFrame& from, const SubspaceFrame& to) {
  auto cache = std::make_shared<RayCache>();
  auto in = frame_actions(from).embed;
  auto out_coords = frame_actions(to).coordinates;
  return RayMap::oracle(from.space(), to.space(), [f, from, to, cache, in, out_coords](const Ray& c) {
    if (c.is_zero()) return Ray::zero(to.space());
    std::string key = c.rep().to_string();
    {
      std::lock_guard guard(cache->lock);
      if (auto it = cache->answers.find(key); it != cache->answers.end()) return it->second;
    }
    Ray y = f(act(*in, f.domain(), c));
    Ray out = act(*out_coords, to.space(), y);
    std::lock_guard guard(cache->lock);
    cache->answers.emplace(std::move(key), out);
    return out;
  });
}

}  // namespace

PartialOrthometryDecomposition decompose_partial_orthometry(const RayMap& f, const RayMap& g,
                                                            ProbeSpec spec) {
  const HermitianSpace& h1 = f.domain();
  const HermitianSpace& h2 = f.codomain();
  auto p1 = ProbeSet::generate(h1, spec);
  auto p2 = ProbeSet::generate(h2, spec);
  Report report = verify_adjoint_pair(f, g, p1, p2);
  if (!report.ok())
    throw NotPartialOrthometry("f and the claimed adjoint do not form an adjoint pair",
                               report.first_failure()->witness);

  auto fx = map_probes(f, p1.rays);
  auto gy = map_probes(g, p2.rays);
  Subspace a = perp_closure(h1, gy);
  Subspace b = perp_closure(h2, fx);

  auto kills = [](const RayMap& m, const Subspace& s, const char* what) {
    Subspace perp = orthocomplement(s);
    for (const auto& v : perp.basis()) {
      Ray x = ray_of(s.space(), v);
      if (!m(x).is_zero())
        throw NotPartialOrthometry(std::string(what) + " does not vanish on the complement",
                                   {{"x", io::rep_json(x)}});
    }
  };
  kills(f, a, "f");
  kills(g, b, "adjoint");
  for (std::size_t i = 0; i < fx.size(); ++i)
    if (fx[i].is_zero() && !ray_in(orthocomplement(a), p1.rays[i]))
      throw NotPartialOrthometry("kernel probe outside the complement of im f*",
                                 {{"x", io::rep_json(p1.rays[i])}});
  report.pass("partial/kernels", {{"dim_a", a.dim()}, {"dim_b", b.dim()}});
  if (a.dim() != b.dim())
    throw NotPartialOrthometry("(ker f)⊥ and im f differ in dimension",
                               {{"dim_a", a.dim()}, {"dim_b", b.dim()}});

  SubspaceFrame fa(a);
  SubspaceFrame fb(b);
  RayMap core = frame_restriction(f, fa, fb);
  RayMap core_adj = frame_restriction(g, fb, fa);
  auto pa = ProbeSet::generate(fa.space(), spec);
  auto pb = ProbeSet::generate(fb.space(), spec);
  auto core_pair = verify_adjoint_pair(core, core_adj, pa, pb);
  if (!core_pair.ok())
    throw NotPartialOrthometry("core is not an orthoisomorphism", core_pair.first_failure()->witness);
  for (const auto& x : pa.rays)
    if (!(core_adj(core(x)) == x))
      throw NotPartialOrthometry("core adjoint does not invert the core", {{"x", io::rep_json(x)}});
  for (const auto& y : pb.rays)
    if (!(core(core_adj(y)) == y))
      throw NotPartialOrthometry("core does not invert the core adjoint", {{"y", io::rep_json(y)}});
  core_pair.prefix("partial/core");
  report.merge(core_pair);

  auto coords_a = frame_actions(fa).coordinates;
  auto embed_b = frame_actions(fb).embed;
  RayMap reassembled = RayMap::oracle(h1, h2, [core, fa, h2, coords_a, embed_b](const Ray& x) {
    return act(*embed_b, h2, core(act(*coords_a, fa.space(), x)));
  });
  auto again = map_probes(reassembled, p1.rays);
  for (std::size_t i = 0; i < again.size(); ++i)
    if (!(again[i] == fx[i]))
      throw NotPartialOrthometry("reassembled map differs from f",
                                 {{"x", io::rep_json(p1.rays[i])}});
  report.pass("partial/reassembly", {{"probes", again.size()}});

  return PartialOrthometryDecomposition{std::move(a), std::move(b), std::move(fa), std::move(fb),
                                        std::move(core), std::move(core_adj),
                                        std::move(reassembled), std::move(report)};
}

PartialIsometryDescriptor partial_wigner(const RayMap& f, const RayMap& g, ProbeSpec spec) {
  return partial_wigner(f, decompose_partial_orthometry(f, g, spec), spec);
}

PartialIsometryDescriptor partial_wigner(const RayMap& f, const PartialOrthometryDecomposition& d,
                                         ProbeSpec spec) {
  if (d.a.dim() < 3)
    throw PreconditionError("partial_wigner needs dim (ker f)⊥ >= 3, found " +
                            std::to_string(d.a.dim()));
  auto w = wigner_reconstruct(d.core, d.core_adjoint, spec);
  auto desc = make_partial_isometry(d.a, d.b, w.coordinatization.map);
  auto p1 = ProbeSet::generate(f.domain(), spec);
  auto mine = map_probes(induce(desc.map), p1.rays);
  auto theirs = map_probes(f, p1.rays);
  for (std::size_t i = 0; i < mine.size(); ++i)
    if (!(mine[i] == theirs[i]))
      throw NotInducedError("reassembled partial quasiisometry disagrees with f",
                            {{"x", io::rep_json(p1.rays[i])}});
  return desc;
}

PartialTransport partial_to_isometry(const PartialIsometryDescriptor& d, ProbeSpec probes) {
  auto t = transport(d.map, d.certificate.lambda, probes);
  std::vector<Vector> moved;
  for (const auto& v : d.s2.basis()) moved.push_back(t.tau.apply(v));
  Subspace s2p(t.new_space, moved);
  SubspaceFrame f1(d.s1);
  SubspaceFrame f2(s2p);
  std::vector<Vector> core_images;
  for (const auto& e : f1.basis()) core_images.push_back(f2.coordinates(t.composed.apply(e)));
  auto core = SemilinearMap::linear(f1.space(), f2.space(), std::move(core_images));
  auto iso = make_partial_isometry(d.s1, s2p, core);
  if (iso.is_isometry())
    t.report.pass("transport/partial-isometry");
  else
    t.report.fail("transport/partial-isometry", {{"lambda", io::to_json(iso.certificate.lambda)}});
  return PartialTransport{std::move(t), std::move(iso)};
}

}  // namespace olab
