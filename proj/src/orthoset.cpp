#include "olab/orthoset.hpp"

#include <algorithm>

#include "olab/errors.hpp"
#include "olab/io.hpp"
#include "olab/parallel.hpp"
#include "olab/random.hpp"
#include "integral.hpp"
#include "perp_kernel.hpp"

namespace olab {

const Vector& Ray::rep() const {
  if (!rep_) throw InputError("the zero ray has no representative");
  return *rep_;
}

std::string Ray::to_string() const { return rep_ ? "<" + rep_->to_string() + ">" : "<0>"; }

Ray ray_of(const HermitianSpace& h, const Vector& u) {
  h.check(u);
  const std::size_t lead = u.leading_index();
  if (lead == u.size()) return Ray::zero(h);
  if (u[lead].is_one()) return Ray(h, u);
  Vector rep = u[lead].inverse() * u;
  rep[lead] = Scalar::one(h.sfield());
  return Ray(h, std::move(rep));
}

bool ray_perp(const Ray& x, const Ray& y) {
  if (!(x.space() == y.space())) throw InputError("rays belong to different spaces");
  if (x.is_zero() || y.is_zero()) return true;
  return herm_form(x.space(), x.rep(), y.rep()).is_zero();
}

// ---------------------------------------------------------------------------

RayMap RayMap::induced(SemilinearMap phi) {
  auto dom = phi.domain();
  auto cod = phi.codomain();
  auto action = std::make_shared<const detail::ProjectiveAction>(cod.sfield(), phi.sigma(),
                                                                 phi.images(), cod.dim());
  Action act = [action, cod](const Ray& x) {
    if (x.is_zero()) return Ray::zero(cod);
    return ray_of(cod, detail::normalized(cod.sfield(), action->apply(detail::clear_denominators(x.rep()))));
  };
  return RayMap(std::move(dom), std::move(cod), std::move(act), std::move(phi));
}

RayMap RayMap::oracle(HermitianSpace domain, HermitianSpace codomain, Action action) {
  return RayMap(std::move(domain), std::move(codomain), std::move(action), std::nullopt);
}

Ray RayMap::operator()(const Ray& x) const {
  if (!(x.space() == domain_)) throw InputError("ray " + x.to_string() + " outside map domain");
  Ray y = action_(x);
  if (!(y.space() == codomain_)) throw InputError("ray map returned a ray outside its codomain");
  return y;
}

RayMap compose(const RayMap& outer, const RayMap& inner) {
  if (!(inner.codomain() == outer.domain())) throw InputError("ray maps are not composable");
  if (outer.inducer() && inner.inducer())
    return RayMap::induced(compose(*outer.inducer(), *inner.inducer()));
  return RayMap::oracle(inner.domain(), outer.codomain(),
                        [outer, inner](const Ray& x) { return outer(inner(x)); });
}

// ---------------------------------------------------------------------------

ProbeSet ProbeSet::generate(const HermitianSpace& h, ProbeSpec spec) {
  ProbeSet p{h, {Ray::zero(h)}, spec.seed};
  for (std::size_t i = 0; i < h.dim(); ++i) p.rays.push_back(ray_of(h, h.unit(i)));
  if (h.dim() == 0) return p;
  Rng rng(spec.seed);
  while (p.rays.size() < spec.count) p.rays.push_back(ray_of(h, gen::nonzero_vector(rng, h, 5)));
  return p;
}

ProbeSet ProbeSet::within(const Subspace& s, ProbeSpec spec) {
  const HermitianSpace& h = s.space();
  ProbeSet p{h, {Ray::zero(h)}, spec.seed};
  for (const auto& b : s.basis()) p.rays.push_back(ray_of(h, b));
  if (s.dim() == 0) return p;
  Rng rng(spec.seed);
  while (p.rays.size() < spec.count) {
    Vector v = h.zero();
    for (const auto& b : s.basis()) v += gen::scalar(rng, h.sfield(), 5) * b;
    if (!v.is_zero()) p.rays.push_back(ray_of(h, v));
  }
  return p;
}

Subspace perp_closure(const HermitianSpace& h, std::span<const Ray> rays) {
  // Grow the span one ray at a time. A ray already lies in the span S exactly
  // when it is orthogonal to a basis of S⊥, and that test only needs the
  // precomputed columns G·w∗, which is far cheaper than reducing every ray.
  std::vector<Vector> chosen;
  Subspace span(h);
  std::vector<Vector> duals;
  auto refresh = [&] {
    duals.clear();
    Subspace perp = orthocomplement(span);
    for (const auto& w : perp.basis()) {
      std::vector<Scalar> d(h.dim(), Scalar::zero(h.sfield()));
      for (std::size_t i = 0; i < h.dim(); ++i)
        for (std::size_t j = 0; j < h.dim(); ++j)
          if (!w[j].is_zero()) d[i] += h.gram(i, j) * w[j].star();
      duals.emplace_back(h.sfield(), std::move(d));
    }
  };
  refresh();
  for (const auto& r : rays) {
    if (!(r.space() == h)) throw InputError("ray outside the given space");
    if (r.is_zero() || duals.empty()) continue;
    const Vector& u = r.rep();
    bool inside = true;
    for (const auto& d : duals) {
      Scalar acc = Scalar::zero(h.sfield());
      for (std::size_t i = 0; i < h.dim(); ++i)
        if (!u[i].is_zero()) acc += u[i] * d[i];
      if (!acc.is_zero()) {
        inside = false;
        break;
      }
    }
    if (inside) continue;
    chosen.push_back(u);
    span = Subspace(h, chosen);
    refresh();
  }
  return span;
}

bool ray_in(const Subspace& s, const Ray& x) { return x.is_zero() || s.contains(x.rep()); }

// ---------------------------------------------------------------------------

namespace {

// Seeded sample of index pairs (i, j), i ≠ j, among proper probes.
std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(const ProbeSet& probes,
                                                              std::size_t pairs,
                                                              std::uint64_t salt) {
  std::vector<std::size_t> proper;
  for (std::size_t i = 0; i < probes.rays.size(); ++i)
    if (!probes.rays[i].is_zero()) proper.push_back(i);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (proper.size() < 2) return out;
  Rng rng(probes.seed ^ salt);
  const auto m = static_cast<std::int64_t>(proper.size());
  for (std::size_t k = 0; k < pairs; ++k) {
    auto i = static_cast<std::size_t>(rng.uniform(0, m - 1));
    auto j = static_cast<std::size_t>(rng.uniform(0, m - 2));
    if (j >= i) ++j;
    out.emplace_back(proper[i], proper[j]);
  }
  return out;
}

Vector orthogonal_to(const HermitianSpace& h, const Vector& u, const Vector& x) {
  Scalar c = herm_form(h, u, x) * herm_form(h, x, x).inverse();
  return u - c * x;
}

}  // namespace

Report check_axioms(const ProbeSet& probes) {
  const auto& rays = probes.rays;
  detail::PerpKernel kernel(probes.space);
  std::vector<detail::ResidueRow> left(rays.size()), right(rays.size());
  parallel_for(rays.size(), [&](std::size_t i) {
    left[i] = kernel.left(rays[i]);
    right[i] = kernel.right(rays[i]);
  });

  // Per-row first violation of symmetry, merged in row order.
  std::vector<std::optional<std::size_t>> asym(rays.size());
  parallel_for(rays.size(), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (kernel.perp(rays[i], left[i], rays[j], right[j]) !=
          kernel.perp(rays[j], left[j], rays[i], right[i])) {
        asym[i] = j;
        return;
      }
  });

  Report report;
  const std::size_t n = rays.size();
  auto first_asym = std::find_if(asym.begin(), asym.end(), [](const auto& o) { return o.has_value(); });
  if (first_asym == asym.end()) {
    report.pass("O1-symmetry", {{"pairs", n * (n - 1) / 2}});
  } else {
    auto i = static_cast<std::size_t>(first_asym - asym.begin());
    report.fail("O1-symmetry", {{"x", io::rep_json(rays[i])}, {"y", io::rep_json(rays[**first_asym])}});
  }

  std::optional<std::size_t> self_bad;
  for (std::size_t i = 0; i < n && !self_bad; ++i)
    if (kernel.perp(rays[i], left[i], rays[i], right[i]) != rays[i].is_zero()) self_bad = i;
  if (self_bad)
    report.fail("O2-self-orthogonality", {{"x", io::rep_json(rays[*self_bad])}});
  else
    report.pass("O2-self-orthogonality", {{"rays", n}});

  const Vector zero = probes.space.zero();
  std::optional<std::size_t> zero_bad;
  for (std::size_t i = 0; i < n && !zero_bad; ++i) {
    if (rays[i].is_zero()) continue;
    if (!herm_form(probes.space, zero, rays[i].rep()).is_zero() ||
        !herm_form(probes.space, rays[i].rep(), zero).is_zero() ||
        !ray_perp(Ray::zero(probes.space), rays[i]))
      zero_bad = i;
  }
  if (zero_bad)
    report.fail("O3-zero", {{"x", io::rep_json(rays[*zero_bad])}});
  else
    report.pass("O3-zero", {{"rays", n}});
  return report;
}

Ray linearity_witness(const Ray& x, const Ray& y) {
  if (!(x.space() == y.space())) throw InputError("rays belong to different spaces");
  if (x.is_zero() || y.is_zero()) throw InputError("linearity_witness needs proper rays");
  if (x == y) throw InputError("linearity_witness needs distinct rays");
  const HermitianSpace& h = x.space();
  if (ray_perp(x, y)) return ray_of(h, x.rep() + y.rep());
  return ray_of(h, orthogonal_to(h, y.rep(), x.rep()));
}

Report check_linearity(const ProbeSet& probes, std::size_t pairs) {
  const HermitianSpace& h = probes.space;
  auto sample = sample_pairs(probes, pairs, 0x6c696e65u);
  std::vector<std::optional<nlohmann::json>> bad(sample.size());
  parallel_for(sample.size(), [&](std::size_t k) {
    const Ray& x = probes.rays[sample[k].first];
    const Ray& y = probes.rays[sample[k].second];
    if (x == y) return;
    Ray z = linearity_witness(x, y);
    std::vector<Ray> xy{x, y}, xz{x, z};
    bool ok = !z.is_zero() && (ray_perp(y, x) != ray_perp(z, x)) &&
              perp_closure(h, xy) == perp_closure(h, xz);
    if (!ok) bad[k] = {{"x", io::rep_json(x)}, {"y", io::rep_json(y)}, {"z", io::rep_json(z)}};
  });
  Report report;
  for (const auto& b : bad)
    if (b) {
      report.fail("linearity", *b);
      return report;
    }
  report.pass("linearity", {{"pairs", sample.size()}});
  return report;
}

std::pair<Ray, Ray> dacey_witness(const Subspace& s, const Ray& x) {
  const HermitianSpace& h = s.space();
  if (!(x.space() == h)) throw InputError("ray outside the subspace's space");
  if (x.is_zero()) throw InputError("dacey_witness needs a proper ray");
  auto p = project(s, x.rep());
  return {ray_of(h, p.in_subspace), ray_of(h, p.orthogonal)};
}

Report check_dacey(const Subspace& s, const ProbeSet& probes) {
  const HermitianSpace& h = s.space();
  Subspace perp = orthocomplement(s);
  std::vector<std::optional<nlohmann::json>> bad(probes.rays.size());
  parallel_for(probes.rays.size(), [&](std::size_t k) {
    const Ray& x = probes.rays[k];
    if (x.is_zero()) return;
    auto [y, z] = dacey_witness(s, x);
    std::vector<Ray> yz{y, z};
    if (!ray_in(s, y) || !ray_in(perp, z) || !ray_in(perp_closure(h, yz), x))
      bad[k] = {{"x", io::rep_json(x)}, {"y", io::rep_json(y)}, {"z", io::rep_json(z)}};
  });
  Report report;
  for (const auto& b : bad)
    if (b) {
      report.fail("dacey", *b);
      return report;
    }
  report.pass("dacey", {{"rays", probes.rays.size()}, {"subspace_dim", s.dim()}});
  return report;
}

std::optional<FrechetSeparator> frechet_separator(const Ray& x, const Ray& y) {
  if (!(x.space() == y.space())) throw InputError("rays belong to different spaces");
  if (x == y) return std::nullopt;
  const HermitianSpace& h = x.space();
  if (y.is_zero()) return FrechetSeparator{x, false};
  if (x.is_zero()) return FrechetSeparator{y, true};
  return FrechetSeparator{ray_of(h, orthogonal_to(h, y.rep(), x.rep())), true};
}

Report frechet_check(const ProbeSet& probes, std::size_t pairs) {
  auto sample = sample_pairs(probes, pairs, 0x66726563u);
  // The zero ray is a legitimate partner too.
  if (!probes.rays.empty() && probes.rays.size() > 1) sample.emplace_back(0, 1);
  std::vector<std::optional<nlohmann::json>> bad(sample.size());
  parallel_for(sample.size(), [&](std::size_t k) {
    const Ray& x = probes.rays[sample[k].first];
    const Ray& y = probes.rays[sample[k].second];
    auto sep = frechet_separator(x, y);
    if (!sep) return;
    const Ray& on = sep->perp_to_first ? x : y;
    const Ray& off = sep->perp_to_first ? y : x;
    if (!ray_perp(sep->ray, on) || ray_perp(sep->ray, off))
      bad[k] = {{"x", io::rep_json(x)}, {"y", io::rep_json(y)}, {"w", io::rep_json(sep->ray)}};
  });
  Report report;
  for (const auto& b : bad)
    if (b) {
      report.fail("frechet", *b);
      return report;
    }
  report.pass("frechet", {{"pairs", sample.size()}});
  return report;
}

std::vector<Ray> map_probes(const RayMap& f, std::span<const Ray> rays) {
  std::vector<std::optional<Ray>> out(rays.size());
  parallel_for(rays.size(), [&](std::size_t i) { out[i] = f(rays[i]); });
  std::vector<Ray> result;
  result.reserve(rays.size());
  for (auto& r : out) result.push_back(std::move(*r));
  return result;
}

Report verify_adjoint_pair(const RayMap& f, const RayMap& g, const ProbeSet& probes1,
                           const ProbeSet& probes2) {
  if (!(f.domain() == g.codomain()) || !(f.codomain() == g.domain()))
    throw InputError("verify_adjoint_pair: f and g do not run in opposite directions");
  if (!(probes1.space == f.domain()) || !(probes2.space == f.codomain()))
    throw InputError("verify_adjoint_pair: probe sets do not match the map's spaces");
  const auto& xs = probes1.rays;
  const auto& ys = probes2.rays;
  auto fx = map_probes(f, xs);
  auto gy = map_probes(g, ys);

  detail::PerpKernel k1(f.domain());
  detail::PerpKernel k2(f.codomain());
  std::vector<detail::ResidueRow> fx_left(xs.size()), x_left(xs.size());
  std::vector<detail::ResidueRow> y_right(ys.size()), gy_right(ys.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    fx_left[i] = k2.left(fx[i]);
    x_left[i] = k1.left(xs[i]);
  });
  parallel_for(ys.size(), [&](std::size_t j) {
    y_right[j] = k2.right(ys[j]);
    gy_right[j] = k1.right(gy[j]);
  });

  std::vector<std::size_t> violations(xs.size(), 0);
  std::vector<std::optional<std::size_t>> first(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      bool lhs = k2.perp(fx[i], fx_left[i], ys[j], y_right[j]);
      bool rhs = k1.perp(xs[i], x_left[i], gy[j], gy_right[j]);
      if (lhs != rhs) {
        ++violations[i];
        if (!first[i]) first[i] = j;
      }
    }
  });

  Report report;
  std::size_t total = 0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    total += violations[i];
    if (!witness && first[i]) witness = std::make_pair(i, *first[i]);
  }
  if (!witness) {
    report.pass("adjoint-pair", {{"pairs", xs.size() * ys.size()}});
    return report;
  }
  auto [i, j] = *witness;
  report.fail("adjoint-pair", {{"x", io::rep_json(xs[i])},
                               {"y", io::rep_json(ys[j])},
                               {"f(x)", io::rep_json(fx[i])},
                               {"g(y)", io::rep_json(gy[j])},
                               {"f(x)_perp_y", k2.perp(fx[i], fx_left[i], ys[j], y_right[j])},
                               {"x_perp_g(y)", k1.perp(xs[i], x_left[i], gy[j], gy_right[j])},
                               {"violations", total}});
  return report;
}

std::size_t ray_map_rank(const RayMap& f, const ProbeSet& probes) {
  if (f.inducer()) return f.inducer()->rank();
  auto images = map_probes(f, probes.rays);
  return perp_closure(f.codomain(), images).dim();
}

}  // namespace olab
