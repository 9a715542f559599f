#include <doctest.h>

#include "helpers.hpp"
#include "olab/correspondence.hpp"
#include "olab/errors.hpp"
#include "olab/random.hpp"
#include "oracles.hpp"

using namespace olab;
using th::c;
using th::h;
using th::q;
using th::vec;

namespace {

const Sfield Q = Sfield::Q;
const Sfield Qi = Sfield::Qi;
const Sfield HQ = Sfield::HQ;

// P(φ) with the inducing map hidden, so only ray queries reach the library.
RayMap opaque(const SemilinearMap& phi) {
  RayMap g = induce(phi);
  return RayMap::oracle(phi.domain(), phi.codomain(), [g](const Ray& r) { return g(r); });
}

bool same_on_probes(const RayMap& a, const RayMap& b, const ProbeSet& p) {
  for (const Ray& x : p.rays)
    if (!(a(x) == b(x))) return false;
  return true;
}

// Gram entries straight from the basis-pair definition.
bool form_relation_holds(const SemilinearMap& phi, const HermitianSpace& target, const Scalar& lambda) {
  const auto& d = phi.domain();
  for (std::size_t i = 0; i < d.dim(); ++i)
    for (std::size_t j = 0; j < d.dim(); ++j) {
      Scalar lhs = oracle::form(target.gram(), phi.images()[i].coords(), phi.images()[j].coords(), d.sfield());
      if (!(lhs == phi.sigma().apply(d.gram(i, j)) * lambda)) return false;
    }
  return true;
}

SemilinearMap diag_map(const HermitianSpace& s, std::initializer_list<const char*> d) {
  std::vector<Vector> images;
  std::size_t i = 0;
  for (const char* x : d) {
    images.push_back(q(x) * s.unit(i));
    ++i;
  }
  return SemilinearMap::linear(s, s, images);
}

SemilinearMap left_mult(const HermitianSpace& s, const Scalar& k) {
  std::vector<Vector> images;
  for (std::size_t i = 0; i < s.dim(); ++i) images.push_back(k * s.unit(i));
  return SemilinearMap(s, s, SfieldMorphism::inner(k.as_quaternion()), images);
}

}  // namespace

TEST_CASE("induce examples") {
  auto q2 = HermitianSpace::standard(Q, 2);
  auto p = ProbeSet::generate(q2, {0, 16});
  auto zero = induce(SemilinearMap::zero(q2, q2));
  for (const Ray& x : p.rays) CHECK(zero(x).is_zero());
  auto three = induce(diag_map(q2, {"3", "3"}));
  for (const Ray& x : p.rays) CHECK(three(x) == x);
  auto shear = induce(SemilinearMap::linear(q2, q2, {q2.unit(0), vec(Q, {q("1"), q("1")})}));
  CHECK(shear(ray_of(q2, q2.unit(1))) == ray_of(q2, vec(Q, {q("1"), q("1")})));
}

TEST_CASE("induce is functorial on probes") {
  Rng rng(101);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 3);
    auto p = ProbeSet::generate(s, {4, 40});
    auto phi = gen::linear_map(rng, s, s);
    auto psi = gen::unitary_map(rng, s);
    auto lhs = induce(compose(phi, psi));
    auto g1 = induce(phi);
    auto g2 = induce(psi);
    auto rhs = RayMap::oracle(s, s, [g1, g2](const Ray& r) { return g1(g2(r)); });
    CHECK(same_on_probes(lhs, rhs, p));
    CHECK(same_on_probes(induce(SemilinearMap::identity(s)),
                         RayMap::oracle(s, s, [](const Ray& r) { return r; }), p));
  }
}

TEST_CASE("scalar ratio") {
  auto q3 = HermitianSpace::standard(Q, 3);
  Rng rng(103);
  auto phi = gen::invertible_map(rng, q3);
  CHECK(scalar_ratio(phi, phi) == q("1"));
  CHECK(scalar_ratio(phi.scaled(q("5")), phi) == q("5"));
  auto images = phi.images();
  images[2] = images[2] + images[0];
  CHECK_FALSE(scalar_ratio(SemilinearMap::linear(q3, q3, images), phi));
  auto rank1 = SemilinearMap::linear(q3, q3, {q3.unit(0), q3.zero(), q3.zero()});
  CHECK_THROWS_AS(scalar_ratio(rank1, rank1), PreconditionError);

  auto h2 = HermitianSpace::standard(HQ, 2);
  auto lm = left_mult(h2, h("1", "1", "0", "0"));
  Scalar k = h("0", "1", "2", "0");
  CHECK(scalar_ratio(lm.scaled(k), lm) == k);
}

TEST_CASE("piziak lambda examples") {
  auto q2 = HermitianSpace::standard(Q, 2);
  CHECK(piziak_lambda(SemilinearMap::identity(q2)) == q("1"));
  CHECK(piziak_lambda(diag_map(q2, {"2", "2"})) == q("4"));
  auto h2 = HermitianSpace::standard(HQ, 2);
  auto lm = left_mult(h2, h("1", "1", "0", "0"));
  Scalar lambda = piziak_lambda(lm);
  CHECK(lambda == h("2", "0", "0", "0"));
  CHECK(form_relation_holds(lm, h2, lambda));

  auto shear = SemilinearMap::linear(q2, q2, {q2.unit(0), vec(Q, {q("1"), q("1")})});
  CHECK_THROWS_AS(piziak_lambda(shear), NotOrthogonalityPreserving);
  CHECK_THROWS_AS(piziak_lambda(SemilinearMap::identity(HermitianSpace::standard(Q, 1))), PreconditionError);
}

TEST_CASE("piziak lambda on random quasiunitary maps") {
  Rng rng(107);
  for (Sfield f : oracle::kFields) {
    for (int t = 0; t < 5; ++t) {
      auto s = gen::space(rng, f, 2 + t % 3);
      auto phi = gen::quasiunitary_map(rng, s);
      Scalar lambda = piziak_lambda(phi, {1, 32});
      CHECK(form_relation_holds(phi, phi.codomain(), lambda));
      CHECK(lambda.star() == lambda);
    }
  }
}

TEST_CASE("transport_linear") {
  Rng rng(109);
  auto s = gen::space(rng, Q, 3);
  auto phi = gen::invertible_map(rng, s);
  auto t = transport_linear(phi);
  CHECK(t.new_space == s);
  CHECK(t.composed == phi);
  CHECK(t.report.ok());

  auto c3 = HermitianSpace::standard(Qi, 3);
  auto conj = SemilinearMap(c3, c3, SfieldMorphism::conjugation(),
                            {c3.unit(1), c3.unit(0), c("0", "1") * c3.unit(2)});
  auto tc = transport_linear(conj);
  CHECK(tc.new_space == c3);
  CHECK(tc.composed.is_linear());
  CHECK(tc.report.ok());

  auto hs = gen::space(rng, HQ, 3);
  auto lm = left_mult(hs, h("1", "0", "1", "1"));
  auto th = transport_linear(lm);
  auto inv = lm.sigma().inverse();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(th.new_space.gram(i, j) == inv.apply(hs.gram(i, j)));
  CHECK(th.composed.is_linear());
  // τ keeps the vector, so H₂' coordinates are the σ⁻¹ images of the old ones.
  Vector u = gen::vector(rng, hs);
  Vector img = lm.apply(u);
  for (std::size_t i = 0; i < 3; ++i) img[i] = inv.apply(img[i]);
  CHECK(th.composed.apply(u) == img);
}

TEST_CASE("transport_unitary") {
  auto q2 = HermitianSpace::standard(Q, 2);
  auto two = diag_map(q2, {"2", "2"});
  auto cert = is_quasiunitary(two);
  REQUIRE(cert);
  auto t = transport_unitary(two, *cert);
  CHECK(t.new_space.gram() == oracle::Matrix{{q("1/4"), q("0")}, {q("0"), q("1/4")}});
  CHECK(t.composed.images() == two.images());
  CHECK(form_relation_holds(t.composed, t.new_space, q("1")));
  auto tc = is_quasiunitary(t.composed);
  REQUIRE(tc);
  CHECK(tc->sigma.is_identity());
  CHECK(tc->lambda.is_one());

  auto h2 = HermitianSpace::standard(HQ, 2);
  auto lm = left_mult(h2, h("1", "1", "0", "0"));
  auto hc = is_quasiunitary(lm);
  REQUIRE(hc);
  auto th = transport_unitary(lm, *hc);
  Scalar half = h("1/2", "0", "0", "0");
  Scalar zero = Scalar::zero(HQ);
  CHECK(th.new_space.gram() == oracle::Matrix{{half, zero}, {zero, half}});
  CHECK(th.composed.is_linear());
  CHECK(form_relation_holds(th.composed, th.new_space, Scalar::one(HQ)));
  CHECK(th.report.ok());

  QuasiunitaryCertificate wrong{hc->sigma, h("3", "0", "0", "0")};
  CHECK_THROWS_AS(transport_unitary(lm, wrong), InputError);
}

TEST_CASE("coordinatize examples") {
  auto q3 = HermitianSpace::standard(Q, 3);
  auto id = coordinatize(opaque(SemilinearMap::identity(q3)), std::nullopt, {0, 32});
  CHECK(id.sigma.is_identity());
  CHECK(scalar_ratio(id.map, SemilinearMap::identity(q3)));
  CHECK(id.verified.ok());

  Rng rng(113);
  auto c3 = HermitianSpace::standard(Qi, 3);
  auto u = gen::unitary_map(rng, c3);
  auto conj = SemilinearMap(c3, c3, SfieldMorphism::conjugation(), {c3.unit(0), c3.unit(1), c3.unit(2)});
  auto phi0 = compose(u, conj).scaled(c("1", "2"));
  auto r = coordinatize(opaque(phi0), std::nullopt, {1, 64});
  CHECK(r.sigma == SfieldMorphism::conjugation());
  CHECK(scalar_ratio(r.map, phi0));

  // The ℚ³ shift has rank 2, below the reconstruction bound.
  auto shift3 = SemilinearMap::linear(q3, q3, {q3.unit(1), q3.unit(2), q3.zero()});
  CHECK_THROWS_AS(coordinatize(opaque(shift3), std::nullopt, {0, 32}), PreconditionError);

  auto q4 = HermitianSpace::standard(Q, 4);
  auto shift4 = SemilinearMap::linear(q4, q4, {q4.unit(1), q4.unit(2), q4.unit(3), q4.zero()});
  auto rk = coordinatize(opaque(shift4), opaque(adjoint_linear(shift4)), {2, 64});
  std::vector<Vector> e4{q4.unit(3)};
  CHECK(rk.map.kernel() == Subspace(q4, e4));
  CHECK(scalar_ratio(rk.map, shift4));
  auto rn = coordinatize(opaque(shift4), std::nullopt, {2, 64});
  CHECK(rn.map.kernel() == Subspace(q4, e4));
}

TEST_CASE("coordinatize rejects maps that are not induced") {
  auto q3 = HermitianSpace::standard(Q, 3);
  ProbeSpec spec{0, 32};
  // Bend the image of one random probe away from the identity.
  Ray target = ProbeSet::generate(q3, spec).rays.back();
  REQUIRE(target.rep().leading_index() < 2);
  Vector shifted = target.rep();
  shifted[2] = shifted[2] + q("1");
  Ray moved = ray_of(q3, shifted);
  auto bent = RayMap::oracle(q3, q3, [target, moved](const Ray& r) { return r == target ? moved : r; });
  CHECK_THROWS_AS(coordinatize(bent, std::nullopt, spec), NotInducedError);
}

TEST_CASE("wigner examples") {
  auto q3 = HermitianSpace::standard(Q, 3);
  auto id = SemilinearMap::identity(q3);
  auto w = wigner_reconstruct(opaque(id), opaque(id), {0, 32});
  CHECK(w.coordinatization.map == id);
  CHECK(w.certificate.sigma.is_identity());
  CHECK(w.certificate.lambda.is_one());

  auto perm = SemilinearMap::linear(q3, q3, {q3.unit(2), q3.unit(0), q3.unit(1)});
  auto wp = wigner_reconstruct(opaque(perm), opaque(perm.inverse()), {0, 32});
  CHECK(wp.coordinatization.map == perm);
  CHECK(wp.certificate.lambda.is_one());

  Rng rng(127);
  auto h3 = HermitianSpace::standard(HQ, 3);
  auto lm = left_mult(h3, gen::nonzero_scalar(rng, HQ, 3));
  auto wh = wigner_reconstruct(opaque(lm), opaque(lm.inverse()), {1, 48});
  CHECK(scalar_ratio(wh.coordinatization.map, lm));
  auto cert = is_quasiunitary(wh.coordinatization.map);
  REQUIRE(cert);
  CHECK(form_relation_holds(wh.coordinatization.map, h3, cert->lambda));

  auto shear = SemilinearMap::linear(q3, q3, {q3.unit(0), vec(Q, {q("1"), q("1"), q("0")}), q3.unit(2)});
  CHECK_THROWS_AS(wigner_reconstruct(opaque(shear), opaque(shear.inverse()), {0, 32}), NotOrthoisoError);
  auto q2 = HermitianSpace::standard(Q, 2);
  auto id2 = SemilinearMap::identity(q2);
  CHECK_THROWS_AS(wigner_reconstruct(opaque(id2), opaque(id2), {0, 16}), PreconditionError);
}

TEST_CASE("fix_subspace_normalize") {
  auto q3 = HermitianSpace::standard(Q, 3);
  std::vector<Vector> e12{q3.unit(0), q3.unit(1)};
  Subspace s(q3, e12);
  auto id = SemilinearMap::identity(q3);
  CHECK(fix_subspace_normalize(opaque(id), opaque(id), s, {0, 32}) == id);
  auto refl = diag_map(q3, {"1", "1", "-1"});
  CHECK(fix_subspace_normalize(opaque(refl), opaque(refl), s, {0, 32}) == refl);
  auto two = diag_map(q3, {"2", "2", "2"});
  CHECK(fix_subspace_normalize(opaque(two), opaque(two.inverse()), s, {0, 32}) == id);
  auto swap = SemilinearMap::linear(q3, q3, {q3.unit(1), q3.unit(0), q3.unit(2)});
  CHECK_THROWS_AS(fix_subspace_normalize(opaque(swap), opaque(swap), s, {0, 32}), PreconditionError);
}

TEST_CASE("decompose partial orthometries") {
  auto q3 = HermitianSpace::standard(Q, 3);
  ProbeSpec spec{0, 32};
  auto id = SemilinearMap::identity(q3);
  auto di = decompose_partial_orthometry(opaque(id), opaque(id), spec);
  CHECK(di.a == Subspace::full(q3));
  CHECK(di.b == Subspace::full(q3));
  CHECK(di.report.ok());

  auto shift = SemilinearMap::linear(q3, q3, {q3.unit(1), q3.unit(2), q3.zero()});
  auto d = decompose_partial_orthometry(opaque(shift), opaque(adjoint_linear(shift)), spec);
  std::vector<Vector> e12{q3.unit(0), q3.unit(1)};
  std::vector<Vector> e23{q3.unit(1), q3.unit(2)};
  CHECK(d.a == Subspace(q3, e12));
  CHECK(d.b == Subspace(q3, e23));
  const auto& fa = d.frame_a.space();
  const auto& fb = d.frame_b.space();
  CHECK(d.core(ray_of(fa, fa.unit(0))) == ray_of(fb, fb.unit(0)));
  CHECK(d.core(ray_of(fa, fa.unit(1))) == ray_of(fb, fb.unit(1)));
  CHECK(same_on_probes(d.reassembled, induce(shift), ProbeSet::generate(q3, spec)));

  auto zero = SemilinearMap::zero(q3, q3);
  auto dz = decompose_partial_orthometry(opaque(zero), opaque(zero), spec);
  CHECK(dz.a.dim() == 0);
  CHECK(dz.b.dim() == 0);

  auto shear = SemilinearMap::linear(q3, q3, {q3.unit(0), vec(Q, {q("1"), q("1"), q("0")}), q3.zero()});
  CHECK_THROWS_AS(decompose_partial_orthometry(opaque(shear), opaque(adjoint_linear(shear)), spec),
                  NotPartialOrthometry);
}

TEST_CASE("partial wigner") {
  ProbeSpec spec{3, 48};
  auto q3 = HermitianSpace::standard(Q, 3);
  auto id = SemilinearMap::identity(q3);
  auto pi = partial_wigner(opaque(id), opaque(id), spec);
  CHECK(pi.s1 == Subspace::full(q3));
  CHECK(scalar_ratio(pi.map, id));

  auto q5 = HermitianSpace::standard(Q, 5);
  std::vector<Vector> b1{q5.unit(0), q5.unit(1), q5.unit(2)};
  std::vector<Vector> b2{q5.unit(2), q5.unit(3), q5.unit(4)};
  Subspace s1(q5, b1);
  Subspace s2(q5, b2);
  SubspaceFrame f1(s1);
  SubspaceFrame f2(s2);
  auto core = SemilinearMap::linear(f1.space(), f2.space(),
                                    {f2.space().unit(1), f2.space().unit(2), q("-1") * f2.space().unit(0)});
  auto d = make_partial_isometry(s1, s2, core);
  auto r = partial_wigner(opaque(d.map), opaque(adjoint_linear(d.map)), spec);
  CHECK(r.s1 == s1);
  CHECK(r.s2 == s2);
  CHECK(same_on_probes(induce(r.map), induce(d.map), ProbeSet::generate(q5, spec)));
  CHECK(scalar_ratio(r.core, d.core));
  auto t = partial_to_isometry(r, spec);
  CHECK(t.isometry.is_isometry());
  CHECK(t.transport.report.ok());

  auto small = SemilinearMap::linear(q5, q5, {q5.unit(1), q5.unit(2), q5.zero(), q5.zero(), q5.zero()});
  CHECK_THROWS_AS(partial_wigner(opaque(small), opaque(adjoint_linear(small)), spec), PreconditionError);
}
