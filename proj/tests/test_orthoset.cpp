#include <doctest.h>

#include "helpers.hpp"
#include "olab/correspondence.hpp"
#include "olab/errors.hpp"
#include "olab/orthoset.hpp"
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

bool oracle_perp(const Ray& x, const Ray& y) {
  if (x.is_zero() || y.is_zero()) return true;
  return oracle::form(x.space().gram(), x.rep().coords(), y.rep().coords(), x.space().sfield()).is_zero();
}

oracle::Matrix reps(std::initializer_list<Ray> rays) {
  oracle::Matrix m;
  for (const Ray& r : rays)
    if (!r.is_zero()) m.push_back(r.rep().coords());
  return m;
}

}  // namespace

TEST_CASE("canonical representatives") {
  auto q2 = HermitianSpace::standard(Q, 2);
  CHECK(ray_of(q2, vec(Q, {q("2"), q("4")})).rep() == vec(Q, {q("1"), q("2")}));
  CHECK(ray_of(q2, vec(Q, {q("0"), q("-3")})).rep() == vec(Q, {q("0"), q("1")}));
  CHECK(ray_of(q2, q2.zero()).is_zero());
  CHECK(ray_of(q2, q2.zero()) == Ray::zero(q2));
  CHECK_THROWS_AS(Ray::zero(q2).rep(), InputError);

  auto h2 = HermitianSpace::standard(HQ, 2);
  Scalar i = h("0", "1", "0", "0");
  Scalar j = h("0", "0", "1", "0");
  Scalar k = h("0", "0", "0", "1");
  CHECK(ray_of(h2, vec(HQ, {i, k})).rep() == vec(HQ, {h("1", "0", "0", "0"), j}));
  // Left multiples give the same ray, right multiples in general do not.
  Vector u = vec(HQ, {h("1", "2", "0", "0"), j});
  CHECK(ray_of(h2, k * u) == ray_of(h2, u));
  Vector right = vec(HQ, {u[0] * k, u[1] * k});
  CHECK_FALSE(ray_of(h2, right) == ray_of(h2, u));
}

TEST_CASE("orthogonality of rays") {
  auto q2 = HermitianSpace::standard(Q, 2);
  Ray a = ray_of(q2, vec(Q, {q("1"), q("1")}));
  Ray b = ray_of(q2, vec(Q, {q("1"), q("-1")}));
  CHECK(ray_perp(a, b));
  CHECK_FALSE(ray_perp(a, a));
  CHECK(ray_perp(Ray::zero(q2), a));
  CHECK(ray_perp(Ray::zero(q2), Ray::zero(q2)));

  Rng rng(41);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 3);
    for (int t = 0; t < 60; ++t) {
      Ray x = ray_of(s, gen::vector(rng, s, 2));
      // Half the time build y inside x⊥.
      Vector v = gen::vector(rng, s, 3);
      if (t % 2 && !x.is_zero()) {
        std::vector<Vector> xs{x.rep()};
        auto perp = orthocomplement(Subspace(s, xs));
        v = gen::scalar(rng, f, 3) * perp.basis()[0] + gen::scalar(rng, f, 3) * perp.basis()[1];
      }
      Ray y = ray_of(s, v);
      CHECK(ray_perp(x, y) == oracle_perp(x, y));
      CHECK(ray_perp(x, y) == ray_perp(y, x));
    }
  }
}

TEST_CASE("probe sets") {
  auto c3 = HermitianSpace::standard(Qi, 3);
  auto p = ProbeSet::generate(c3, {5, 20});
  REQUIRE(p.rays.size() == 20);
  CHECK(p.rays[0].is_zero());
  for (std::size_t i = 0; i < 3; ++i) CHECK(p.rays[1 + i] == ray_of(c3, c3.unit(i)));
  auto again = ProbeSet::generate(c3, {5, 20});
  CHECK(again.rays == p.rays);

  std::vector<Vector> b{c3.unit(0), vec(Qi, {c("0", "0"), c("1", "1"), c("2", "0")})};
  Subspace s(c3, b);
  auto w = ProbeSet::within(s, {1, 30});
  for (const Ray& r : w.rays) CHECK(ray_in(s, r));
}

TEST_CASE("perp closure is the span") {
  auto q3 = HermitianSpace::standard(Q, 3);
  std::vector<Ray> rays{ray_of(q3, vec(Q, {q("1"), q("1"), q("0")})), ray_of(q3, vec(Q, {q("1"), q("-1"), q("0")})),
                        Ray::zero(q3)};
  std::vector<Vector> e12{q3.unit(0), q3.unit(1)};
  CHECK(perp_closure(q3, rays) == Subspace(q3, e12));
  CHECK(perp_closure(q3, std::vector<Ray>{}).dim() == 0);

  Rng rng(43);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 4);
    for (int t = 0; t < 10; ++t) {
      std::vector<Ray> rs;
      oracle::Matrix m;
      for (int k = 0; k < 1 + t % 3; ++k) {
        rs.push_back(ray_of(s, gen::vector(rng, s, 3)));
        if (!rs.back().is_zero()) m.push_back(rs.back().rep().coords());
      }
      auto cl = perp_closure(s, rs);
      CHECK(cl.dim() == oracle::rank(f, m));
      CHECK(oracle::same_span(f, oracle::rows_of(cl.basis()), m));
    }
  }
}

TEST_CASE("linearity witness") {
  auto q2 = HermitianSpace::standard(Q, 2);
  Ray e1 = ray_of(q2, q2.unit(0));
  Ray e2 = ray_of(q2, q2.unit(1));
  Ray d = ray_of(q2, vec(Q, {q("1"), q("1")}));
  CHECK(linearity_witness(e1, d) == e2);
  CHECK(linearity_witness(e1, e2) == d);

  Rng rng(47);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 3);
    for (int t = 0; t < 30; ++t) {
      Ray x = ray_of(s, gen::nonzero_vector(rng, s, 3));
      Ray y = ray_of(s, gen::nonzero_vector(rng, s, 3));
      if (x == y) continue;
      Ray z = linearity_witness(x, y);
      CHECK(oracle::same_span(f, reps({x, y}), reps({x, z})));
      CHECK(oracle_perp(x, y) != oracle_perp(x, z));
    }
  }
}

TEST_CASE("dacey witness") {
  auto q2 = HermitianSpace::standard(Q, 2);
  std::vector<Vector> e1{q2.unit(0)};
  Subspace s(q2, e1);
  auto [y, z] = dacey_witness(s, ray_of(q2, vec(Q, {q("1"), q("1")})));
  CHECK(y == ray_of(q2, q2.unit(0)));
  CHECK(z == ray_of(q2, q2.unit(1)));
  auto [y0, z0] = dacey_witness(s, ray_of(q2, q2.unit(0)));
  CHECK(y0 == ray_of(q2, q2.unit(0)));
  CHECK(z0.is_zero());

  Rng rng(53);
  for (Sfield f : oracle::kFields) {
    auto sp = gen::space(rng, f, 4);
    auto sub = gen::subspace(rng, sp, 2);
    for (int t = 0; t < 20; ++t) {
      Ray x = ray_of(sp, gen::nonzero_vector(rng, sp, 3));
      auto [a, b] = dacey_witness(sub, x);
      CHECK(ray_in(sub, a));
      for (const Vector& v : sub.basis()) CHECK(oracle_perp(b, ray_of(sp, v)));
      oracle::Matrix ab = reps({a, b});
      ab.push_back(x.rep().coords());
      CHECK(oracle::rank(f, ab) == oracle::rank(f, reps({a, b})));
    }
  }
}

TEST_CASE("frechet separator") {
  auto q2 = HermitianSpace::standard(Q, 2);
  Ray x = ray_of(q2, vec(Q, {q("1"), q("1")}));
  Ray y = ray_of(q2, vec(Q, {q("1"), q("2")}));
  auto sep = frechet_separator(x, y);
  REQUIRE(sep);
  CHECK(sep->ray == ray_of(q2, vec(Q, {q("1"), q("-1")})));
  CHECK(sep->perp_to_first);
  CHECK_FALSE(frechet_separator(x, x));

  Rng rng(59);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 3);
    for (int t = 0; t < 30; ++t) {
      Ray a = ray_of(s, gen::vector(rng, s, 2));
      Ray b = ray_of(s, gen::vector(rng, s, 2));
      auto z = frechet_separator(a, b);
      REQUIRE(z.has_value() == !(a == b));
      if (!z) continue;
      CHECK(oracle_perp(z->ray, a) != oracle_perp(z->ray, b));
      CHECK(oracle_perp(z->ray, a) == z->perp_to_first);
    }
  }
}

TEST_CASE("probe checks pass on certified spaces") {
  Rng rng(61);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 3);
    auto p = ProbeSet::generate(s, {9, 40});
    CHECK(check_axioms(p).ok());
    CHECK(check_linearity(p, 50).ok());
    CHECK(frechet_check(p, 50).ok());
    CHECK(check_dacey(gen::subspace(rng, s, 1), p).ok());
  }
}

TEST_CASE("induced ray maps") {
  auto c2 = HermitianSpace::standard(Qi, 2);
  auto conj = SemilinearMap(c2, c2, SfieldMorphism::conjugation(), {c2.unit(0), c2.unit(1)});
  auto f = RayMap::induced(conj);
  CHECK(f(ray_of(c2, vec(Qi, {c("1", "0"), c("0", "1")}))) == ray_of(c2, vec(Qi, {c("1", "0"), c("0", "-1")})));
  CHECK(f(Ray::zero(c2)).is_zero());
  REQUIRE(f.inducer());
  CHECK(*f.inducer() == conj);

  Rng rng(67);
  for (Sfield fl : oracle::kFields) {
    auto s = gen::space(rng, fl, 3);
    auto phi = gen::quasiunitary_map(rng, s);
    auto g = RayMap::induced(phi);
    for (int t = 0; t < 20; ++t) {
      Vector u = gen::vector(rng, s, 4);
      CHECK(g(ray_of(s, u)) == ray_of(phi.codomain(), phi.apply(u)));
    }
    // Oracle maps compose like functions.
    auto opaque = RayMap::oracle(phi.domain(), phi.codomain(), [g](const Ray& r) { return g(r); });
    auto back = RayMap::induced(phi.inverse());
    auto round = compose(back, opaque);
    for (int t = 0; t < 10; ++t) {
      Ray x = ray_of(s, gen::vector(rng, s, 4));
      CHECK(round(x) == x);
    }
  }
}

TEST_CASE("adjoint pairs on probes") {
  auto q2 = HermitianSpace::standard(Q, 2);
  auto shear = SemilinearMap::linear(q2, q2, {q2.unit(0), vec(Q, {q("1"), q("1")})});
  auto wrong = SemilinearMap::linear(q2, q2, {q2.unit(0), vec(Q, {q("-1"), q("1")})});
  auto p = ProbeSet::generate(q2, {0, 32});
  auto bad = verify_adjoint_pair(induce(shear), induce(wrong), p, p);
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.records().size() == 1);
  CHECK(bad.records()[0].check == "adjoint-pair");
  CHECK(!bad.records()[0].witness.is_null());
  CHECK(verify_adjoint_pair(induce(shear), induce(adjoint_linear(shear)), p, p).ok());

  Rng rng(71);
  for (Sfield f : oracle::kFields) {
    auto s1 = gen::space(rng, f, 3);
    auto s2 = gen::space(rng, f, 2);
    auto phi = gen::linear_map(rng, s1, s2);
    auto ps1 = ProbeSet::generate(s1, {1, 24});
    auto ps2 = ProbeSet::generate(s2, {2, 24});
    CHECK(verify_adjoint_pair(induce(phi), induce(adjoint_linear(phi)), ps1, ps2).ok());
  }
}

TEST_CASE("ray map rank") {
  auto q3 = HermitianSpace::standard(Q, 3);
  auto p = ProbeSet::generate(q3, {0, 16});
  auto partial = SemilinearMap::linear(q3, q3, {q3.unit(1), q3.unit(2), q3.zero()});
  CHECK(ray_map_rank(induce(partial), p) == 2);
  CHECK(ray_map_rank(induce(SemilinearMap::zero(q3, q3)), p) == 0);
  auto g = induce(partial);
  auto opaque = RayMap::oracle(q3, q3, [g](const Ray& r) { return g(r); });
  CHECK(ray_map_rank(opaque, p) == 2);

  Rng rng(73);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 3);
    auto phi = gen::linear_map(rng, s, s);
    CHECK(ray_map_rank(induce(phi), ProbeSet::generate(s, {3, 8})) == oracle::rank(f, oracle::image_matrix(phi)));
  }
}
