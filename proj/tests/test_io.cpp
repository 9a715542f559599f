#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "olab/errors.hpp"
#include "olab/io.hpp"
#include "olab/random.hpp"
#include "olab/suites.hpp"
#include "oracles.hpp"

using namespace olab;
using th::c;
using th::h;
using th::q;
using th::vec;

namespace {

const std::filesystem::path kFixtures = FIXTURES_DIR;

}  // namespace

TEST_CASE("scalar literals") {
  CHECK(io::to_json(q("4")) == "4/1");
  CHECK(io::to_json(q("-6/4")) == "-3/2");
  CHECK(io::scalar_from_json(7, Sfield::Q) == q("7"));
  CHECK(io::scalar_from_json("2/6", Sfield::Q) == q("1/3"));
  CHECK(io::scalar_from_json({{"im", "1"}}, Sfield::Qi) == c("0", "1"));
  CHECK(io::scalar_from_json("3", Sfield::HQ) == h("3", "0", "0", "0"));
  CHECK_THROWS_AS(io::scalar_from_json("1/0", Sfield::Q), InputError);
  CHECK_THROWS_AS(io::scalar_from_json("x", Sfield::Q), InputError);
  CHECK_THROWS_AS(io::scalar_from_json(1.5, Sfield::Q), InputError);
}

TEST_CASE("round trips") {
  Rng rng(151);
  for (Sfield f : oracle::kFields) {
    auto s = gen::space(rng, f, 3);
    CHECK(io::space_from_json(io::to_json(s)) == s);
    Vector u = gen::vector(rng, s);
    CHECK(io::vector_from_json(io::to_json(u), s) == u);
    auto phi = gen::quasiunitary_map(rng, s);
    CHECK(io::map_from_json(io::to_json(phi)) == phi);
    auto sub = gen::subspace(rng, s, 2);
    CHECK(io::subspace_from_json(io::to_json(sub)) == sub);
    Ray r = ray_of(s, u);
    CHECK(io::ray_from_json(io::to_json(r)) == r);
    CHECK(io::ray_from_json(io::to_json(Ray::zero(s))).is_zero());
    ProbeSpec p{42, 17};
    auto back = io::probe_spec_from_json(io::to_json(p));
    CHECK(back.seed == 42);
    CHECK(back.count == 17);
  }
}

TEST_CASE("fixtures parse") {
  auto q3 = io::space_from_json(io::read_file(kFixtures / "q3.json"));
  CHECK(q3 == HermitianSpace::standard(Sfield::Q, 3));
  auto hq = io::map_from_json(io::read_file(kFixtures / "quasiunitary_hq3.json"));
  CHECK(hq.sigma() == SfieldMorphism::inner(Quaternion(1, 1, 0, 0)));
  CHECK(hq.images()[1] == h("1", "1", "0", "0") * hq.domain().unit(1));
  auto plane = io::subspace_from_json(io::read_file(kFixtures / "plane_q3.json"));
  CHECK(plane.dim() == 2);
  CHECK(plane.space().gram(0, 1) == q("1"));
  CHECK_THROWS_AS(io::read_file(kFixtures / "malformed.json"), InputError);
  CHECK_THROWS_AS(io::space_from_json(io::read_file(kFixtures / "indefinite_q2.json")), CertificateError);
  CHECK_THROWS_AS(io::read_file(kFixtures / "missing.json"), InputError);
}

TEST_CASE("every fixture round-trips") {
  auto q3 = HermitianSpace::standard(Sfield::Q, 3);
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    const auto name = entry.path().filename().string();
    if (name == "malformed.json" || name == "indefinite_q2.json") continue;
    CAPTURE(name);
    auto j = io::read_file(entry.path());
    ++seen;
    if (j.is_array()) {
      Vector v = io::vector_from_json(j, q3);
      CHECK(io::vector_from_json(io::to_json(v), q3) == v);
    } else if (j.contains("images")) {
      auto m = io::map_from_json(j);
      CHECK(io::map_from_json(io::to_json(m)) == m);
    } else if (j.contains("basis")) {
      auto s = io::subspace_from_json(j);
      CHECK(io::subspace_from_json(io::to_json(s)) == s);
    } else {
      auto s = io::space_from_json(j);
      CHECK(io::space_from_json(io::to_json(s)) == s);
    }
  }
  CHECK(seen >= 10);
}

TEST_CASE("malformed structures") {
  CHECK_THROWS_AS(io::space_from_json({{"sfield", "R"}, {"dim", 2}}), InputError);
  CHECK_THROWS_AS(io::space_from_json({{"sfield", "Q"}, {"dim", -1}}), InputError);
  CHECK_THROWS_AS(io::space_from_json({{"sfield", "Q"}, {"dim", 2}, {"gram", {{"1"}}}}), InputError);
  auto q2 = HermitianSpace::standard(Sfield::Q, 2);
  CHECK_THROWS_AS(io::vector_from_json({"1"}, q2), InputError);
  CHECK_THROWS_AS(io::morphism_from_json({{"kind", "conj"}}, Sfield::Q), InputError);
}

TEST_CASE("reports are sorted and reproducible") {
  Report r;
  r.pass("b");
  r.fail("a", {{"why", "x"}});
  r.set_elapsed(3.0);
  auto text = r.to_jsonl();
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.find("elapsed") == std::string::npos);
  CHECK(r.to_jsonl(true).find("elapsed") != std::string::npos);
  CHECK(r.failures() == 1);
  REQUIRE(r.first_failure());
  CHECK(r.first_failure()->check == "a");

  SuiteInputs none;
  auto one = run_suite("axioms", none, {7, 32}).to_jsonl();
  auto two = run_suite("axioms", none, {7, 32}).to_jsonl();
  CHECK(one == two);
  CHECK_FALSE(one.empty());
}
