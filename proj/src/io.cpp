#include "olab/io.hpp"

#include <fstream>

#include "olab/errors.hpp"

namespace olab::io {

namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw InputError("expected a rational literal, got " + j.dump());
}

json rational_json(const Rational& r) { return format_rational(r); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field '") + key + "' in " + j.dump());
  return j.at(key);
}

std::size_t count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

}  // namespace

json to_json(const Scalar& s) {
  Quaternion q = s.to_quaternion();
  switch (s.sfield()) {
    case Sfield::Q: return rational_json(q.a);
    case Sfield::Qi: return {{"re", rational_json(q.a)}, {"im", rational_json(q.b)}};
    case Sfield::HQ:
      return {{"a", rational_json(q.a)}, {"b", rational_json(q.b)}, {"c", rational_json(q.c)},
              {"d", rational_json(q.d)}};
  }
  return nullptr;
}

Scalar scalar_from_json(const json& j, Sfield f) {
  switch (f) {
    case Sfield::Q: return Scalar(rational_from_json(j));
    case Sfield::Qi:
      if (j.is_object()) {
        Rational re = j.contains("re") ? rational_from_json(j.at("re")) : Rational(0);
        Rational im = j.contains("im") ? rational_from_json(j.at("im")) : Rational(0);
        return Scalar(GaussianRational(re, im));
      }
      return Scalar::from_rational(f, rational_from_json(j));
    case Sfield::HQ:
      if (j.is_object()) {
        auto part = [&](const char* k) {
          return j.contains(k) ? rational_from_json(j.at(k)) : Rational(0);
        };
        return Scalar(Quaternion(part("a"), part("b"), part("c"), part("d")));
      }
      return Scalar::from_rational(f, rational_from_json(j));
  }
  throw InputError("bad sfield");
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& c : v.coords()) out.push_back(to_json(c));
  return out;
}

Vector vector_from_json(const json& j, const HermitianSpace& h) {
  if (!j.is_array() || j.size() != h.dim())
    throw InputError("expected a coordinate list of length " + std::to_string(h.dim()) +
                     ", got " + j.dump());
  std::vector<Scalar> coords;
  for (const auto& c : j) coords.push_back(scalar_from_json(c, h.sfield()));
  return h.vector(std::move(coords));
}

json to_json(const SfieldMorphism& m) {
  switch (m.kind()) {
    case SfieldMorphism::Kind::Identity: return {{"kind", "id"}};
    case SfieldMorphism::Kind::Conjugation: return {{"kind", "conj"}};
    case SfieldMorphism::Kind::Inner: return {{"kind", "inner"}, {"q", to_json(Scalar(m.conjugator()))}};
  }
  return nullptr;
}

SfieldMorphism morphism_from_json(const json& j, Sfield f) {
  if (j.is_null()) return SfieldMorphism::identity(f);
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "id") return SfieldMorphism::identity(f);
  if (kind == "conj") {
    if (f != Sfield::Qi) throw InputError("conjugation morphism is only defined on Qi");
    return SfieldMorphism::conjugation();
  }
  if (kind == "inner") {
    if (f != Sfield::HQ) throw InputError("inner morphisms are only represented on HQ");
    return SfieldMorphism::inner(scalar_from_json(field(j, "q"), Sfield::HQ).as_quaternion());
  }
  throw InputError("unknown morphism kind '" + kind + "'");
}

json to_json(const HermitianSpace& h) {
  json gram = json::array();
  for (const auto& row : h.gram()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    gram.push_back(std::move(r));
  }
  return {{"sfield", sfield_name(h.sfield())}, {"dim", h.dim()}, {"gram", std::move(gram)}};
}

HermitianSpace space_from_json(const json& j) {
  const Sfield f = parse_sfield(field(j, "sfield").get<std::string>());
  const std::size_t n = count_field(j, "dim");
  if (!j.contains("gram") || j.at("gram").is_null()) return HermitianSpace::standard(f, n);
  const json& g = j.at("gram");
  if (!g.is_array() || g.size() != n) throw InputError("gram must have dim rows");
  Matrix m;
  for (const auto& row : g) {
    if (!row.is_array() || row.size() != n) throw InputError("gram rows must have dim entries");
    std::vector<Scalar> r;
    for (const auto& x : row) r.push_back(scalar_from_json(x, f));
    m.push_back(std::move(r));
  }
  return HermitianSpace(f, std::move(m));
}

json to_json(const SemilinearMap& m) {
  json images = json::array();
  for (const auto& v : m.images()) images.push_back(to_json(v));
  return {{"domain", to_json(m.domain())},
          {"codomain", to_json(m.codomain())},
          {"sigma", to_json(m.sigma())},
          {"images", std::move(images)}};
}

SemilinearMap map_from_json(const json& j) {
  HermitianSpace dom = space_from_json(field(j, "domain"));
  HermitianSpace cod = j.contains("codomain") ? space_from_json(j.at("codomain")) : dom;
  SfieldMorphism sigma =
      morphism_from_json(j.contains("sigma") ? j.at("sigma") : json(nullptr), dom.sfield());
  const json& imgs = field(j, "images");
  if (!imgs.is_array()) throw InputError("images must be a list");
  std::vector<Vector> images;
  for (const auto& v : imgs) images.push_back(vector_from_json(v, cod));
  return SemilinearMap(std::move(dom), std::move(cod), std::move(sigma), std::move(images));
}

json to_json(const Subspace& s) {
  json basis = json::array();
  for (const auto& v : s.basis()) basis.push_back(to_json(v));
  return {{"space", to_json(s.space())}, {"basis", std::move(basis)}};
}

std::vector<Vector> basis_rows_from_json(const json& j, const HermitianSpace& h) {
  const json& b = field(j, "basis");
  if (!b.is_array()) throw InputError("basis must be a list");
  std::vector<Vector> rows;
  for (const auto& v : b) rows.push_back(vector_from_json(v, h));
  return rows;
}

Subspace subspace_from_json(const json& j) {
  HermitianSpace h = space_from_json(field(j, "space"));
  auto rows = basis_rows_from_json(j, h);
  return Subspace(h, rows);
}

json rep_json(const Ray& r) { return r.is_zero() ? json("zero") : to_json(r.rep()); }

json to_json(const Ray& r) { return {{"space", to_json(r.space())}, {"rep", rep_json(r)}}; }

Ray ray_from_json(const json& j) {
  HermitianSpace h = space_from_json(field(j, "space"));
  const json& rep = field(j, "rep");
  if (rep.is_string() && rep.get<std::string>() == "zero") return Ray::zero(h);
  return ray_of(h, vector_from_json(rep, h));
}

json to_json(const ProbeSpec& p) { return {{"seed", p.seed}, {"count", p.count}}; }

ProbeSpec probe_spec_from_json(const json& j) {
  ProbeSpec p;
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("count")) p.count = j.at("count").get<std::size_t>();
  return p;
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("JSON parse error in " + path.string() + ": " + e.what());
  }
}

}  // namespace olab::io
