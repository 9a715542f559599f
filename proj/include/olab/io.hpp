#pragma once

// JSON text formats for scalars, spaces, maps, subspaces, rays and probe
// specs. Rationals are written "p/q"; parsing also accepts "p" and integers.

#include <filesystem>

#include <nlohmann/json.hpp>

#include "olab/hermspace.hpp"
#include "olab/orthoset.hpp"

namespace olab::io {

using nlohmann::json;

json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Sfield f);

json to_json(const Vector& v);
Vector vector_from_json(const json& j, const HermitianSpace& h);

json to_json(const SfieldMorphism& m);
/// Source and target sfield are fixed by the surrounding map.
SfieldMorphism morphism_from_json(const json& j, Sfield f);

/// {"sfield", "dim", "gram"}; a missing gram means the identity.
json to_json(const HermitianSpace& h);
HermitianSpace space_from_json(const json& j);

/// {"domain", "codomain", "sigma", "images"}.
json to_json(const SemilinearMap& m);
SemilinearMap map_from_json(const json& j);

/// {"space", "basis"}.
json to_json(const Subspace& s);
Subspace subspace_from_json(const json& j);
/// The listed basis rows exactly as written (no reduction).
std::vector<Vector> basis_rows_from_json(const json& j, const HermitianSpace& h);

/// {"space", "rep"} with rep a coordinate list or "zero".
json to_json(const Ray& r);
Ray ray_from_json(const json& j);
/// Only the representative part, used in report witnesses.
json rep_json(const Ray& r);

json to_json(const ProbeSpec& p);
ProbeSpec probe_spec_from_json(const json& j);

json read_file(const std::filesystem::path& path);

}  // namespace olab::io
