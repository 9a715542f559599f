#pragma once

// The orthoset P(H): rays ⟨u⟩ with the zero element, the induced
// orthogonality relation, finite orthoclosures and probe-based checks of the
// orthoset, linearity, Dacey and Fréchet properties and of adjoint pairs.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "olab/hermspace.hpp"
#include "olab/report.hpp"

namespace olab {

/// ⟨u⟩ held by its canonical representative: the leftmost nonzero coordinate
/// is made 1 by left multiplication with its inverse.
class Ray {
 public:
  static Ray zero(const HermitianSpace& h) { return Ray(h, std::nullopt); }

  const HermitianSpace& space() const { return space_; }
  bool is_zero() const { return !rep_.has_value(); }
  /// Canonical representative; throws InputError for the zero ray.
  const Vector& rep() const;

  friend bool operator==(const Ray& a, const Ray& b) {
    return a.rep_ == b.rep_ && a.space_ == b.space_;
  }

  std::string to_string() const;

 private:
  friend Ray ray_of(const HermitianSpace& h, const Vector& u);
  Ray(HermitianSpace h, std::optional<Vector> rep) : space_(std::move(h)), rep_(std::move(rep)) {}

  HermitianSpace space_;
  std::optional<Vector> rep_;
};

Ray ray_of(const HermitianSpace& h, const Vector& u);
bool ray_perp(const Ray& x, const Ray& y);

/// A map P(H₁) → P(H₂): either induced by a semilinear map or an opaque
/// total function supplied by the caller. Oracle functions must be safe to
/// call concurrently.
class RayMap {
 public:
  using Action = std::function<Ray(const Ray&)>;

  static RayMap induced(SemilinearMap phi);
  static RayMap oracle(HermitianSpace domain, HermitianSpace codomain, Action action);

  const HermitianSpace& domain() const { return domain_; }
  const HermitianSpace& codomain() const { return codomain_; }
  /// The inducing map, if any.
  const std::optional<SemilinearMap>& inducer() const { return inducer_; }

  Ray operator()(const Ray& x) const;

 private:
  RayMap(HermitianSpace d, HermitianSpace c, Action a, std::optional<SemilinearMap> phi)
      : domain_(std::move(d)), codomain_(std::move(c)), action_(std::move(a)), inducer_(std::move(phi)) {}

  HermitianSpace domain_;
  HermitianSpace codomain_;
  Action action_;
  std::optional<SemilinearMap> inducer_;
};

/// outer ∘ inner; induced when both are.
RayMap compose(const RayMap& outer, const RayMap& inner);

struct ProbeSpec {
  std::uint64_t seed = 0;
  std::size_t count = 256;
};

/// Finite witness set for P(H): the zero ray, every standard basis ray, then
/// seeded random rays up to `count` in total.
struct ProbeSet {
  HermitianSpace space;
  std::vector<Ray> rays;
  std::uint64_t seed = 0;

  static ProbeSet generate(const HermitianSpace& h, ProbeSpec spec);
  /// Rays of P(S): zero, the basis rays of S and seeded random combinations.
  static ProbeSet within(const Subspace& s, ProbeSpec spec);
};

/// Span of the representatives, which equals A⊥⊥ in finite dimension.
Subspace perp_closure(const HermitianSpace& h, std::span<const Ray> rays);
bool ray_in(const Subspace& s, const Ray& x);

/// (O1) symmetry, (O2) x ⊥ x ⇔ x = 0, (O3) 0 ⊥ x over all probe pairs.
Report check_axioms(const ProbeSet& probes);

/// z with {x,y}⊥⊥ = {x,z}⊥⊥ and exactly one of y, z orthogonal to x:
/// ⟨x + y⟩ when x ⊥ y, else the component of y orthogonal to x.
Ray linearity_witness(const Ray& x, const Ray& y);
/// Checks linearity_witness on `pairs` seeded pairs of distinct proper probes.
Report check_linearity(const ProbeSet& probes, std::size_t pairs);

/// y ∈ P(S), z ∈ P(S⊥) with x ∈ {y,z}⊥⊥, read off from project(S, rep x).
std::pair<Ray, Ray> dacey_witness(const Subspace& s, const Ray& x);
Report check_dacey(const Subspace& s, const ProbeSet& probes);

struct FrechetSeparator {
  Ray ray;
  /// True when the separator is orthogonal to the first ray and not to the
  /// second; false for the reverse situation.
  bool perp_to_first;
};

/// A ray orthogonal to exactly one of x ≠ y; nullopt when x = y.
std::optional<FrechetSeparator> frechet_separator(const Ray& x, const Ray& y);
Report frechet_check(const ProbeSet& probes, std::size_t pairs);

/// f(x) ⊥ y ⇔ x ⊥ g(y) on all probe pairs. One record named "adjoint-pair";
/// on failure the witness holds the first violating pair and a count.
Report verify_adjoint_pair(const RayMap& f, const RayMap& g, const ProbeSet& probes1,
                           const ProbeSet& probes2);

/// Exact rank for induced maps; for oracles the rank of the span of the probe
/// images (a lower bound).
std::size_t ray_map_rank(const RayMap& f, const ProbeSet& probes);

/// f applied to every probe, evaluated in parallel, in probe order.
std::vector<Ray> map_probes(const RayMap& f, std::span<const Ray> rays);

}  // namespace olab
