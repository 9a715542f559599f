#pragma once

// Passing between semilinear maps and ray maps: inducing P(φ), the Piziak
// factor λ, scalar transport that turns quasilinear (quasiunitary) maps into
// linear (unitary) ones, reconstruction of φ from P(φ), and the factorization
// of partial orthometries.

#include <optional>

#include "olab/hermspace.hpp"
#include "olab/orthoset.hpp"
#include "olab/report.hpp"

namespace olab {

/// P(φ): ⟨u⟩ ↦ ⟨φ(u)⟩.
RayMap induce(const SemilinearMap& phi);

/// κ with ψ = κ·φ, or nullopt. φ must have rank ≥ 2 (PreconditionError).
std::optional<Scalar> scalar_ratio(const SemilinearMap& psi, const SemilinearMap& phi);

/// The unique λ with ⟨φ(u),φ(v)⟩₂ = ⟨u,v⟩₁^σ·λ for an orthogonality
/// preserving φ. λ_v = ⟨φ(w),φ(v)⟩₂ with ⟨w,v⟩₁ = 1 is computed for every
/// standard and orthogonal basis vector v and must agree.
///
/// Throws PreconditionError (dim < 2), NotOrthogonalityPreserving (witness
/// pair), InconsistencyError (λ_v disagree, the relation fails on basis pairs,
/// or λ∗ ≠ λ for bijective φ).
Scalar piziak_lambda(const SemilinearMap& phi, ProbeSpec probes = {});

struct TransportResult {
  /// H₂ re-coordinatized over the domain sfield.
  HermitianSpace new_space;
  /// The identity on vectors, σ⁻¹-semilinear as a map H₂ → H₂'.
  SemilinearMap tau;
  /// τ∘φ: linear, and unitary in the unitary variant.
  SemilinearMap composed;
  SfieldMorphism sigma;
  /// λ^{σ⁻¹} (1 for the linear variant).
  Scalar mu;
  Report report;

  /// α ↦ μ·σ⁻¹(σ(α)∗)·μ⁻¹, the involution H₂' is Hermitian for.
  Scalar transported_star(const Scalar& alpha) const;
};

/// Gram G'ᵢⱼ = σ⁻¹(Gᵢⱼ). Throws TransportDegeneracy if the result cannot be
/// certified.
TransportResult transport_linear(const SemilinearMap& phi, ProbeSpec probes = {});
/// Gram G'ᵢⱼ = σ⁻¹(Gᵢⱼ·λ⁻¹), making τ∘φ unitary. The certificate must come
/// from is_quasiunitary(phi) (InputError otherwise).
TransportResult transport_unitary(const SemilinearMap& phi, const QuasiunitaryCertificate& cert,
                                  ProbeSpec probes = {});

struct CoordinatizationResult {
  SemilinearMap map;
  SfieldMorphism sigma;
  Report verified;
};

/// Reconstructs φ with P(φ) = f from ray-level queries only:
///  1. K = (ker f)⊥, spanned by the adjoint's probe images (or, without an
///     adjoint, the complement of the probes f sends to zero);
///  2. orthogonal basis u₁..u_k of K;
///  3. φ(u₁) = rep f(⟨u₁⟩);
///  4. φ(uᵢ) scaled so that f(⟨u₁+uᵢ⟩) = ⟨φ(u₁)+φ(uᵢ)⟩;
///  5. σ on sfield generators g from f(⟨u₁+g·u₂⟩) = ⟨φ(u₁)+g^σ·φ(u₂)⟩,
///     classified into id / conj / inner(q);
///  6. σ-semilinear extension, zero on K⊥;
///  7. P(φ) = f on every probe.
/// Throws PreconditionError (rank < 3 or claimed adjoint fails) and
/// NotInducedError with a witness ray.
CoordinatizationResult coordinatize(const RayMap& f, const std::optional<RayMap>& adjoint,
                                    ProbeSpec probes = {});

struct WignerResult {
  CoordinatizationResult coordinatization;
  QuasiunitaryCertificate certificate;
};

/// Orthoisomorphism → quasiunitary φ (dims ≥ 3). Throws NotOrthoisoError
/// when f and f_inverse do not form an adjoint pair of mutual inverses.
WignerResult wigner_reconstruct(const RayMap& f, const RayMap& f_inverse, ProbeSpec probes = {});

/// The unitary φ inducing f with φ|_S = id_S.
SemilinearMap fix_subspace_normalize(const RayMap& f, const RayMap& f_inverse, const Subspace& s,
                                     ProbeSpec probes = {});

struct PartialOrthometryDecomposition {
  /// (ker f)⊥ = closure of im f∗.
  Subspace a;
  /// (ker f∗)⊥ = closure of im f.
  Subspace b;
  SubspaceFrame frame_a;
  SubspaceFrame frame_b;
  /// f restricted to P(A), corestricted to P(B), in frame coordinates.
  RayMap core;
  RayMap core_adjoint;
  /// ι_B ∘ core ∘ σ_A.
  RayMap reassembled;
  Report report;
};

/// Throws NotPartialOrthometry with a witness.
PartialOrthometryDecomposition decompose_partial_orthometry(const RayMap& f, const RayMap& f_adjoint,
                                                            ProbeSpec probes = {});

/// f → partial quasiisometry ι_B ∘ φ̂ ∘ proj_A with φ̂ from wigner_reconstruct
/// on the core. Needs dim (ker f)⊥ ≥ 3.
PartialIsometryDescriptor partial_wigner(const RayMap& f, const RayMap& f_adjoint,
                                         ProbeSpec probes = {});
/// Same, reusing a decomposition of f.
PartialIsometryDescriptor partial_wigner(const RayMap& f, const PartialOrthometryDecomposition& d,
                                         ProbeSpec probes = {});

struct PartialTransport {
  TransportResult transport;
  /// τ∘φ as a partial isometry into H₂'.
  PartialIsometryDescriptor isometry;
};

/// Turns a partial quasiisometry into a partial isometry by scalar transport.
PartialTransport partial_to_isometry(const PartialIsometryDescriptor& d, ProbeSpec probes = {});

}  // namespace olab
