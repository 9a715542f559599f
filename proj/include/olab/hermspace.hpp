#pragma once

// Finite-dimensional Hermitian spaces over the supported *-sfields.
//
// Vectors are coordinate rows under a left scalar action. The form is
// ⟨u,v⟩ = Σᵢⱼ uᵢ·Gᵢⱼ·vⱼ∗, linear in the first argument.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "olab/linalg.hpp"
#include "olab/starfields.hpp"

namespace olab {

using Matrix = std::vector<std::vector<Scalar>>;

/// A space whose Gram matrix carries an anisotropy certificate:
/// leading principal minors positive (Q, Qi) or positive diagonal (HQ).
/// Cheap to copy; copies share the immutable data.
class HermitianSpace {
 public:
  /// Throws CertificateError if the Gram matrix is not Hermitian or fails the
  /// positivity certificate, InputError on shape or sfield mismatch.
  HermitianSpace(Sfield f, Matrix gram);

  static HermitianSpace standard(Sfield f, std::size_t n);
  /// Diagonal Gram matrix with the given positive rational entries.
  static HermitianSpace diagonal(Sfield f, std::span<const Rational> entries);

  Sfield sfield() const { return data_->field; }
  std::size_t dim() const { return data_->dim; }
  const Matrix& gram() const { return data_->gram; }
  const Scalar& gram(std::size_t i, std::size_t j) const { return data_->gram[i][j]; }

  /// Leading principal minors (Q, Qi) or diagonal entries (HQ) that certify
  /// positive definiteness.
  const std::vector<Rational>& certificate() const { return data_->certificate; }

  Vector zero() const { return Vector(sfield(), dim()); }
  Vector unit(std::size_t i) const { return Vector::unit(sfield(), dim(), i); }
  Vector vector(std::vector<Scalar> coords) const;

  /// Throws InputError unless u is a vector of this space.
  void check(const Vector& u) const;

  friend bool operator==(const HermitianSpace& a, const HermitianSpace& b) {
    return a.data_ == b.data_ ||
           (a.sfield() == b.sfield() && a.dim() == b.dim() && a.gram() == b.gram());
  }

 private:
  struct Data {
    Sfield field;
    std::size_t dim;
    Matrix gram;
    std::vector<Rational> certificate;
  };
  std::shared_ptr<const Data> data_;
};

Scalar herm_form(const HermitianSpace& h, const Vector& u, const Vector& v);

/// Orthogonalizes linearly independent vectors, e_k = b_k − Σ_{i<k}
/// ⟨b_k,eᵢ⟩⟨eᵢ,eᵢ⟩⁻¹eᵢ. Throws DependencyError whose witness lists the
/// coefficients of a vanishing combination of the inputs.
std::vector<Vector> gram_schmidt(const HermitianSpace& h, std::span<const Vector> basis);

/// Subspace held by its reduced echelon basis; equality is basis equality.
class Subspace {
 public:
  explicit Subspace(HermitianSpace h) : space_(std::move(h)) {}
  /// Span of arbitrary vectors of h.
  Subspace(HermitianSpace h, std::span<const Vector> spanning);

  static Subspace full(const HermitianSpace& h);

  const HermitianSpace& space() const { return space_; }
  const std::vector<Vector>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  bool contains(const Vector& u) const;
  /// Pairwise orthogonal basis: gram_schmidt of the echelon basis.
  std::vector<Vector> orthogonal_basis() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.space_ == b.space_ && a.basis_ == b.basis_;
  }

 private:
  HermitianSpace space_;
  std::vector<Vector> basis_;
};

Subspace orthocomplement(const Subspace& s);

struct Projection {
  Vector in_subspace;
  Vector orthogonal;
};

/// u = u_S + u_⊥ with u_S = Σ ⟨u,eᵢ⟩⟨eᵢ,eᵢ⟩⁻¹eᵢ over an orthogonal basis of S.
Projection project(const Subspace& s, const Vector& u);

/// w with ⟨u,w⟩ = Σ uᵢ·ρᵢ for all u: for ρ ≠ 0 pick x ⊥ ker ρ with
/// ρ(x) = 1 and return ⟨x,x⟩⁻¹·x.
Vector dual_representative(const HermitianSpace& h, const Vector& rho);

/// A subspace viewed as a Hermitian space of its own: coordinates with respect
/// to the orthogonal basis of the subspace. The induced Gram matrix is diagonal.
class SubspaceFrame {
 public:
  explicit SubspaceFrame(const Subspace& s);

  const Subspace& subspace() const { return subspace_; }
  const HermitianSpace& space() const { return frame_space_; }
  const std::vector<Vector>& basis() const { return basis_; }

  /// Frame coordinates of the orthogonal projection of u onto the subspace.
  Vector coordinates(const Vector& u) const;
  /// Σ cᵢ·eᵢ in the ambient space.
  Vector embed(const Vector& c) const;

 private:
  Subspace subspace_;
  std::vector<Vector> basis_;
  HermitianSpace frame_space_;
};

/// φ(Σ αᵢeᵢ) = Σ αᵢ^σ·images[i]. Stored by basis images; the σ-twist acts only
/// on the input coefficients.
class SemilinearMap {
 public:
  SemilinearMap(HermitianSpace domain, HermitianSpace codomain, SfieldMorphism sigma,
                std::vector<Vector> images);

  static SemilinearMap identity(const HermitianSpace& h);
  static SemilinearMap zero(const HermitianSpace& domain, const HermitianSpace& codomain);
  static SemilinearMap linear(HermitianSpace domain, HermitianSpace codomain,
                              std::vector<Vector> images);

  const HermitianSpace& domain() const { return domain_; }
  const HermitianSpace& codomain() const { return codomain_; }
  const SfieldMorphism& sigma() const { return sigma_; }
  const std::vector<Vector>& images() const { return images_; }

  bool is_linear() const { return sigma_.is_identity(); }

  Vector apply(const Vector& u) const;
  std::size_t rank() const;
  bool is_bijective() const;

  Subspace kernel() const;
  Subspace image() const;

  /// κ·φ: images κ·φ(eᵢ), σ replaced by inner(κ)∘σ.
  SemilinearMap scaled(const Scalar& kappa) const;
  /// Inverse of a bijective map (σ⁻¹-semilinear). Throws InputError otherwise.
  SemilinearMap inverse() const;

  friend bool operator==(const SemilinearMap&, const SemilinearMap&) = default;

 private:
  HermitianSpace domain_;
  HermitianSpace codomain_;
  SfieldMorphism sigma_;
  std::vector<Vector> images_;
};

/// outer ∘ inner.
SemilinearMap compose(const SemilinearMap& outer, const SemilinearMap& inner);

/// The linear φ∗ with ⟨φ(u),v⟩₂ = ⟨u,φ∗(v)⟩₁; each φ∗(v) is the dual
/// representative of u ↦ ⟨φ(u),v⟩₂. Throws InputError for non-linear φ.
SemilinearMap adjoint_linear(const SemilinearMap& phi);

struct QuasiunitaryCertificate {
  SfieldMorphism sigma;
  Scalar lambda;
};

/// Checks ⟨φ(u),φ(v)⟩₂ = ⟨u,v⟩₁^σ·λ on all basis pairs and the involution
/// compatibility λ·σ(α)∗ = σ(α∗)·λ on sfield generators, which together give
/// the identity for all u, v. Throws InputError when φ is not bijective.
std::optional<QuasiunitaryCertificate> is_quasiunitary(const SemilinearMap& phi);

/// True when ⟨φ(u),φ(v)⟩₂ = ⟨u,v⟩₁^σ·λ holds for all u, v (same test as above
/// for a given λ, no bijectivity requirement).
bool satisfies_form_relation(const SemilinearMap& phi, const Scalar& lambda);

/// φ = ι₂ ∘ core ∘ proj_{s1}, where core acts between the frames of s1, s2.
struct PartialIsometryDescriptor {
  SemilinearMap map;
  Subspace s1;
  Subspace s2;
  SemilinearMap core;
  QuasiunitaryCertificate certificate;

  /// Linear with a unitary core.
  bool is_isometry() const {
    return certificate.sigma.is_identity() && certificate.lambda.is_one();
  }
};

/// The linear projection H → frame(S) and inclusion frame(S) → H.
SemilinearMap frame_projection(const SubspaceFrame& frame);
SemilinearMap frame_inclusion(const SubspaceFrame& frame);

PartialIsometryDescriptor make_partial_isometry(const Subspace& s1, const Subspace& s2,
                                                const SemilinearMap& core);

/// ψ with ker ψ = s2⊥ and ψ|_{s2}^{s1} = (φ|_{s1}^{s2})⁻¹. Throws
/// UnsupportedVariant for a quasi (non-unitary) core.
SemilinearMap generalized_inverse(const PartialIsometryDescriptor& d);

}  // namespace olab
