#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace olab {

/// Base of every error raised by the library. Carries an optional structured
/// witness so callers (the CLI in particular) can report what went wrong.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, nlohmann::json witness = nullptr)
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  nlohmann::json witness_;
};

/// Malformed or mismatched input: wrong sfield, wrong dimension, bad file.
class InputError : public Error {
  using Error::Error;
};

class DivisionByZero : public Error {
  using Error::Error;
};

/// A Gram matrix failed its positivity certificate.
class CertificateError : public Error {
  using Error::Error;
};

/// Input vectors were linearly dependent; the witness holds the coefficients
/// of a vanishing combination.
class DependencyError : public Error {
  using Error::Error;
};

/// An operation was called outside its stated hypotheses (rank bounds etc.).
class PreconditionError : public Error {
  using Error::Error;
};

class NotOrthogonalityPreserving : public Error {
  using Error::Error;
};

/// Piziak factors or form relations disagree between basis vectors.
class InconsistencyError : public Error {
  using Error::Error;
};

/// A ray map is not induced by any semilinear map from the zoo.
class NotInducedError : public Error {
  using Error::Error;
};

class NotOrthoisoError : public Error {
  using Error::Error;
};

class NotPartialOrthometry : public Error {
  using Error::Error;
};

class TransportDegeneracy : public Error {
  using Error::Error;
};

class UnsupportedVariant : public Error {
  using Error::Error;
};

/// Short stable name of the most derived error class, for reports.
inline const char* error_name(const Error& e) {
  if (dynamic_cast<const InputError*>(&e)) return "InputError";
  if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
  if (dynamic_cast<const CertificateError*>(&e)) return "CertificateError";
  if (dynamic_cast<const DependencyError*>(&e)) return "DependencyError";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const NotOrthogonalityPreserving*>(&e)) return "NotOrthogonalityPreserving";
  if (dynamic_cast<const InconsistencyError*>(&e)) return "InconsistencyError";
  if (dynamic_cast<const NotInducedError*>(&e)) return "NotInducedError";
  if (dynamic_cast<const NotOrthoisoError*>(&e)) return "NotOrthoisoError";
  if (dynamic_cast<const NotPartialOrthometry*>(&e)) return "NotPartialOrthometry";
  if (dynamic_cast<const TransportDegeneracy*>(&e)) return "TransportDegeneracy";
  if (dynamic_cast<const UnsupportedVariant*>(&e)) return "UnsupportedVariant";
  return "Error";
}

}  // namespace olab
