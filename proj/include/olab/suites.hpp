#pragma once
// Named verification suites shared by the CLI and the acceptance tests.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "olab/hermspace.hpp"
#include "olab/orthoset.hpp"
#include "olab/report.hpp"

namespace olab {

/// Optional user-supplied objects. Missing ones are replaced by seeded random
/// fixtures, one per sfield.
struct SuiteInputs {
  std::optional<HermitianSpace> space;
  std::optional<SemilinearMap> map;
  /// A claimed adjoint for `map`, checked instead of the computed one.
  std::optional<SemilinearMap> adjoint;
  std::optional<Subspace> subspace;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(std::string_view name);

/// Runs one suite (or "all"). Library errors raised by a check become error
/// records; InputError and CertificateError from mismatched inputs propagate.
Report run_suite(std::string_view suite, const SuiteInputs& inputs, ProbeSpec probes);

}  // namespace olab
