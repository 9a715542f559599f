#include "olab/suites.hpp"

#include <algorithm>
#include <chrono>

#include "olab/correspondence.hpp"
#include "olab/errors.hpp"
#include "olab/io.hpp"
#include "olab/random.hpp"

namespace olab {

namespace {

constexpr Sfield kFields[] = {Sfield::Q, Sfield::Qi, Sfield::HQ};

struct Context {
  const SuiteInputs& inputs;
  ProbeSpec probes;
};

using json = nlohmann::json;

json error_witness(const Error& e) {
  json w{{"error", error_name(e)}, {"message", e.what()}};
  if (!e.witness().is_null()) w["witness"] = e.witness();
  return w;
}

// Runs body; a library error becomes an error record under `check`. Bad
// inputs are the caller's problem and propagate.
template <class Body>
void guarded(Report& report, const std::string& check, Body&& body) {
  try {
    body();
  } catch (const InputError&) {
    throw;
  } catch (const CertificateError&) {
    throw;
  } catch (const Error& e) {
    report.error(check, error_witness(e));
  }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt, Sfield f) {
  return seed * 0x9e3779b97f4a7c15ULL + salt * 0xbf58476d1ce4e5b9ULL + static_cast<std::uint64_t>(f) + 1;
}

template <class Make>
std::vector<std::pair<std::string, HermitianSpace>> spaces(const Context& c, std::uint64_t salt,
                                                           Make make) {
  std::vector<std::pair<std::string, HermitianSpace>> out;
  if (c.inputs.space) {
    out.emplace_back("input", *c.inputs.space);
    return out;
  }
  for (Sfield f : kFields) {
    Rng rng(mix(c.probes.seed, salt, f));
    out.emplace_back(std::string(sfield_name(f)), make(rng, f));
  }
  return out;
}

template <class Make>
std::vector<std::pair<std::string, SemilinearMap>> maps(const Context& c, std::uint64_t salt,
                                                        Make make) {
  std::vector<std::pair<std::string, SemilinearMap>> out;
  if (c.inputs.map) {
    out.emplace_back("input", *c.inputs.map);
    return out;
  }
  for (Sfield f : kFields) {
    Rng rng(mix(c.probes.seed, salt, f));
    out.emplace_back(std::string(sfield_name(f)), make(rng, f));
  }
  return out;
}

HermitianSpace random_space(Rng& rng, Sfield f) { return gen::space(rng, f, 3); }

Report with_prefix(Report r, const std::string& prefix) {
  r.prefix(prefix);
  return r;
}

Report suite_axioms(const Context& c) {
  Report report;
  for (const auto& [label, h] : spaces(c, 1, random_space))
    report.merge(with_prefix(check_axioms(ProbeSet::generate(h, c.probes)), label));
  return report;
}

Report suite_linearity(const Context& c) {
  Report report;
  for (const auto& [label, h] : spaces(c, 2, random_space))
    report.merge(with_prefix(check_linearity(ProbeSet::generate(h, c.probes), c.probes.count), label));
  return report;
}

Report suite_frechet(const Context& c) {
  Report report;
  for (const auto& [label, h] : spaces(c, 3, random_space))
    report.merge(with_prefix(frechet_check(ProbeSet::generate(h, c.probes), c.probes.count), label));
  return report;
}

Report suite_dacey(const Context& c) {
  Report report;
  std::vector<std::pair<std::string, Subspace>> cases;
  if (c.inputs.subspace) {
    cases.emplace_back("input", *c.inputs.subspace);
  } else {
    for (const auto& [label, h] : spaces(c, 4, random_space)) {
      Rng rng(mix(c.probes.seed, 40, h.sfield()));
      std::size_t k = h.dim() < 2 ? h.dim() : static_cast<std::size_t>(rng.uniform(1, h.dim() - 1));
      cases.emplace_back(label, gen::subspace(rng, h, k));
    }
  }
  for (const auto& [label, s] : cases) {
    Report r = check_dacey(s, ProbeSet::generate(s.space(), c.probes));
    Subspace back = orthocomplement(orthocomplement(s));
    if (back == s && s.dim() + orthocomplement(s).dim() == s.space().dim())
      r.pass("double-complement", {{"dim", s.dim()}});
    else
      r.fail("double-complement", {{"dim", s.dim()}, {"dim_perp_perp", back.dim()}});
    report.merge(with_prefix(std::move(r), label));
  }
  return report;
}

Report suite_adjoint(const Context& c) {
  Report report;
  auto cases = maps(c, 5, [](Rng& rng, Sfield f) {
    auto h1 = gen::space(rng, f, 3);
    auto h2 = gen::space(rng, f, 3);
    return gen::linear_map(rng, h1, h2);
  });
  for (const auto& [label, phi] : cases) {
    Report r;
    guarded(r, "adjoint", [&] {
      SemilinearMap g = c.inputs.adjoint && label == "input" ? *c.inputs.adjoint : adjoint_linear(phi);
      json bad;
      for (std::size_t i = 0; i < phi.domain().dim() && bad.is_null(); ++i)
        for (std::size_t j = 0; j < phi.codomain().dim(); ++j) {
          auto lhs = herm_form(phi.codomain(), phi.images()[i], phi.codomain().unit(j));
          auto rhs = herm_form(phi.domain(), phi.domain().unit(i), g.apply(phi.codomain().unit(j)));
          if (!(lhs == rhs)) {
            bad = {{"i", i}, {"j", j}, {"lhs", io::to_json(lhs)}, {"rhs", io::to_json(rhs)}};
            break;
          }
        }
      if (bad.is_null())
        r.pass("basis-pairs");
      else
        r.fail("basis-pairs", bad);
      auto p1 = ProbeSet::generate(phi.domain(), c.probes);
      auto p2 = ProbeSet::generate(phi.codomain(), c.probes);
      RayMap f = induce(phi);
      RayMap fg = induce(g);
      r.merge(verify_adjoint_pair(f, fg, p1, p2));
      auto rf = ray_map_rank(f, p1);
      auto rg = ray_map_rank(fg, p2);
      if (rf == rg)
        r.pass("rank", {{"rank", rf}});
      else
        r.fail("rank", {{"rank_f", rf}, {"rank_adjoint", rg}});
    });
    report.merge(with_prefix(std::move(r), label));
  }
  return report;
}

SemilinearMap random_quasiunitary(Rng& rng, Sfield f) {
  return gen::quasiunitary_map(rng, gen::space(rng, f, 3));
}

Report suite_piziak(const Context& c) {
  Report report;
  for (const auto& [label, phi] : maps(c, 6, random_quasiunitary)) {
    Report r;
    guarded(r, "lambda", [&] {
      Scalar lambda = piziak_lambda(phi, c.probes);
      r.pass("lambda", {{"lambda", io::to_json(lambda)}, {"sigma", io::to_json(phi.sigma())}});
    });
    report.merge(with_prefix(std::move(r), label));
  }
  return report;
}

Report suite_wigner(const Context& c) {
  Report report;
  for (const auto& [label, phi] : maps(c, 7, random_quasiunitary)) {
    Report r;
    guarded(r, "reconstruct", [&] {
      if (!phi.is_bijective()) throw InputError("wigner suite needs a bijective map");
      auto w = wigner_reconstruct(induce(phi), induce(phi.inverse()), c.probes);
      r.merge(w.coordinatization.verified);
      auto kappa = scalar_ratio(w.coordinatization.map, phi);
      if (kappa)
        r.pass("scalar-ratio", {{"kappa", io::to_json(*kappa)}});
      else
        r.fail("scalar-ratio", {{"reconstructed", io::to_json(w.coordinatization.map)}});
    });
    report.merge(with_prefix(std::move(r), label));
  }
  return report;
}

Report suite_transport(const Context& c) {
  Report report;
  for (const auto& [label, phi] : maps(c, 8, random_quasiunitary)) {
    Report r;
    guarded(r, "linear", [&] { r.merge(with_prefix(transport_linear(phi, c.probes).report, "linear")); });
    guarded(r, "unitary", [&] {
      std::optional<QuasiunitaryCertificate> cert;
      if (phi.is_bijective()) cert = is_quasiunitary(phi);
      if (!cert) {
        r.fail("unitary", {{"message", "map is not quasiunitary"}});
        return;
      }
      r.merge(with_prefix(transport_unitary(phi, *cert, c.probes).report, "unitary"));
    });
    report.merge(with_prefix(std::move(r), label));
  }
  return report;
}

Report suite_partial(const Context& c) {
  Report report;
  std::vector<std::pair<std::string, SemilinearMap>> cases;
  if (c.inputs.map) {
    cases.emplace_back("input", *c.inputs.map);
  } else {
    for (Sfield f : kFields) {
      Rng rng(mix(c.probes.seed, 9, f));
      auto h = gen::space(rng, f, 4);
      cases.emplace_back(std::string(sfield_name(f)), gen::partial_isometry(rng, h, 3).map);
    }
  }
  for (const auto& [label, phi] : cases) {
    Report r;
    guarded(r, "decompose", [&] {
      SemilinearMap adj = c.inputs.adjoint && label == "input" ? *c.inputs.adjoint : adjoint_linear(phi);
      RayMap f = induce(phi);
      RayMap g = induce(adj);
      auto d = decompose_partial_orthometry(f, g, c.probes);
      r.merge(d.report);
      Subspace a = orthocomplement(phi.kernel());
      Subspace b = phi.image();
      if (d.a == a && d.b == b)
        r.pass("partial/subspaces", {{"dim", a.dim()}});
      else
        r.fail("partial/subspaces", {{"expected_a", io::to_json(a)}, {"found_a", io::to_json(d.a)}});
      auto desc = partial_wigner(f, d, c.probes);
      auto kappa = scalar_ratio(desc.map, phi);
      if (kappa)
        r.pass("partial/scalar-ratio", {{"kappa", io::to_json(*kappa)}});
      else
        r.fail("partial/scalar-ratio", {{"reconstructed", io::to_json(desc.map)}});
      auto t = partial_to_isometry(desc, c.probes);
      r.merge(t.transport.report);
      auto gi = generalized_inverse(t.isometry);
      if (gi == adjoint_linear(t.isometry.map))
        r.pass("partial/generalized-inverse");
      else
        r.fail("partial/generalized-inverse", {{"generalized_inverse", io::to_json(gi)}});
    });
    report.merge(with_prefix(std::move(r), label));
  }
  return report;
}

using SuiteFn = Report (*)(const Context&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"axioms", suite_axioms},   {"linearity", suite_linearity}, {"dacey", suite_dacey},
      {"frechet", suite_frechet}, {"adjoint", suite_adjoint},     {"piziak", suite_piziak},
      {"wigner", suite_wigner},   {"transport", suite_transport}, {"partial", suite_partial},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    n.push_back("all");
    return n;
  }();
  return names;
}

bool is_suite_name(std::string_view name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

Report run_suite(std::string_view suite, const SuiteInputs& inputs, ProbeSpec probes) {
  if (!is_suite_name(suite)) throw InputError("unknown suite: " + std::string(suite));
  Context c{inputs, probes};
  Report report;
  for (const auto& [name, fn] : registry()) {
    if (suite != "all" && suite != name) continue;
    auto start = std::chrono::steady_clock::now();
    Report r = fn(c);
    r.set_elapsed(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    r.prefix(name);
    report.merge(r);
  }
  return report;
}

}  // namespace olab
