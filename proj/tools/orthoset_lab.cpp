// orthoset_lab: run verification suites and one-shot constructions on
// Hermitian spaces and maps read from JSON files.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "olab/correspondence.hpp"
#include "olab/errors.hpp"
#include "olab/io.hpp"
#include "olab/suites.hpp"

namespace {

using json = nlohmann::json;
using namespace olab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string suite = "all";
  std::string kind;
  std::string space;
  std::string map;
  std::string subspace;
  std::string vector;
  std::string out;
  std::size_t probes = 256;
  std::uint64_t seed = 0;
  bool timings = false;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + opt.out);
  f << text;
}

int input_error(const Options& opt, const std::string& error, const std::string& message) {
  Report r;
  r.error("input", {{"error", error}, {"message", message}});
  try {
    emit(opt, r.to_jsonl());
  } catch (const std::exception& e) {
    std::cerr << "orthoset_lab: " << e.what() << '\n';
  }
  std::cerr << "orthoset_lab: " << message << '\n';
  return kExitInput;
}

// A map file may carry a claimed adjoint as an extra "adjoint" list of images.
std::optional<SemilinearMap> claimed_adjoint(const json& j) {
  if (!j.contains("adjoint")) return std::nullopt;
  json a{{"domain", j.contains("codomain") ? j.at("codomain") : j.at("domain")},
         {"codomain", j.at("domain")},
         {"images", j.at("adjoint")}};
  return io::map_from_json(a);
}

SuiteInputs load_inputs(const Options& opt) {
  SuiteInputs in;
  if (!opt.space.empty()) in.space = io::space_from_json(io::read_file(opt.space));
  if (!opt.map.empty()) {
    json j = io::read_file(opt.map);
    in.map = io::map_from_json(j);
    in.adjoint = claimed_adjoint(j);
  }
  if (!opt.subspace.empty()) in.subspace = io::subspace_from_json(io::read_file(opt.subspace));
  return in;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw InputError(std::string("this construction needs ") + flag);
  return *v;
}

json report_array(const Report& r, bool timings) { return r.to_json(timings); }

json basis_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(io::to_json(v));
  return out;
}

// Returns the result object; checks go into `report`.
json construct(const Options& opt, const SuiteInputs& in, Report& report) {
  const ProbeSpec probes{opt.seed, opt.probes};
  const std::string& kind = opt.kind;

  if (kind == "gram-schmidt") {
    if (opt.subspace.empty()) throw InputError("gram-schmidt needs --subspace");
    json j = io::read_file(opt.subspace);
    HermitianSpace h = io::space_from_json(j.at("space"));
    auto rows = io::basis_rows_from_json(j, h);
    auto e = gram_schmidt(h, rows);
    bool orthogonal = true;
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = a + 1; b < e.size(); ++b)
        orthogonal = orthogonal && herm_form(h, e[a], e[b]).is_zero();
    if (orthogonal) report.pass("gram-schmidt/orthogonal");
    else report.fail("gram-schmidt/orthogonal", {{"basis", basis_json(e)}});
    if (Subspace(h, e) == Subspace(h, rows)) report.pass("gram-schmidt/span");
    else report.fail("gram-schmidt/span", {{"basis", basis_json(e)}});
    return {{"orthogonal_basis", basis_json(e)}};
  }
  if (kind == "project") {
    const Subspace& s = need(in.subspace, "--subspace");
    if (opt.vector.empty()) throw InputError("project needs --vector");
    Vector u = io::vector_from_json(io::read_file(opt.vector), s.space());
    auto p = project(s, u);
    if (p.in_subspace + p.orthogonal == u && s.contains(p.in_subspace)) report.pass("project/sum");
    else report.fail("project/sum", {{"u", io::to_json(u)}});
    bool perp = true;
    for (const auto& b : s.basis()) perp = perp && herm_form(s.space(), p.orthogonal, b).is_zero();
    if (perp) report.pass("project/orthogonal");
    else report.fail("project/orthogonal", {{"orthogonal", io::to_json(p.orthogonal)}});
    return {{"in_subspace", io::to_json(p.in_subspace)}, {"orthogonal", io::to_json(p.orthogonal)}};
  }

  const SemilinearMap& phi = need(in.map, "--map");
  if (kind == "adjoint") {
    auto adj = adjoint_linear(phi);
    auto p1 = ProbeSet::generate(phi.domain(), probes);
    auto p2 = ProbeSet::generate(phi.codomain(), probes);
    report.merge(verify_adjoint_pair(induce(phi), induce(adj), p1, p2));
    return {{"adjoint", io::to_json(adj)}};
  }
  if (kind == "induce") {
    auto p1 = ProbeSet::generate(phi.domain(), probes);
    auto images = map_probes(induce(phi), p1.rays);
    json pairs = json::array();
    for (std::size_t i = 0; i < images.size(); ++i)
      pairs.push_back({{"x", io::rep_json(p1.rays[i])}, {"f(x)", io::rep_json(images[i])}});
    report.pass("induce/probes", {{"count", images.size()}});
    return {{"rays", std::move(pairs)}};
  }
  if (kind == "piziak") {
    Scalar lambda = piziak_lambda(phi, probes);
    report.pass("piziak/lambda");
    return {{"lambda", io::to_json(lambda)}, {"sigma", io::to_json(phi.sigma())}};
  }
  if (kind == "coordinatize") {
    // Hide the inducing map so reconstruction sees ray queries only.
    RayMap f = induce(phi);
    RayMap oracle = RayMap::oracle(phi.domain(), phi.codomain(), [f](const Ray& x) { return f(x); });
    std::optional<RayMap> adj;
    if (phi.is_linear()) {
      RayMap g = induce(adjoint_linear(phi));
      adj = RayMap::oracle(phi.codomain(), phi.domain(), [g](const Ray& y) { return g(y); });
    }
    auto c = coordinatize(oracle, adj, probes);
    report.merge(c.verified);
    if (phi.rank() >= 2) {
      auto kappa = scalar_ratio(c.map, phi);
      if (kappa) report.pass("coordinatize/scalar-ratio", {{"kappa", io::to_json(*kappa)}});
      else report.fail("coordinatize/scalar-ratio", {{"map", io::to_json(c.map)}});
    }
    return {{"map", io::to_json(c.map)}, {"sigma", io::to_json(c.sigma)}};
  }
  if (kind == "transport" || kind == "transport-unitary") {
    std::optional<TransportResult> t;
    if (kind == "transport") {
      t = transport_linear(phi, probes);
    } else {
      if (!phi.is_bijective()) throw InputError("transport-unitary needs a bijective map");
      auto cert = is_quasiunitary(phi);
      if (!cert) throw InputError("map is not quasiunitary");
      t = transport_unitary(phi, *cert, probes);
    }
    report.merge(t->report);
    return {{"space", io::to_json(t->new_space)},
            {"tau", io::to_json(t->tau)},
            {"composed", io::to_json(t->composed)},
            {"mu", io::to_json(t->mu)}};
  }
  if (kind == "partial-decompose") {
    SemilinearMap adj = in.adjoint ? *in.adjoint : adjoint_linear(phi);
    auto d = decompose_partial_orthometry(induce(phi), induce(adj), probes);
    report.merge(d.report);
    return {{"a", io::to_json(d.a)}, {"b", io::to_json(d.b)}};
  }
  throw InputError("unknown construction: " + kind);
}

int run(const Options& opt, bool verify) {
  SuiteInputs in;
  try {
    if (verify && !is_suite_name(opt.suite)) throw InputError("unknown suite: " + opt.suite);
    in = load_inputs(opt);
  } catch (const json::exception& e) {
    return input_error(opt, "ParseError", e.what());
  } catch (const Error& e) {
    return input_error(opt, error_name(e), e.what());
  }

  const ProbeSpec probes{opt.seed, opt.probes};
  Report report;
  std::string text;
  try {
    if (verify) {
      report = run_suite(opt.suite, in, probes);
      text = report.to_jsonl(opt.timings);
    } else {
      json result;
      try {
        result = construct(opt, in, report);
      } catch (const InputError&) {
        throw;
      } catch (const CertificateError&) {
        throw;
      } catch (const Error& e) {
        json w{{"error", error_name(e)}, {"message", e.what()}};
        if (!e.witness().is_null()) w["witness"] = e.witness();
        report.error(opt.kind, w);
      }
      json out{{"kind", opt.kind}, {"result", result}, {"report", report_array(report, opt.timings)}};
      text = out.dump(2) + "\n";
    }
  } catch (const json::exception& e) {
    return input_error(opt, "ParseError", e.what());
  } catch (const InputError& e) {
    return input_error(opt, error_name(e), e.what());
  } catch (const CertificateError& e) {
    return input_error(opt, error_name(e), e.what());
  }
  emit(opt, text);
  return report.ok() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification lab for orthosets of Hermitian spaces"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--space", opt.space, "Hermitian space JSON file");
    sub->add_option("--map", opt.map, "semilinear map JSON file");
    sub->add_option("--subspace", opt.subspace, "subspace JSON file");
    sub->add_option("--probes", opt.probes, "probe rays per space")->capture_default_str();
    sub->add_option("--seed", opt.seed, "probe and fixture seed")->capture_default_str();
    sub->add_option("--out", opt.out, "write the report here instead of stdout");
    sub->add_flag("--timings", opt.timings, "include elapsed milliseconds in records");
  };

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", opt.suite, "axioms, linearity, dacey, frechet, adjoint, piziak, wigner, transport, partial or all")
      ->capture_default_str();
  add_common(verify);

  auto* construct = app.add_subcommand("construct", "run one construction and self-check it");
  construct
      ->add_option("kind", opt.kind,
                   "gram-schmidt, project, adjoint, induce, piziak, coordinatize, transport, "
                   "transport-unitary or partial-decompose")
      ->required();
  construct->add_option("--vector", opt.vector, "coordinate list JSON file (project)");
  add_common(construct);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  return run(opt, verify->parsed());
}
