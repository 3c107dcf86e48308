// Copyright 2026 The qlga Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "qlga/decider.hpp"
#include "qlga/descriptor.hpp"
#include "qlga/heisenberg.hpp"
#include "qlga/sim.hpp"

namespace qlga::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string content_hash(const json& doc) {
  const std::string text = doc.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i)
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json residuals_json(const std::map<std::string, double>& m) {
  json j = json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

json validation_json(const ValidationReport& v) {
  return {{"unitary_ok", v.unitary_ok},
          {"translation_ok", v.translation_ok},
          {"causal_ok", v.causal_ok},
          {"forward_causal_ok", v.forward_causal_ok},
          {"backward_causal_ok", v.backward_causal_ok},
          {"quiescent_eigenvalue", complex_json(v.quiescent_eigenvalue)},
          {"residuals", residuals_json(v.residuals)},
          {"window", v.window},
          {"declared_neighborhood", v.declared_neighborhood},
          {"found_neighborhood", v.found_neighborhood},
          {"backend", v.backend}};
}

json dalgebra_json(const DAlgebraReport& r) {
  json offsets = json::array();
  for (size_t i = 0; i < r.offsets.size(); ++i)
    offsets.push_back({{"offset", r.offsets[i]},
                       {"d_dimension", r.dims[i]},
                       {"inactive_offset", static_cast<bool>(r.inactive[i])}});
  return {{"verdict", r.verdict ? "QLGA" : "NOT_QLGA"},
          {"offsets", offsets},
          {"d_dimensions", r.dims},
          {"span_dimension", r.span_dimension},
          {"cell_algebra_dimension", r.cell_algebra_dimension},
          {"backend", r.backend},
          {"window", r.window},
          {"residuals", residuals_json(r.residuals)}};
}

json roundtrip_json(const RoundTrip& rt) {
  return {{"window", rt.window},
          {"sampled", rt.sampled},
          {"structure", rt.structure},
          {"brick", rt.brick},
          {"hat", rt.hat}};
}

Tolerances tolerances(const Options& o) {
  Tolerances t;
  t.rank = o.tol;
  t.residual = o.tol;
  return t;
}

DecideOptions decide_options(const Options& o) {
  DecideOptions d;
  d.backend = parse_backend(o.backend);
  d.tol = tolerances(o);
  d.seed = o.seed;
  d.window = o.window;
  d.dense_cap = o.dense_cap;
  return d;
}

// Shared report skeleton plus output plumbing.
class Session {
 public:
  Session(const std::string& command, const Options& o, std::ostream& out)
      : o_(o), out_(out), t0_(Clock::now()) {
    report_["command"] = command;
    report_["input"] = o.input;
    report_["tool_version"] = kVersion;
    report_["backend"] = o.backend;
    report_["seed"] = o.seed;
    report_["tolerance"] = o.tol;
    if (!o.window.empty()) report_["window"] = o.window;
  }

  json& report() { return report_; }

  QcaDescriptor load() {
    auto t = Clock::now();
    QcaDescriptor d = load_descriptor(o_.input, std::max(o_.tol, 1e-12) * 10);
    report_["content_hash"] = content_hash(d.source);
    report_["evolution_type"] = d.evolution_type();
    lap("parse", t);
    return d;
  }

  void lap(const std::string& name, Clock::time_point t) { timings_[name] = ms_since(t); }

  int finish(int code) {
    report_["exit_code"] = code;
    if (o_.timings) {
      timings_["total"] = ms_since(t0_);
      report_["timings_ms"] = timings_;
    }
    write_json(report_, o_.out, out_);
    return code;
  }

  static void write_json(const json& j, const std::string& path, std::ostream& fallback) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
      fallback << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  json report_;
  json timings_ = json::object();
  Clock::time_point t0_;
};

// Maps exceptions to exit codes, keeping a partial report.
template <typename F>
int guarded(Session& s, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "invalid descriptor: " << e.what() << "\n";
    s.report()["error"] = {{"kind", "parse"}, {"path", e.path()}, {"message", e.what()}};
    return s.finish(kInvalid);
  } catch (const CausalityError& e) {
    err << "causality violation: " << e.what() << "\n";
    s.report()["error"] = {{"kind", "causality"}, {"message", e.what()}};
    return s.finish(kInvalid);
  } catch (const StructuralError& e) {
    err << "structural error: " << e.what() << "\n";
    s.report()["error"] = {{"kind", "structural"}, {"message", e.what()}};
    return s.finish(kInvalid);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    s.report()["error"] = {{"kind", "numerical"}, {"message", e.what()}};
    return s.finish(kNumerical);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    s.report()["error"] = {{"kind", "internal"}, {"message", e.what()}};
    return s.finish(kNumerical);
  }
}

// Validation then criterion. Returns an exit code when the pipeline stops
// early (invalid descriptor), else -1.
int validated(Session& s, const QcaDescriptor& d, const Options& o, std::ostream& err) {
  auto t = Clock::now();
  ValidationReport v = validate(d, std::max(o.tol, 1e-12) * 10);
  s.lap("validate", t);
  s.report()["validation"] = validation_json(v);
  if (!v.unitary_ok || !v.translation_ok || !v.causal_ok) {
    err << "descriptor fails the automaton axioms";
    if (!v.causal_ok) err << " (found neighborhood " << json(v.found_neighborhood).dump() << ")";
    err << "\n";
    return s.finish(kInvalid);
  }
  return -1;
}

fs::path artifact_dir(const Options& o) {
  if (o.out.empty()) return fs::current_path();
  fs::path p = fs::path(o.out).parent_path();
  return p.empty() ? fs::current_path() : p;
}

}  // namespace

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  Session s("check", o, out);
  return guarded(s, err, [&] {
    QcaDescriptor d = s.load();
    if (int c = validated(s, d, o, err); c >= 0) return c;
    auto t = Clock::now();
    DAlgebraReport r = criterion_report(d, parse_backend(o.backend), tolerances(o));
    s.lap("criterion", t);
    s.report()["criterion"] = dalgebra_json(r);
    return s.finish(r.verdict ? kQlga : kNotQlga);
  });
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  Session s("decompose", o, out);
  return guarded(s, err, [&] {
    QcaDescriptor d = s.load();
    if (int c = validated(s, d, o, err); c >= 0) return c;
    auto t = Clock::now();
    ClassificationResult r = decide(d, decide_options(o));
    s.lap("decide", t);
    s.report()["criterion"] = dalgebra_json(r.report);
    if (!r.qlga) return s.finish(kNotQlga);

    json fz = {{"offsets", r.factorization.offsets},
               {"factor_dims", r.factorization.factor_dims},
               {"isomorphism", matrix_to_json(r.factorization.S)},
               {"collision", matrix_to_json(r.collision)},
               {"quiescent_fix",
                {{"trivial", r.quiescent_fix.trivial},
                 {"u", matrix_to_json(r.quiescent_fix.u)},
                 {"schmidt_tails", r.quiescent_fix.schmidt_tails}}},
               {"factor_residuals", r.factorization.residuals},
               {"unitarity_residual", r.factorization.unitarity_residual},
               {"content_hash", s.report()["content_hash"]}};
    const std::string stem = fs::path(o.input).stem().string();
    const fs::path dir = artifact_dir(o);
    const fs::path fpath = dir / (stem + ".factorization.json");
    const fs::path qpath = dir / (stem + ".qlga.json");
    Session::write_json(fz, fpath.string(), out);
    Session::write_json(to_json(to_qlga_descriptor(d, r)), qpath.string(), out);

    s.report()["decomposition"] = {
        {"factor_dims", r.factorization.factor_dims},
        {"offsets", r.factorization.offsets},
        {"factor_residuals", r.factorization.residuals},
        {"isomorphism_unitarity_residual", r.factorization.unitarity_residual},
        {"collision_unitarity_residual", r.collision_unitarity},
        {"collision_quiescent_residual", r.collision_quiescent},
        {"extraction_consistency", r.extraction_consistency},
        {"quiescent_fix_trivial", r.quiescent_fix.trivial},
        {"roundtrip", roundtrip_json(r.roundtrip)},
        {"roundtrip_next", roundtrip_json(r.roundtrip_next)},
        {"factorization_file", fpath.filename().string()},
        {"qlga_file", qpath.filename().string()}};
    return s.finish(kQlga);
  });
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  Session s("simulate", o, out);
  return guarded(s, err, [&] {
    QcaDescriptor d = s.load();
    if (!d.is_qlga()) {
      err << "simulate needs a qlga-form descriptor; run decompose first and simulate its "
             ".qlga.json output\n";
      return s.finish(kNotQlga);
    }
    if (o.steps < 0) throw StructuralError("--steps must be non-negative");
    std::ifstream f(o.state);
    if (!f) throw ParseError("", "cannot open " + o.state);
    json sj;
    try {
      f >> sj;
    } catch (const json::exception& e) {
      throw ParseError("", std::string("invalid JSON: ") + e.what());
    }
    const QlgaEvolution& g = d.qlga();
    ConfigState st = state_from_json(sj, g, d.n);
    auto t = Clock::now();
    std::vector<double> norms;
    ConfigState fin = run(st, g, o.steps, &norms);
    s.lap("run", t);
    s.report()["steps"] = o.steps;
    s.report()["initial_norm"] = st.norm();
    s.report()["norm_log"] = norms;
    s.report()["state"] = state_to_json(fin);
    return s.finish(kQlga);
  });
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  Session s("verify", o, out);
  return guarded(s, err, [&] {
    QcaDescriptor d = s.load();
    if (int c = validated(s, d, o, err); c >= 0) return c;
    auto t = Clock::now();
    DecideOptions dopt = decide_options(o);
    ClassificationResult r = decide(d, dopt);
    s.lap("decide", t);
    s.report()["criterion"] = dalgebra_json(r.report);
    if (!r.qlga) {
      err << "not a QLGA; nothing to verify\n";
      return s.finish(kNotQlga);
    }
    RoundTrip a = r.roundtrip, b = r.roundtrip_next;
    if (!o.reference.empty()) {
      QcaDescriptor ref = load_descriptor(o.reference, std::max(o.tol, 1e-12) * 10);
      s.report()["reference"] = {{"path", o.reference}, {"content_hash", content_hash(ref.source)}};
      if (ref.n != d.n || ref.cell.dim != d.cell.dim || ref.neighborhood.offsets != d.neighborhood.offsets)
        throw StructuralError("reference lattice, cell or neighborhood differs from the input");
      ClassificationResult claimed = from_qlga_descriptor(ref);
      t = Clock::now();
      a = roundtrip_residual(d, claimed, a.window, o.dense_cap);
      b = roundtrip_residual(d, claimed, b.window, o.dense_cap);
      s.lap("reference", t);
    }
    const double worst = std::max(a.max(), b.max());
    const bool l_independent = std::abs(a.max() - b.max()) <= 10 * o.tol &&
                               r.extraction_consistency <= 100 * o.tol;
    s.report()["roundtrip"] = roundtrip_json(a);
    s.report()["roundtrip_next"] = roundtrip_json(b);
    s.report()["extraction_consistency"] = r.extraction_consistency;
    s.report()["l_independent"] = l_independent;
    s.report()["max_residual"] = worst;
    const bool ok = worst <= o.tol && l_independent;
    s.report()["passed"] = ok;
    if (!ok) err << "round-trip residual " << worst << " exceeds tolerance " << o.tol << "\n";
    return s.finish(ok ? kQlga : kNumerical);
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Decide whether a quantum cellular automaton is a quantum lattice-gas automaton"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("descriptor", o.input, "Descriptor JSON file")->required();
    c->add_option("--tol", o.tol, "Numerical tolerance")->capture_default_str();
    c->add_option("--window", o.window, "Verification ring lengths per axis");
    c->add_option("--backend", o.backend, "dense, clifford or auto")
        ->check(CLI::IsMember({"dense", "clifford", "auto"}))
        ->capture_default_str();
    c->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    c->add_option("--out", o.out, "Report path (default stdout)");
    c->add_flag("--no-timings", [&](std::int64_t) { o.timings = false; }, "Omit timings");
    c->add_option("--dense-cap", o.dense_cap, "Largest ring dimension compared densely")
        ->capture_default_str();
  };
  auto* check = app.add_subcommand("check", "Evaluate the lattice-gas criterion");
  common(check);
  auto* dec = app.add_subcommand("decompose", "Factorize and extract the collision operator");
  common(dec);
  auto* sim = app.add_subcommand("simulate", "Run a qlga-form descriptor on a state file");
  common(sim);
  sim->add_option("state", o.state, "State JSON file")->required();
  sim->add_option("--steps", o.steps, "Number of steps")->capture_default_str();
  auto* ver = app.add_subcommand("verify", "Round-trip residuals of the decomposition");
  common(ver);
  ver->add_option("--reference", o.reference, "Compare against this qlga-form descriptor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }
  if (o.window.size() > 0) {
    for (int x : o.window)
      if (x < 1) {
        std::cerr << "--window entries must be positive\n";
        return kInvalid;
      }
  }
  try {
    if (*check) return cmd_check(o, std::cout, std::cerr);
    if (*dec) return cmd_decompose(o, std::cout, std::cerr);
    if (*sim) return cmd_simulate(o, std::cout, std::cerr);
    return cmd_verify(o, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
}

}  // namespace qlga::cli
