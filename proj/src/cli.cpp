#include "quadext/cli.hpp"

#include "quadext/extend.hpp"
#include "quadext/instance_io.hpp"
#include "quadext/normcalc.hpp"
#include "quadext/selftest.hpp"
#include "quadext/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <string>

namespace quadext {

namespace {

struct GlobalFlags {
  double tol = 1e-9;
  int samples = 100000;
  std::uint64_t seed = 0;
};

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) {
  nlohmann::ordered_json doc;
  doc["error"] = kind;
  doc["message"] = message;
  for (const auto& [k, v] : extra.items()) doc[k] = v;
  err << doc.dump() << '\n';
}

std::string vector_text(const Vector& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v(i));
  }
  return s + "]";
}

int cmd_norm(const std::string& path, const GlobalFlags& g, std::ostream& out) {
  const Instance inst = parse_instance(read_text_file(path));
  const NormResult r = norm_on_subspace(inst.quad, inst.space, g.tol);
  out << "{\n"
      << "  \"norm\": " << format_number(r.value) << ",\n"
      << "  \"certificate\": {\"alpha\": " << format_number(r.certificate.alpha)
      << ", \"beta\": " << format_number(r.certificate.beta) << ", \"scale\": " << format_number(r.value) << "},\n"
      << "  \"witness\": " << vector_text(r.lower_witness) << "\n"
      << "}\n";
  return kExitOk;
}

int cmd_extend(const std::string& path, const std::string& out_path, const ExtendOptions& flags, const GlobalFlags& g,
               std::ostream& out, std::ostream& err) {
  const Instance inst = parse_instance(read_text_file(path));
  ExtendOptions options = flags;
  options.tol = g.tol;
  const auto emit = [&](const ExtensionReport& report) {
    const std::string text = serialize_extension(report);
    if (out_path.empty()) {
      out << text;
    } else {
      write_text_file(out_path, text);
    }
  };
  try {
    emit(extend(inst.space, inst.quad, options));
    return kExitOk;
  } catch (const VerificationFailure& e) {
    emit(e.report());
    report_error(err, to_string(e.kind()), e.what());
    return kExitFailed;
  } catch (const DegenerateZ& e) {
    report_error(err, to_string(e.kind()), e.what(),
                 {{"phi_z", e.phi_z()}, {"zero_eigs", {e.zero_eigs1(), e.zero_eigs2()}}});
    return kExitDegenerateZ;
  }
}

int cmd_verify(const std::string& path, const std::string& ext_path, const GlobalFlags& g, std::ostream& out) {
  const Instance inst = parse_instance(read_text_file(path));
  const ExtensionFile ext = parse_extension(read_text_file(ext_path));
  if (ext.extended.rows() != inst.space.dim())
    throw InvalidInput("extension dimension does not match the instance dimension");
  VerifyTolerances vt;
  vt.samples = g.samples;
  vt.seed = g.seed;
  const VerificationReport r = verify_extension(inst.space, inst.quad, SymForm(ext.extended), vt);
  out << "{\n"
      << "  \"pass\": " << (r.passed() ? "true" : "false") << ",\n"
      << "  \"restriction_ok\": " << (r.restriction_ok ? "true" : "false") << ",\n"
      << "  \"norm_ok\": " << (r.norm_ok ? "true" : "false") << ",\n"
      << "  \"sampler_ok\": " << (r.sampler_ok ? "true" : "false") << ",\n"
      << "  \"agreement_residual\": " << format_number(r.agreement_residual) << ",\n"
      << "  \"original_norm\": " << format_number(r.original_norm) << ",\n"
      << "  \"extended_norm\": " << format_number(r.extended_norm) << ",\n"
      << "  \"sampled_lower_bound\": " << format_number(r.sampled_lower_bound) << "\n"
      << "}\n";
  return r.passed() ? kExitOk : kExitFailed;
}

int cmd_gen(long long dim, long long subdim, double cond, const std::string& out_path, const GlobalFlags& g,
            std::ostream& out) {
  if (dim < 1) throw InvalidInput("--dim must be >= 1");
  if (subdim < 1 || subdim > dim) throw InvalidInput("--subdim must be in [1, dim]");
  if (!(cond >= 1.0)) throw InvalidInput("--cond must be >= 1");
  const auto [space, quad] = random_instance({dim, subdim, g.seed, cond});
  const std::string text = serialize_instance(space, quad);
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
  return kExitOk;
}

int cmd_selftest(int instances, unsigned threads, const GlobalFlags& g, std::ostream& out) {
  if (instances < 1) throw InvalidInput("--instances must be >= 1");
  SelftestOptions options;
  options.instances = instances;
  options.seed = g.seed;
  options.samples = g.samples;
  options.tol = g.tol;
  options.threads = threads;
  const SelftestSummary summary = run_selftest(options);
  print_selftest(summary, out);
  return summary.all_passed() ? kExitOk : kExitFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norms and norm-preserving extensions of quadratic forms on two-ellipsoid spaces", "quadext"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--tol", g.tol, "Pencil feasibility tolerance")->capture_default_str();
  app.add_option("--samples", g.samples, "Sampling budget for verification")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();

  std::string file;
  std::string second;
  std::string out_path;

  CLI::App* norm = app.add_subcommand("norm", "Print the norm of the form on its subspace with a certificate");
  norm->add_option("file", file, "Instance file")->required();
  norm->fallthrough();

  ExtendOptions ext_flags;
  CLI::App* ext = app.add_subcommand("extend", "Construct a norm-preserving extension");
  ext->add_option("file", file, "Instance file")->required();
  ext->add_option("-o,--out", out_path, "Output path (stdout if omitted)");
  ext->add_flag("--zeros-negative", ext_flags.zeros_negative,
                "Put zero eigenvalues on the negative side of each split");
  ext->add_option("--z-tol", ext_flags.z_tol, "Minimum |phi(z)| / (|phi| |z|) for the projection direction")
      ->capture_default_str();
  ext->fallthrough();

  CLI::App* ver = app.add_subcommand("verify", "Check an extension file against its instance");
  ver->add_option("file", file, "Instance file")->required();
  ver->add_option("extension", second, "Extension file")->required();
  ver->fallthrough();

  long long dim = 0;
  long long subdim = 0;
  double cond = 1e3;
  CLI::App* gen = app.add_subcommand("gen", "Write a random instance");
  gen->add_option("--dim", dim, "Ambient dimension")->required();
  gen->add_option("--subdim", subdim, "Subspace dimension")->required();
  gen->add_option("--cond", cond, "Eigenvalue spread cap of the inner products")->capture_default_str();
  gen->add_option("-o,--out", out_path, "Output path (stdout if omitted)");
  gen->fallthrough();

  int instances = 1;
  unsigned threads = 0;
  CLI::App* self = app.add_subcommand("selftest", "Generate, extend and verify a corpus of instances");
  self->add_option("--instances", instances, "Number of instances")->capture_default_str();
  self->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();
  self->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    report_error(err, "invalid-input", e.what());
    return kExitInvalidInput;
  }

  try {
    if (*norm) return cmd_norm(file, g, out);
    if (*ext) return cmd_extend(file, out_path, ext_flags, g, out, err);
    if (*ver) return cmd_verify(file, second, g, out);
    if (*gen) return cmd_gen(dim, subdim, cond, out_path, g, out);
    if (*self) return cmd_selftest(instances, threads, g, out);
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    const bool bad_input = e.kind() == ErrorKind::invalid_input || e.kind() == ErrorKind::not_positive_definite;
    return bad_input ? kExitInvalidInput : kExitFailed;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kExitFailed;
  }
  return kExitInvalidInput;
}

}  // namespace quadext
