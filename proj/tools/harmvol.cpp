// harmvol: pointed harmonic volumes of the hyperelliptic curve w² = z^{2g+2} − 1.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "harmvol/commands.hpp"
#include "harmvol/error.hpp"
#include "harmvol/tensor_io.hpp"

namespace {

struct Flags {
  int genus = 2;
  std::string nu = "all";
  std::string engines;
  unsigned precision = harmvol::kDefaultPrecisionBits;
  double tol_line = 1e-10;
  double tol_iterated = 1e-8;
  double tol_modz = 1e-5;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::size_t random_count = 1000;
  std::string out;
  bool no_timing = false;
  bool serial = false;
  int max_genus = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool with_genus, const std::string& default_engines) {
  if (with_genus) cmd->add_option("--g", f.genus, "genus g ≥ 2")->capture_default_str();
  cmd->add_option("--nu", f.nu, "base index ν in 0…2g+1, or \"all\"")->capture_default_str();
  cmd->add_option("--engines", f.engines,
                  "comma list of combinatorial,composed,table,numeric; or exact, all (default " + default_engines + ")");
  cmd->add_option("--precision", f.precision, "MPFR working precision in bits")->capture_default_str();
  cmd->add_option("--tol-line", f.tol_line, "quadrature target for line integrals")->capture_default_str();
  cmd->add_option("--tol-iterated", f.tol_iterated, "quadrature target for iterated integrals")->capture_default_str();
  cmd->add_option("--tol-modz", f.tol_modz, "acceptance distance on ℝ/ℤ for numeric values")->capture_default_str();
  cmd->add_option("--format", f.format, "json, markdown or csv")->capture_default_str();
  cmd->add_option("--out", f.out, "write the report to FILE instead of stdout");
  cmd->add_flag("--serial", f.serial, "run kernels on one thread");
  cmd->add_option("--max-genus", f.max_genus, "raise the genus limit (default 8 exact, 3 numeric)");
}

harmvol::RunConfig to_config(const Flags& f) {
  harmvol::RunConfig c;
  c.genus = f.genus;
  if (f.nu != "all") {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(f.nu, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != f.nu.size()) throw harmvol::ParseError("--nu expects an integer or \"all\", got \"" + f.nu + "\"");
    c.nu = v;
  }
  c.engines = harmvol::EngineSet::parse(f.engines);
  c.quadrature.precision_bits = f.precision;
  c.quadrature.tol_line = f.tol_line;
  c.quadrature.tol_iterated = f.tol_iterated;
  c.tol_modz = f.tol_modz;
  c.format = harmvol::parse_report_format(f.format);
  c.seed = f.seed;
  c.random_count = f.random_count;
  c.timing = !f.no_timing;
  c.exec = f.serial ? harmvol::Execution::serial : harmvol::Execution::parallel;
  if (f.max_genus > 0) {
    c.max_genus_exact = f.max_genus;
    c.max_genus_numeric = f.max_genus;
  }
  return c;
}

int emit(const harmvol::CommandResult& r, const std::string& out) {
  if (out.empty()) {
    std::cout << r.output;
  } else {
    std::ofstream file(out);
    if (!file) {
      std::cerr << "error: cannot write " << out << "\n";
      return 2;
    }
    file << r.output;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointed harmonic volumes of w² = z^{2g+2} − 1: exact tables, ℤ/2 counts and a numeric oracle"};
  app.require_subcommand(1);
  Flags f;

  auto* table = app.add_subcommand("table", "I_ν on every canonical basis element of K⊗H");
  add_common(table, f, true, "exact");

  std::string tensor_file;
  auto* eval = app.add_subcommand("eval", "evaluate κ_ν, κ'_ν and other engines on a tensor file");
  eval->add_option("tensor", tensor_file, "tensor JSON file")->required();
  add_common(eval, f, false, "combinatorial,composed");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, f, true, "exact");
  verify->add_option("--seed", f.seed, "seed for the random sweeps")->capture_default_str();
  verify->add_option("--random-count", f.random_count, "random tensors per sweep")->capture_default_str();
  verify->add_flag("--no-timing", f.no_timing, "write 0 for every duration so reports are reproducible");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (f.engines.empty()) f.engines = eval->parsed() ? "combinatorial,composed" : "exact";
  try {
    const harmvol::RunConfig config = to_config(f);
    if (table->parsed()) return emit(harmvol::cmd_table(config), f.out);
    if (eval->parsed()) return emit(harmvol::cmd_eval(config, harmvol::read_tensor_file(tensor_file)), f.out);
    return emit(harmvol::cmd_verify(config), f.out);
  } catch (const harmvol::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const harmvol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
