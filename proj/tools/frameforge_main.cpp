#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frameforge/cli.hpp"

namespace {

using frameforge::Command;
using frameforge::GeneratorSpec;
using frameforge::RunConfig;

struct Flags {
  std::vector<std::size_t> harmonic, random, union_of;
  std::optional<std::size_t> basis;
  std::string theorem, method = "exhaustive";
};

void add_numeric_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--tol-rank", c.tol_rank, "relative rank tolerance");
  sub->add_option("--tol-eig", c.tol_eig, "absolute eigenvalue tolerance");
  sub->add_flag("--exact", c.exact, "exact rational rank decisions");
  sub->add_option("-o,--output", c.output_path, "output path (default stdout)");
}

void add_source_flags(CLI::App* sub, RunConfig& c, Flags& f, bool positional) {
  sub->add_option("--harmonic", f.harmonic, "harmonic frame N M")->expected(2);
  sub->add_option("--random", f.random, "random Parseval frame N M (needs --seed)")->expected(2);
  sub->add_option("--union", f.union_of, "union of R scaled bases of R^N: N R")->expected(2);
  sub->add_option("--basis", f.basis, "standard basis of R^N");
  sub->add_option("--seed", c.seed, "seed for random generation and annealing");
  if (positional) sub->add_option("frame", c.input_path, "frame CSV file");
}

std::optional<GeneratorSpec> generator_of(const Flags& f) {
  int chosen = !f.harmonic.empty() + !f.random.empty() + !f.union_of.empty() + f.basis.has_value();
  if (chosen > 1) throw CLI::ValidationError("choose one generator");
  if (!f.harmonic.empty()) return GeneratorSpec{GeneratorSpec::Kind::Harmonic, f.harmonic[0], f.harmonic[1]};
  if (!f.random.empty()) return GeneratorSpec{GeneratorSpec::Kind::Random, f.random[0], f.random[1]};
  if (!f.union_of.empty()) return GeneratorSpec{GeneratorSpec::Kind::Union, f.union_of[0], f.union_of[1]};
  if (f.basis) return GeneratorSpec{GeneratorSpec::Kind::Basis, *f.basis, 0};
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition finite frames into spanning and independent subsets"};
  app.require_subcommand(1);
  RunConfig c;
  Flags f;

  auto* gen = app.add_subcommand("gen", "write a generated frame as CSV");
  add_source_flags(gen, c, f, false);
  add_numeric_flags(gen, c);

  auto* check = app.add_subcommand("check", "frame bounds, Parseval and rank report");
  add_source_flags(check, c, f, true);
  add_numeric_flags(check, c);

  auto* part = app.add_subcommand("partition", "run a partition theorem and emit its certificate");
  add_source_flags(part, c, f, true);
  add_numeric_flags(part, c);
  part->add_option("--theorem", f.theorem, "t1 | p5 | p6 | cor5")
      ->required()
      ->check(CLI::IsMember({"t1", "p5", "p6", "cor5"}));
  part->add_option("--delta", c.delta, "delta as a decimal or p/q");
  part->add_option("--r", c.r, "number of parts");

  auto* pave = app.add_subcommand("pave", "pave the hollow Gram matrix and certify spanning complements");
  add_source_flags(pave, c, f, true);
  add_numeric_flags(pave, c);
  pave->add_option("--delta", c.delta, "delta as a decimal or p/q")->required();
  pave->add_option("--r", c.r, "number of parts");
  pave->add_option("--sweep-r", c.sweep_r, "try r = 1, 2, ... up to this value");
  pave->add_option("--method", f.method, "exhaustive | annealing")
      ->check(CLI::IsMember({"exhaustive", "annealing"}));
  pave->add_option("--budget", c.budget, "annealing move budget");

  auto* witness = app.add_subcommand("witness", "independent partition into --r sets or a failure witness");
  add_source_flags(witness, c, f, true);
  add_numeric_flags(witness, c);
  witness->add_option("--r", c.r, "number of parts")->required();

  try {
    app.parse(argc, argv);
    c.generator = generator_of(f);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : frameforge::kExitInputError;
  }

  if (gen->parsed()) c.command = Command::Gen;
  if (check->parsed()) c.command = Command::Check;
  if (part->parsed()) c.command = Command::Partition;
  if (pave->parsed()) c.command = Command::Pave;
  if (witness->parsed()) c.command = Command::Witness;
  if (!f.theorem.empty()) c.theorem = frameforge::parse_theorem_tag(f.theorem);
  c.method = frameforge::parse_paving_method(f.method);
  return frameforge::run(c, std::cout, std::cerr);
}
