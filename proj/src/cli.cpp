#include "frameforge/cli.hpp"

#include <fstream>
#include <ostream>

#include "frameforge/frame_io.hpp"
#include "frameforge/partitioners.hpp"

namespace frameforge {

using nlohmann::ordered_json;

namespace {

Numerics numerics_of(const RunConfig& c) {
  Numerics num;
  if (c.tol_rank) num.tol.rank_rel = *c.tol_rank;
  if (c.tol_eig) num.tol.eig_abs = *c.tol_eig;
  num.tol.validate();
  num.mode = c.exact ? ScalarMode::Exact : ScalarMode::Float;
  return num;
}

Frame generate(const GeneratorSpec& g, std::optional<std::uint64_t> seed) {
  switch (g.kind) {
    case GeneratorSpec::Kind::Harmonic: return harmonic_frame(g.n, g.m);
    case GeneratorSpec::Kind::Random: return random_parseval(g.n, g.m, *seed);
    case GeneratorSpec::Kind::Union: return scaled_union_of_bases(g.n, g.m);
    case GeneratorSpec::Kind::Basis: return standard_basis(g.n);
  }
  fail(ErrorKind::InvalidArgument, "unknown generator");
}

Frame load(const RunConfig& c) {
  if (c.generator) return generate(*c.generator, c.seed);
  return read_frame_csv(std::filesystem::path(*c.input_path));
}

double delta_of(const RunConfig& c) { return parse_rational(*c.delta).get_d(); }

ordered_json envelope(std::string_view command, const Numerics& num) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = std::string(command);
  j["tolerances"] = {{"rank_rel", num.tol.rank_rel}, {"eig_abs", num.tol.eig_abs}};
  j["scalar_mode"] = num.mode == ScalarMode::Exact ? "exact" : "float";
  return j;
}

ordered_json witness_json(const InfeasibleWitness& w) {
  return {{"set", w.set}, {"rank", w.rank}, {"parts", w.parts}};
}

ordered_json check_json(const Frame& f, const Numerics& num) {
  ordered_json j = envelope("check", num);
  j["dim"] = f.dim();
  j["size"] = f.size();
  j["rational_entries"] = f.has_exact();
  j["rank"] = subset_rank(f, all_indices(f.size()), num);
  const double lo = [&] {
    double v = f.norm_sq(0);
    for (std::size_t i = 1; i < f.size(); ++i) v = std::min(v, f.norm_sq(i));
    return v;
  }();
  j["norms_min"] = lo;
  j["norms_max"] = f.max_norm_sq();
  try {
    const FrameBounds b = validate_frame(f, num.tol);
    j["frame"] = true;
    j["bounds"] = {{"lower", b.lower}, {"upper", b.upper}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotAFrame) throw;
    j["frame"] = false;
    j["bounds"] = nullptr;
  }
  j["parseval"] = is_parseval(f, num.tol);
  j["equal_norm"] = f.max_norm_sq() - lo <= 1e-9;
  return j;
}

ordered_json partition_json(const RunConfig& c, const Frame& f, const Numerics& num) {
  PartitionResult res;
  switch (*c.theorem) {
    case TheoremTag::SpanningComplements: res = spanning_complement_partition(f, delta_of(c), c.r, num); break;
    case TheoremTag::EqualNormIndependent: res = equal_norm_independent_partition(f, num); break;
    case TheoremTag::SpanningParts: res = spanning_partition(f, num, c.r); break;
    case TheoremTag::IndependentSpanning:
      res = independent_spanning_partition(f, c.r.value_or(f.size() / f.dim()), num);
      break;
    default: fail(ErrorKind::InvalidArgument, "partition needs --theorem t1|p5|p6|cor5");
  }
  ordered_json j = to_json(res.certificate);
  j["assignment"] = res.partition.assignment;
  return j;
}

ordered_json witness_command(const RunConfig& c, const Frame& f, const Numerics& num, int& code) {
  const std::size_t parts = *c.r;
  const MatroidOracle o = MatroidOracle::linear(f, num);
  ordered_json j = envelope("witness", num);
  j["parts"] = parts;
  auto outcome = matroid_partition(o, parts);
  if (auto* p = std::get_if<IndexPartition>(&outcome)) {
    j["feasible"] = true;
    j["assignment"] = p->assignment;
    code = kExitOk;
    return j;
  }
  const T2Witness w = t2_witness(o, parts);
  const T2Checks checks = check_t2_witness(o, w);
  j["feasible"] = false;
  j["infeasible_set"] = witness_json(std::get<InfeasibleWitness>(outcome));
  j["witness"] = {{"assignment", w.partition.assignment},
                  {"subspace_generators", w.subspace_generators},
                  {"subspace_dim", w.subspace_dim},
                  {"violating_set", w.violating_set},
                  {"ratio", format_rational(*w.ratio())}};
  j["checks"] = {{"subspace_spanned_by_each_part", checks.subspace_spanned_by_each_part},
                 {"ratio_exceeds_parts", checks.ratio_exceeds_parts},
                 {"remainder_independent", checks.remainder_independent}};
  code = kExitInfeasible;
  return j;
}

ordered_json pave_command(const RunConfig& c, const Frame& f, const Numerics& num, int& code) {
  AnnealingConfig cfg;
  if (c.seed) cfg.seed = *c.seed;
  if (c.budget) cfg.budget = *c.budget;
  const double delta = delta_of(c);
  const std::size_t lo = c.sweep_r ? 1 : *c.r;
  const std::size_t hi = c.sweep_r ? *c.sweep_r : *c.r;
  std::optional<PavingResult> best;
  for (std::size_t r = lo; r <= hi; ++r) {
    try {
      const auto res = paving_spanning_pipeline(f, delta, r, num, c.method, cfg);
      ordered_json j = to_json(res);
      if (c.sweep_r) j["r_found"] = r;
      code = kExitOk;
      return j;
    } catch (const PavingNotFound& e) {
      best = e.best();
    }
  }
  ordered_json j = envelope("pave", num);
  j["outcome"] = "paving_not_found";
  j["r_tried"] = {{"from", lo}, {"to", hi}};
  j["best"] = to_json(*best);
  code = kExitSearchFailed;
  return j;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (!c.output_path) {
    out << text;
    return;
  }
  std::ofstream file(*c.output_path, std::ios::binary);
  if (!file) fail(ErrorKind::InvalidArgument, "cannot write " + *c.output_path);
  file << text;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::HypothesisFailed: return kExitInfeasible;
    case ErrorKind::SearchExhausted:
    case ErrorKind::PavingNotFound: return kExitSearchFailed;
    default: return kExitInputError;
  }
}

}  // namespace

void RunConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::InvalidArgument, what);
  };
  if (command == Command::Gen) {
    need(generator.has_value(), "gen needs a generator");
    need(!input_path, "gen takes no input file");
  } else {
    need(input_path.has_value() != generator.has_value(), "exactly one frame source (file or generator) required");
  }
  if (generator && generator->kind == GeneratorSpec::Kind::Random)
    need(seed.has_value(), "random frames need an explicit --seed");
  switch (command) {
    case Command::Partition:
      need(theorem.has_value(), "partition needs --theorem");
      if (*theorem == TheoremTag::SpanningComplements) need(delta.has_value(), "t1 needs --delta");
      break;
    case Command::Pave:
      need(delta.has_value(), "pave needs --delta");
      need(r.has_value() != sweep_r.has_value(), "pave needs exactly one of --r and --sweep-r");
      if (method == PavingMethod::Annealing) need(seed.has_value(), "annealing needs an explicit --seed");
      break;
    case Command::Witness: need(r.has_value(), "witness needs --r"); break;
    default: break;
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    const Numerics num = numerics_of(config);
    if (config.command == Command::Gen) {
      emit(config, format_frame_csv(generate(*config.generator, config.seed)), out);
      return kExitOk;
    }
    const Frame f = load(config);
    int code = kExitOk;
    ordered_json j;
    switch (config.command) {
      case Command::Check: j = check_json(f, num); break;
      case Command::Partition: j = partition_json(config, f, num); break;
      case Command::Pave: j = pave_command(config, f, num, code); break;
      case Command::Witness: j = witness_command(config, f, num, code); break;
      case Command::Gen: break;
    }
    emit(config, format_json(j), out);
    if (code == kExitSearchFailed) err << "error: no paving found for the requested r\n";
    return code;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << "\n";
    if (e.witness()) {
      ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = "partition";
      j["outcome"] = "hypothesis_failed";
      j["hypothesis"] = e.hypothesis();
      j["infeasible_set"] = witness_json(*e.witness());
      try {
        emit(config, format_json(j), out);
      } catch (const Error&) {
      }
    }
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace frameforge
