#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "frameforge/cli.hpp"
#include "frameforge/frame_io.hpp"
#include "frameforge/partitioners.hpp"

using namespace frameforge;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome exec(const RunConfig& c) {
  std::ostringstream out, err;
  Outcome o;
  o.code = run(c, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

RunConfig from_generator(Command cmd, GeneratorSpec::Kind kind, std::size_t n, std::size_t m) {
  RunConfig c;
  c.command = cmd;
  c.generator = GeneratorSpec{kind, n, m};
  return c;
}

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "frameforge_test_cli";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CertificateParams params_of(const json& p) {
  CertificateParams c;
  if (p.contains("delta")) c.delta = p["delta"].get<double>();
  if (p.contains("R")) c.R = p["R"].get<std::size_t>();
  if (p.contains("r")) c.r = p["r"].get<std::size_t>();
  if (p.contains("k")) c.k = p["k"].get<std::size_t>();
  if (p.contains("norms_max")) c.norms_max = p["norms_max"].get<double>();
  if (p.contains("lower_bound")) c.lower_bound = p["lower_bound"].get<double>();
  if (p.contains("rescale")) c.rescale = p["rescale"].get<double>();
  return c;
}

/// Re-runs verify_partition on the assignment in an exit-0 certificate.
void check_reverifies(const Frame& f, const json& doc, const Numerics& num) {
  const json& body = doc;
  std::vector<std::size_t> assignment = body["assignment"].get<std::vector<std::size_t>>();
  const std::size_t parts = body["parts"].size();
  const IndexPartition p{parts, assignment};
  const TheoremTag tag = parse_theorem_tag(body["theorem"].get<std::string>());
  const auto c = verify_partition(f, p, tag, params_of(body["params"]), num);
  CHECK(c.claims_hold);
  CHECK(c.claims_hold == body["claims_hold"].get<bool>());
  for (std::size_t k = 0; k < parts; ++k) {
    const json& e = body["parts"][k];
    CHECK(e["indices"].get<IndexSet>() == c.parts[k].indices);
    CHECK(e["independent"].get<bool>() == c.parts[k].independent);
    CHECK(e["spans"].get<bool>() == c.parts[k].spans);
    CHECK(e["complement_spans"].get<bool>() == c.parts[k].complement_spans);
  }
}

}  // namespace

TEST_CASE("gen then check: Mercedes-Benz is Parseval with bounds (1, 1)") {
  const fs::path csv = scratch_dir() / "mb.csv";
  RunConfig g = from_generator(Command::Gen, GeneratorSpec::Kind::Harmonic, 2, 3);
  g.output_path = csv.string();
  REQUIRE(exec(g).code == kExitOk);
  const Frame back = read_frame_csv(csv);
  CHECK(back.vectors() == harmonic_frame(2, 3).vectors());

  RunConfig c;
  c.command = Command::Check;
  c.input_path = csv.string();
  const Outcome o = exec(c);
  REQUIRE(o.code == kExitOk);
  const json d = o.doc();
  CHECK(d["parseval"] == true);
  CHECK(std::abs(d["bounds"]["lower"].get<double>() - 1) < 1e-12);
  CHECK(std::abs(d["bounds"]["upper"].get<double>() - 1) < 1e-12);
  CHECK(d["schema_version"] == "1");
}

TEST_CASE("round trip: gen -> file -> check reproduces the in-memory output in rational mode") {
  const fs::path csv = scratch_dir() / "u.csv";
  RunConfig g = from_generator(Command::Gen, GeneratorSpec::Kind::Union, 3, 4);
  g.output_path = csv.string();
  REQUIRE(exec(g).code == kExitOk);
  CHECK(read_frame_csv(csv).has_exact());

  RunConfig direct = from_generator(Command::Check, GeneratorSpec::Kind::Union, 3, 4);
  direct.exact = true;
  RunConfig via_file;
  via_file.command = Command::Check;
  via_file.input_path = csv.string();
  via_file.exact = true;
  const Outcome a = exec(direct), b = exec(via_file);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);

  direct.command = via_file.command = Command::Partition;
  direct.theorem = via_file.theorem = TheoremTag::SpanningParts;
  CHECK(exec(direct).out == exec(via_file).out);
}

TEST_CASE("partition t1 on Mercedes-Benz, and NormBoundViolated on a basis") {
  const fs::path csv = scratch_dir() / "mb_t1.csv";
  RunConfig g = from_generator(Command::Gen, GeneratorSpec::Kind::Harmonic, 2, 3);
  g.output_path = csv.string();
  REQUIRE(exec(g).code == kExitOk);

  RunConfig c;
  c.command = Command::Partition;
  c.input_path = csv.string();
  c.theorem = TheoremTag::SpanningComplements;
  c.delta = "0.3333333";
  const Outcome o = exec(c);
  REQUIRE(o.code == kExitOk);
  const json d = o.doc();
  CHECK(d["parts"].size() == 3);
  for (const json& e : d["parts"]) CHECK(e["complement_spans"] == true);
  check_reverifies(harmonic_frame(2, 3), d, Numerics{});

  const fs::path basis = scratch_dir() / "basis.csv";
  RunConfig gb = from_generator(Command::Gen, GeneratorSpec::Kind::Basis, 2, 0);
  gb.output_path = basis.string();
  REQUIRE(exec(gb).code == kExitOk);
  c.input_path = basis.string();
  c.delta = "0.5";
  const Outcome bad = exec(c);
  CHECK(bad.code == kExitInputError);
  CHECK(bad.err.find("NormBoundViolated") != std::string::npos);
}

TEST_CASE("every exit-0 partition certificate re-verifies") {
  struct Case {
    GeneratorSpec::Kind kind;
    std::size_t n, m;
    TheoremTag theorem;
    std::optional<std::string> delta;
    std::optional<std::size_t> r;
    bool exact;
  };
  using K = GeneratorSpec::Kind;
  const std::vector<Case> cases{
      {K::Harmonic, 2, 4, TheoremTag::EqualNormIndependent, {}, {}, false},
      {K::Harmonic, 3, 7, TheoremTag::EqualNormIndependent, {}, {}, false},
      {K::Harmonic, 2, 5, TheoremTag::IndependentSpanning, {}, {}, false},
      {K::Harmonic, 3, 8, TheoremTag::IndependentSpanning, {}, 2, false},
      {K::Harmonic, 2, 6, TheoremTag::SpanningParts, {}, 3, false},
      {K::Union, 2, 4, TheoremTag::SpanningParts, {}, {}, true},
      {K::Union, 3, 4, TheoremTag::SpanningComplements, "1/4", {}, true},
      {K::Union, 2, 4, TheoremTag::IndependentSpanning, {}, 4, true},
      {K::Harmonic, 3, 9, TheoremTag::SpanningComplements, "2/3", {}, false},
  };
  for (const Case& k : cases) {
    RunConfig c = from_generator(Command::Partition, k.kind, k.n, k.m);
    c.theorem = k.theorem;
    c.delta = k.delta;
    c.r = k.r;
    c.exact = k.exact;
    const Outcome o = exec(c);
    INFO(o.err);
    REQUIRE(o.code == kExitOk);
    const Frame f = k.kind == K::Harmonic ? harmonic_frame(k.n, k.m) : scaled_union_of_bases(k.n, k.m);
    check_reverifies(f, o.doc(), k.exact ? Numerics{Tolerance{}, ScalarMode::Exact} : Numerics{});
  }
}

TEST_CASE("witness exits 2 with a checked certificate, or 0 when feasible") {
  const fs::path csv = scratch_dir() / "dup.csv";
  {
    std::ofstream out(csv);
    out << "dim=2\n1,0\n1,0\n1,0\n0,1\n";
  }
  RunConfig c;
  c.command = Command::Witness;
  c.input_path = csv.string();
  c.r = 2;
  c.exact = true;
  const Outcome o = exec(c);
  REQUIRE(o.code == kExitInfeasible);
  const json d = o.doc();
  CHECK(d["witness"]["ratio"] == "3");
  CHECK(d["witness"]["subspace_dim"] == 1);
  for (const auto& [name, value] : d["checks"].items()) CHECK(value == true);

  c.r = 3;
  CHECK(exec(c).code == kExitOk);
}

TEST_CASE("pave: success, sweep, and PavingNotFound") {
  RunConfig c = from_generator(Command::Pave, GeneratorSpec::Kind::Harmonic, 2, 6);
  c.delta = "2/3";
  c.r = 2;
  Outcome o = exec(c);
  REQUIRE(o.code == kExitOk);
  CHECK(std::abs(o.doc()["paving"]["achieved"].get<double>() - 1.0 / 3) < 1e-9);
  CHECK(o.doc()["claims_hold"] == true);

  c.r = 1;
  o = exec(c);
  CHECK(o.code == kExitSearchFailed);
  CHECK(o.doc()["outcome"] == "paving_not_found");

  c.r.reset();
  c.sweep_r = 4;
  o = exec(c);
  REQUIRE(o.code == kExitOk);
  CHECK(o.doc()["r_found"] == 2);

  RunConfig a = from_generator(Command::Pave, GeneratorSpec::Kind::Harmonic, 2, 3);
  a.delta = "1/3";
  a.r = 3;
  a.method = PavingMethod::Annealing;
  a.seed = 3;
  o = exec(a);
  REQUIRE(o.code == kExitOk);
  CHECK(o.doc()["paving"]["achieved"].get<double>() < 1e-12);
  CHECK(exec(a).out == o.out);
}

TEST_CASE("input errors exit 1") {
  RunConfig none;
  none.command = Command::Check;
  CHECK(exec(none).code == kExitInputError);

  RunConfig both = from_generator(Command::Check, GeneratorSpec::Kind::Basis, 2, 0);
  both.input_path = "x.csv";
  CHECK(exec(both).code == kExitInputError);

  RunConfig unseeded = from_generator(Command::Check, GeneratorSpec::Kind::Random, 2, 5);
  CHECK(exec(unseeded).code == kExitInputError);

  RunConfig no_theorem = from_generator(Command::Partition, GeneratorSpec::Kind::Basis, 2, 0);
  CHECK(exec(no_theorem).code == kExitInputError);

  RunConfig no_delta = from_generator(Command::Partition, GeneratorSpec::Kind::Harmonic, 2, 3);
  no_delta.theorem = TheoremTag::SpanningComplements;
  CHECK(exec(no_delta).code == kExitInputError);

  RunConfig missing;
  missing.command = Command::Check;
  missing.input_path = (scratch_dir() / "does_not_exist.csv").string();
  const Outcome o = exec(missing);
  CHECK(o.code == kExitInputError);
  CHECK_FALSE(o.err.empty());

  RunConfig not_frame;
  not_frame.command = Command::Check;
  const fs::path csv = scratch_dir() / "bad.csv";
  {
    std::ofstream out(csv);
    out << "dim=2\n1,0\n2,0\n";
  }
  not_frame.input_path = csv.string();
  // check reports a non-spanning family instead of rejecting it; pipelines reject it.
  const Outcome report = exec(not_frame);
  CHECK(report.code == kExitOk);
  CHECK(report.doc()["frame"] == false);
  not_frame.command = Command::Partition;
  not_frame.theorem = TheoremTag::SpanningParts;
  CHECK(exec(not_frame).code == kExitInputError);
}

TEST_CASE("hypothesis failure in cor5 exits 2 with a witness") {
  const fs::path csv = scratch_dir() / "triple.csv";
  {
    std::ofstream out(csv);
    out << "dim=2\n1,0\n1,0\n1,0\n0,1\n";
  }
  RunConfig c;
  c.command = Command::Partition;
  c.input_path = csv.string();
  c.theorem = TheoremTag::IndependentSpanning;
  c.r = 1;
  const Outcome o = exec(c);
  CHECK(o.code == kExitInfeasible);
  CHECK_FALSE(o.out.empty());
}

TEST_CASE("rational-mode output is byte-identical across runs and output targets") {
  RunConfig c = from_generator(Command::Partition, GeneratorSpec::Kind::Union, 2, 4);
  c.theorem = TheoremTag::SpanningComplements;
  c.delta = "1/2";
  c.exact = true;
  const Outcome a = exec(c), b = exec(c);
  CHECK(a.out == b.out);
  const fs::path file = scratch_dir() / "cert.json";
  c.output_path = file.string();
  REQUIRE(exec(c).code == kExitOk);
  CHECK(slurp(file) == a.out);
}
