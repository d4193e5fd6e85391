#include "frameforge/frame_io.hpp"

#include <fstream>
#include <sstream>

namespace frameforge {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Frame read_frame_csv(std::istream& in) {
  std::string line;
  std::size_t dim = 0;
  bool have_header = false;
  bool all_exact = true;
  std::vector<Rational> exact;
  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = strip(line);
    if (s.empty() || s.front() == '#') continue;
    if (!have_header) {
      if (s.substr(0, 4) != "dim=") fail(ErrorKind::ParseError, "expected 'dim=N' header on line " + std::to_string(line_no));
      const auto n = parse_rational(s.substr(4));
      if (n.get_den() != 1 || n <= 0) fail(ErrorKind::ParseError, "dim must be a positive integer");
      dim = n.get_num().get_ui();
      have_header = true;
      continue;
    }
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = s.find(',', start);
      std::string_view field = strip(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
      if (is_rational_literal(field)) {
        Rational q = parse_rational(field);
        values.push_back(q.get_d());
        exact.push_back(std::move(q));
      } else {
        const double x = parse_double(field);
        values.push_back(x);
        exact.emplace_back(x);
        all_exact = false;
      }
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != dim)
      fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + " has " + std::to_string(count) +
                                      " entries, expected " + std::to_string(dim));
    ++rows;
  }
  if (!have_header) fail(ErrorKind::ParseError, "missing 'dim=N' header");
  if (rows == 0) fail(ErrorKind::ParseError, "no vectors");
  if (all_exact) return Frame(MatrixQ(rows, dim, std::move(exact)));
  return Frame(MatrixD(rows, dim, std::move(values)));
}

Frame read_frame_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path.string());
  return read_frame_csv(in);
}

Frame parse_frame_csv(const std::string& text) {
  std::istringstream in(text);
  return read_frame_csv(in);
}

void write_frame_csv(std::ostream& out, const Frame& f) {
  out << "dim=" << f.dim() << '\n';
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.dim(); ++j) {
      if (j) out << ',';
      out << (f.has_exact() ? format_rational(f.exact_vectors()(i, j)) : format_double(f.vectors()(i, j)));
    }
    out << '\n';
  }
}

std::string format_frame_csv(const Frame& f) {
  std::ostringstream out;
  write_frame_csv(out, f);
  return out.str();
}

}  // namespace frameforge
