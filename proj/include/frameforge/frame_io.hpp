#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "frameforge/frame.hpp"

namespace frameforge {

// Frame CSV:
//   dim=N
//   x_0,x_1,...,x_{N-1}        one line per vector
// Entries are `p/q` or integer literals (exact) or decimal literals (float).
// A file whose entries are all exact yields a rational frame. Blank lines and
// lines starting with '#' are ignored.

Frame read_frame_csv(std::istream& in);
Frame read_frame_csv(const std::filesystem::path& path);
Frame parse_frame_csv(const std::string& text);

/// Rational frames are written as `p/q`, float frames as shortest
/// round-trip decimals; reading the output back reproduces the frame exactly.
void write_frame_csv(std::ostream& out, const Frame& f);
std::string format_frame_csv(const Frame& f);

}  // namespace frameforge
