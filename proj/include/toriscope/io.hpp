#pragma once

// Text formats for polytopes ("polytope d n" + vertices) and fans
// ("fan d s m" + rays + cones).  Lines starting with '#' and blank lines are
// ignored.

#include <string>

#include "toriscope/fan.hpp"
#include "toriscope/polytope.hpp"

namespace toriscope {

/// Throws ParseError with the offending 1-based line number.
LatticePolytope parse_polytope(const std::string& text);
Fan parse_fan(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace toriscope
