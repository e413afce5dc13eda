#include "toriscope/io.hpp"

#include <fstream>
#include <sstream>

namespace toriscope {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  for (std::size_t n = 1; std::getline(in, raw); ++n) {
    std::istringstream ls(raw);
    Line line{n, {}};
    for (std::string tok; ls >> tok;) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens.front().front() == '#') continue;
    out.push_back(std::move(line));
  }
  return out;
}

Integer parse_integer(const std::string& tok, std::size_t line) {
  Integer value;
  std::size_t start = (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
  if (tok.size() == start || tok.find_first_not_of("0123456789", start) != std::string::npos ||
      value.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  return value;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  Integer v = parse_integer(tok, line);
  if (v < 0 || !v.fits_ulong_p()) throw ParseError(line, "expected a non-negative count, got '" + tok + "'");
  return v.get_ui();
}

std::vector<std::size_t> header(const std::vector<Line>& lines, const std::string& keyword, std::size_t fields) {
  if (lines.empty()) throw ParseError(1, "missing '" + keyword + "' header");
  const Line& h = lines.front();
  if (h.tokens.front() != keyword) throw ParseError(h.number, "expected '" + keyword + "' header");
  if (h.tokens.size() != fields + 1)
    throw ParseError(h.number, "'" + keyword + "' header takes " + std::to_string(fields) + " numbers");
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= fields; ++i) out.push_back(parse_count(h.tokens[i], h.number));
  if (out[0] == 0) throw ParseError(h.number, "dimension must be positive");
  return out;
}

LatVec parse_vector(const Line& line, std::size_t dim) {
  if (line.tokens.size() != dim)
    throw ParseError(line.number, "expected " + std::to_string(dim) + " integers, got " +
                                      std::to_string(line.tokens.size()));
  LatVec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = parse_integer(line.tokens[i], line.number);
  return v;
}

std::size_t last_line(const std::vector<Line>& lines) { return lines.empty() ? 1 : lines.back().number; }

}  // namespace

LatticePolytope parse_polytope(const std::string& text) {
  auto lines = content_lines(text);
  auto h = header(lines, "polytope", 2);
  const std::size_t d = h[0], n = h[1];
  if (lines.size() < n + 1) throw ParseError(last_line(lines) + 1, "expected " + std::to_string(n) + " vertices");
  if (lines.size() > n + 1) throw ParseError(lines[n + 1].number, "unexpected trailing data");
  std::vector<LatVec> points;
  for (std::size_t i = 1; i <= n; ++i) points.push_back(parse_vector(lines[i], d));
  return LatticePolytope::from_points(points);
}

Fan parse_fan(const std::string& text) {
  auto lines = content_lines(text);
  auto h = header(lines, "fan", 3);
  const std::size_t d = h[0], s = h[1], m = h[2];
  if (lines.size() < 1 + s + m)
    throw ParseError(last_line(lines) + 1, "expected " + std::to_string(s) + " rays and " + std::to_string(m) + " cones");
  if (lines.size() > 1 + s + m) throw ParseError(lines[1 + s + m].number, "unexpected trailing data");
  std::vector<LatVec> rays;
  for (std::size_t i = 1; i <= s; ++i) {
    rays.push_back(parse_vector(lines[i], d));
    if (rays.back().is_zero()) throw ParseError(lines[i].number, "zero ray");
  }
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t i = 1 + s; i < 1 + s + m; ++i) {
    std::vector<std::size_t> cone;
    for (const auto& tok : lines[i].tokens) {
      std::size_t k = parse_count(tok, lines[i].number);
      if (k >= s) throw ParseError(lines[i].number, "ray index " + tok + " out of range");
      cone.push_back(k);
    }
    cones.push_back(std::move(cone));
  }
  return Fan(d, std::move(rays), std::move(cones));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace toriscope
