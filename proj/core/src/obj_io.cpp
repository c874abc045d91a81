#include "meshtape/obj_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "meshtape/errors.hpp"

namespace meshtape {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r'))
      ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r')
      ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double parse_coord(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line_no, "bad vertex coordinate '" +
                                  std::string(token) + "'");
  if (!std::isfinite(value))
    throw ParseError(line_no, "non-finite vertex coordinate '" +
                                  std::string(token) + "'");
  return value;
}

// Accepts "i", "i/t", "i//n", "i/t/n"; only the vertex index is used.
// Negative indices count back from the vertices defined so far. Returns a
// 0-based index; positive indices are range-checked by the caller once the
// whole file is read.
long parse_face_index(std::string_view token, std::size_t defined,
                      std::size_t line_no) {
  std::string_view head = token.substr(0, token.find('/'));
  long idx = 0;
  const char* end = head.data() + head.size();
  auto [ptr, ec] = std::from_chars(head.data(), end, idx);
  if (ec != std::errc() || ptr != end || head.empty())
    throw ParseError(line_no,
                     "bad face index '" + std::string(token) + "'");
  if (idx == 0)
    throw ParseError(line_no, "face index 0 (indices are 1-based)");
  if (idx < 0) {
    long resolved = static_cast<long>(defined) + idx;
    if (resolved < 0)
      throw ParseError(line_no, "relative face index " +
                                    std::string(token) +
                                    " references before the first vertex");
    return resolved;
  }
  return idx - 1;
}

}  // namespace

Mesh parse_obj(std::istream& in) {
  Mesh mesh;
  std::vector<std::size_t> triangle_lines;  // for late range checks
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text(line);
    if (std::size_t hash = text.find('#'); hash != std::string_view::npos)
      text = text.substr(0, hash);
    std::vector<std::string_view> tokens = split_ws(text);
    if (tokens.empty()) continue;

    if (tokens[0] == "v") {
      if (tokens.size() < 4)
        throw ParseError(line_no, "vertex record needs 3 coordinates");
      mesh.vertices.emplace_back(parse_coord(tokens[1], line_no),
                                 parse_coord(tokens[2], line_no),
                                 parse_coord(tokens[3], line_no));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4)
        throw ParseError(line_no, "face with fewer than 3 vertices");
      std::vector<long> idx;
      idx.reserve(tokens.size() - 1);
      for (std::size_t i = 1; i < tokens.size(); ++i)
        idx.push_back(
            parse_face_index(tokens[i], mesh.vertices.size(), line_no));
      for (std::size_t i = 1; i + 1 < idx.size(); ++i) {
        mesh.triangles.emplace_back(static_cast<int>(idx[0]),
                                    static_cast<int>(idx[i]),
                                    static_cast<int>(idx[i + 1]));
        triangle_lines.push_back(line_no);
      }
    }
    // Anything else (vn, vt, o, g, s, usemtl, ...) is ignored.
  }

  const long nv = static_cast<long>(mesh.vertices.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Eigen::Vector3i& tri = mesh.triangles[t];
    for (int j = 0; j < 3; ++j) {
      if (tri[j] >= nv)
        throw ParseError(triangle_lines[t],
                         "face index " + std::to_string(tri[j] + 1) +
                             " out of range (have " + std::to_string(nv) +
                             " vertices)");
    }
  }
  return mesh;
}

Mesh parse_obj(const std::string& text) {
  std::istringstream in(text);
  return parse_obj(in);
}

Mesh read_obj_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mesh file: " + path);
  return parse_obj(in);
}

void write_obj(const Mesh& mesh, std::ostream& out) {
  char buf[128];
  for (const Eigen::Vector3d& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(),
                  v.z());
    out << buf;
  }
  for (const Eigen::Vector3i& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1,
                  t[2] + 1);
    out << buf;
  }
}

void write_obj_file(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_obj(mesh, out);
}

}  // namespace meshtape
