// Copyright 2026 The Vecplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vecplan/ply_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace vecplan {

namespace {

struct LineReader {
  std::istringstream in;
  size_t line_no = 0;

  explicit LineReader(const std::string& bytes) : in(bytes) {}

  bool next(std::string& line) {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& tok, size_t line) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw PointCloudParseError(line, "not a number: \"" + tok + "\"");
  }
  if (pos != tok.size()) throw PointCloudParseError(line, "not a number: \"" + tok + "\"");
  return v;
}

bool is_float_type(const std::string& t) {
  return t == "float" || t == "float32" || t == "double" || t == "float64";
}

bool is_uchar_type(const std::string& t) { return t == "uchar" || t == "uint8"; }

PointCloud parse_ply(LineReader& reader) {
  std::string line;
  if (!reader.next(line) || line != "ply") throw PointCloudParseError(reader.line_no, "expected \"ply\"");

  size_t vertex_count = 0;
  bool in_vertex_element = false;
  bool seen_vertex_element = false;
  std::vector<std::string> vertex_props;

  while (true) {
    if (!reader.next(line)) throw PointCloudParseError(reader.line_no, "unexpected end of header");
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0] == "comment") continue;
    if (toks[0] == "format") {
      if (toks.size() < 2 || toks[1] != "ascii")
        throw PointCloudParseError(reader.line_no, "only ascii PLY is supported");
    } else if (toks[0] == "element") {
      if (toks.size() < 3) throw PointCloudParseError(reader.line_no, "malformed element line");
      in_vertex_element = toks[1] == "vertex";
      if (in_vertex_element) {
        seen_vertex_element = true;
        vertex_count = static_cast<size_t>(parse_double(toks[2], reader.line_no));
      }
    } else if (toks[0] == "property") {
      if (!in_vertex_element) continue;  // properties of other elements are skipped
      if (toks.size() < 3) throw PointCloudParseError(reader.line_no, "malformed property line");
      const std::string& type = toks[1];
      const std::string& name = toks[2];
      if ((name == "x" || name == "y" || name == "z") && !is_float_type(type))
        throw PointCloudParseError(reader.line_no, "position property must be float32/float64");
      if ((name == "red" || name == "green" || name == "blue") && !is_uchar_type(type))
        throw PointCloudParseError(reader.line_no, "color property must be uchar");
      vertex_props.push_back(name);
    } else if (toks[0] == "end_header") {
      break;
    } else {
      throw PointCloudParseError(reader.line_no, "unknown header keyword \"" + toks[0] + "\"");
    }
  }

  if (!seen_vertex_element) throw PointCloudParseError(reader.line_no, "no vertex element");
  int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
  for (size_t i = 0; i < vertex_props.size(); ++i) {
    const std::string& n = vertex_props[i];
    if (n == "x") ix = static_cast<int>(i);
    else if (n == "y") iy = static_cast<int>(i);
    else if (n == "z") iz = static_cast<int>(i);
    else if (n == "red") ir = static_cast<int>(i);
    else if (n == "green") ig = static_cast<int>(i);
    else if (n == "blue") ib = static_cast<int>(i);
  }
  if (ix < 0 || iy < 0 || iz < 0)
    throw PointCloudParseError(reader.line_no, "vertex element lacks x/y/z properties");
  const bool has_color = ir >= 0 && ig >= 0 && ib >= 0;

  PointCloud cloud;
  cloud.positions.reserve(vertex_count);
  for (size_t v = 0; v < vertex_count; ++v) {
    if (!reader.next(line))
      throw PointCloudParseError(reader.line_no, "unexpected end of file in vertex data");
    const auto toks = split_ws(line);
    if (toks.size() < vertex_props.size())
      throw PointCloudParseError(reader.line_no, "too few vertex values");
    cloud.positions.push_back({parse_double(toks[ix], reader.line_no),
                               parse_double(toks[iy], reader.line_no),
                               parse_double(toks[iz], reader.line_no)});
    if (has_color) {
      cloud.colors.push_back({static_cast<uint8_t>(parse_double(toks[ir], reader.line_no)),
                              static_cast<uint8_t>(parse_double(toks[ig], reader.line_no)),
                              static_cast<uint8_t>(parse_double(toks[ib], reader.line_no))});
    }
  }
  return cloud;
}

PointCloud parse_xyz(LineReader& reader) {
  PointCloud cloud;
  std::string line;
  bool has_color = false;
  bool first = true;
  while (reader.next(line)) {
    const auto toks = split_ws(line);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (toks.size() != 3 && toks.size() != 6)
      throw PointCloudParseError(reader.line_no, "expected \"x y z\" or \"x y z r g b\"");
    if (first) {
      has_color = toks.size() == 6;
      first = false;
    } else if ((toks.size() == 6) != has_color) {
      throw PointCloudParseError(reader.line_no, "inconsistent column count");
    }
    cloud.positions.push_back({parse_double(toks[0], reader.line_no),
                               parse_double(toks[1], reader.line_no),
                               parse_double(toks[2], reader.line_no)});
    if (has_color) {
      cloud.colors.push_back({static_cast<uint8_t>(parse_double(toks[3], reader.line_no)),
                              static_cast<uint8_t>(parse_double(toks[4], reader.line_no)),
                              static_cast<uint8_t>(parse_double(toks[5], reader.line_no))});
    }
  }
  return cloud;
}

}  // namespace

PointCloud parse_point_file(const std::string& bytes) {
  LineReader probe(bytes);
  std::string first;
  const bool is_ply = probe.next(first) && first.substr(0, 3) == "ply" &&
                      (first.size() == 3 || first[3] == '\r' || std::isspace(first[3]));
  LineReader reader(bytes);
  return is_ply ? parse_ply(reader) : parse_xyz(reader);
}

PointCloud load_point_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_point_file(ss.str());
}

std::string to_ply(const PointCloud& cloud) {
  std::ostringstream out;
  out << "ply\nformat ascii 1.0\n";
  out << "element vertex " << cloud.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  if (cloud.has_colors())
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n";
  char buf[128];
  for (size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = cloud.positions[i];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g", p.x, p.y, p.z);
    out << buf;
    if (cloud.has_colors()) {
      const auto& c = cloud.colors[i];
      out << " " << static_cast<int>(c[0]) << " " << static_cast<int>(c[1]) << " "
          << static_cast<int>(c[2]);
    }
    out << "\n";
  }
  return out.str();
}

void save_ply(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_ply(cloud);
}

}  // namespace vecplan
