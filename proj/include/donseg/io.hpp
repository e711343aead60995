// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Point cloud file I/O: plain XYZ text, ASCII PCD and PLY (ascii or
// binary_little_endian vertex clouds). Extra per-vertex scalar fields are
// read into named attributes.

#ifndef DONSEG_IO_HPP
#define DONSEG_IO_HPP

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "donseg/point_cloud.hpp"

namespace donseg {

enum class CloudFormat { Xyz, PcdAscii, Ply };

inline std::string formatName(CloudFormat f) {
  switch (f) {
    case CloudFormat::Xyz: return "xyz";
    case CloudFormat::PcdAscii: return "pcd-ascii";
    case CloudFormat::Ply: return "ply";
  }
  return "?";
}

/// Accepts "xyz", "pcd", "pcd-ascii" and "ply".
inline CloudFormat parseFormat(std::string_view name) {
  if (name == "xyz" || name == "txt") return CloudFormat::Xyz;
  if (name == "pcd" || name == "pcd-ascii") return CloudFormat::PcdAscii;
  if (name == "ply") return CloudFormat::Ply;
  throw InvalidArgument("unknown cloud format '" + std::string(name) + "'");
}

/// Format implied by the file extension.
inline CloudFormat formatFromPath(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  if (!ext.empty()) ext.erase(0, 1);
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return parseFormat(ext);
}

struct SaveOptions {
  /// Significant digits for text output.
  int precision = 9;
  /// PLY only: write binary_little_endian instead of ascii.
  bool binary = false;
};

namespace detail {

inline std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return data;
}

inline std::vector<std::string_view> splitWs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<double> toDouble(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<long long> toInteger(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Iterates lines of a text buffer keeping 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::string_view text, std::size_t pos = 0,
                      std::size_t line_no = 0)
      : text_(text), pos_(pos), line_no_(line_no) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++line_no_;
    return true;
  }

  std::size_t lineNo() const { return line_no_; }
  std::size_t pos() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_;
  std::size_t line_no_;
};

inline std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

/// Shared sink for readers: validates coordinates, collects extra fields.
class CloudBuilder {
 public:
  explicit CloudBuilder(std::vector<std::string> extra_names)
      : names_(std::move(extra_names)), extra_(names_.size()) {}

  void add(double x, double y, double z, std::size_t record) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      throw ParseError("non-finite coordinate at record " + std::to_string(record),
                       record);
    points_.emplace_back(x, y, z);
  }

  void addExtra(std::size_t k, double v) { extra_[k].push_back(v); }

  void reserve(std::size_t n) {
    points_.reserve(n);
    for (auto& e : extra_) e.reserve(n);
  }

  PointCloud finish() {
    PointCloud cloud(std::move(points_));
    for (std::size_t k = 0; k < names_.size(); ++k)
      cloud.setAttribute(names_[k], std::move(extra_[k]));
    return cloud;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> extra_;
  std::vector<Point3> points_;
};

// ---------------------------------------------------------------- XYZ

/// Column names from an optional "# fields: x y z a b" comment.
inline PointCloud parseXyz(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::vector<std::string> columns;
  std::optional<CloudBuilder> builder;
  while (reader.next(line)) {
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      std::string_view body = trim(t.substr(1));
      if (!builder && body.substr(0, 7) == "fields:") {
        auto toks = splitWs(body.substr(7));
        if (toks.size() < 3 || toks[0] != "x" || toks[1] != "y" || toks[2] != "z")
          throw ParseError("fields comment must start with 'x y z' at line " +
                               std::to_string(reader.lineNo()),
                           reader.lineNo());
        columns.assign(toks.begin(), toks.end());
      }
      continue;
    }
    if (!builder) {
      std::vector<std::string> extra;
      if (columns.size() > 3) extra.assign(columns.begin() + 3, columns.end());
      builder.emplace(std::move(extra));
    }
    const auto toks = splitWs(t);
    const std::size_t ln = reader.lineNo();
    if (toks.size() < 3 || (!columns.empty() && toks.size() != columns.size()))
      throw ParseError("wrong number of columns at line " + std::to_string(ln), ln);
    double v[3];
    for (int a = 0; a < 3; ++a) {
      auto d = toDouble(toks[a]);
      if (!d) throw ParseError("invalid number at line " + std::to_string(ln), ln);
      v[a] = *d;
    }
    builder->add(v[0], v[1], v[2], ln);
    for (std::size_t k = 3; k < columns.size(); ++k) {
      auto d = toDouble(toks[k]);
      if (!d) throw ParseError("invalid number at line " + std::to_string(ln), ln);
      builder->addExtra(k - 3, *d);
    }
  }
  if (!builder) {
    std::vector<std::string> extra;
    if (columns.size() > 3) extra.assign(columns.begin() + 3, columns.end());
    builder.emplace(std::move(extra));
  }
  return builder->finish();
}

// ---------------------------------------------------------------- PCD

inline PointCloud parsePcd(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::vector<std::string> fields;
  std::vector<int> counts;
  std::optional<std::size_t> num_points, width, height;
  bool have_data = false;
  while (!have_data && reader.next(line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto toks = splitWs(t);
    const std::string_view key = toks[0];
    const std::size_t ln = reader.lineNo();
    auto count_arg = [&](std::string_view s) -> std::size_t {
      auto v = toInteger(s);
      if (!v || *v < 0)
        throw ParseError("invalid " + std::string(key) + " at line " + std::to_string(ln), ln);
      return static_cast<std::size_t>(*v);
    };
    if (key == "FIELDS") {
      fields.assign(toks.begin() + 1, toks.end());
    } else if (key == "COUNT") {
      counts.clear();
      for (std::size_t k = 1; k < toks.size(); ++k)
        counts.push_back(static_cast<int>(count_arg(toks[k])));
    } else if (key == "POINTS" && toks.size() == 2) {
      num_points = count_arg(toks[1]);
    } else if (key == "WIDTH" && toks.size() == 2) {
      width = count_arg(toks[1]);
    } else if (key == "HEIGHT" && toks.size() == 2) {
      height = count_arg(toks[1]);
    } else if (key == "DATA") {
      if (toks.size() != 2 || toks[1] != "ascii")
        throw ParseError("only 'DATA ascii' PCD files are supported (line " +
                             std::to_string(ln) + ")",
                         ln);
      have_data = true;
    } else if (key == "VERSION" || key == "SIZE" || key == "TYPE" ||
               key == "VIEWPOINT") {
      // not needed for ascii data
    } else {
      throw ParseError("unexpected PCD header line " + std::to_string(ln), ln);
    }
  }
  if (!have_data) throw ParseError("PCD header has no DATA line", 0);
  if (counts.empty()) counts.assign(fields.size(), 1);
  if (counts.size() != fields.size())
    throw ParseError("PCD COUNT does not match FIELDS", 0);

  int xyz[3] = {-1, -1, -1};
  std::vector<std::string> extra_names;
  std::vector<int> extra_col;  // token offset of each extra scalar field
  int offset = 0;
  for (std::size_t f = 0; f < fields.size(); ++f) {
    const std::string& name = fields[f];
    if (name == "x" || name == "y" || name == "z") {
      if (counts[f] != 1) throw ParseError("coordinate field with COUNT != 1", 0);
      xyz[name[0] - 'x'] = offset;
    } else if (counts[f] == 1 && name != "_") {
      extra_names.push_back(name);
      extra_col.push_back(offset);
    }
    offset += counts[f];
  }
  if (xyz[0] < 0 || xyz[1] < 0 || xyz[2] < 0)
    throw ParseError("PCD FIELDS must include x y z", 0);
  const std::size_t tokens_per_row = static_cast<std::size_t>(offset);
  std::size_t expected = num_points.value_or(width.value_or(0) * height.value_or(1));

  CloudBuilder builder(extra_names);
  builder.reserve(expected);
  std::size_t rows = 0;
  while (reader.next(line)) {
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    const std::size_t ln = reader.lineNo();
    if (rows == expected)
      throw ParseError("more data rows than POINTS at line " + std::to_string(ln), ln);
    const auto toks = splitWs(t);
    if (toks.size() != tokens_per_row)
      throw ParseError("wrong number of values at line " + std::to_string(ln), ln);
    double v[3];
    for (int a = 0; a < 3; ++a) {
      auto d = toDouble(toks[static_cast<std::size_t>(xyz[a])]);
      if (!d) throw ParseError("invalid number at line " + std::to_string(ln), ln);
      v[a] = *d;
    }
    builder.add(v[0], v[1], v[2], ln);
    for (std::size_t k = 0; k < extra_col.size(); ++k) {
      auto d = toDouble(toks[static_cast<std::size_t>(extra_col[k])]);
      if (!d) throw ParseError("invalid number at line " + std::to_string(ln), ln);
      builder.addExtra(k, *d);
    }
    ++rows;
  }
  if (rows != expected)
    throw ParseError("PCD declares " + std::to_string(expected) + " points but has " +
                         std::to_string(rows),
                     reader.lineNo());
  return builder.finish();
}

// ---------------------------------------------------------------- PLY

enum class PlyType { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

inline std::optional<PlyType> plyType(std::string_view s) {
  if (s == "char" || s == "int8") return PlyType::Int8;
  if (s == "uchar" || s == "uint8") return PlyType::UInt8;
  if (s == "short" || s == "int16") return PlyType::Int16;
  if (s == "ushort" || s == "uint16") return PlyType::UInt16;
  if (s == "int" || s == "int32") return PlyType::Int32;
  if (s == "uint" || s == "uint32") return PlyType::UInt32;
  if (s == "float" || s == "float32") return PlyType::Float32;
  if (s == "double" || s == "float64") return PlyType::Float64;
  return std::nullopt;
}

inline std::size_t plySize(PlyType t) {
  switch (t) {
    case PlyType::Int8: case PlyType::UInt8: return 1;
    case PlyType::Int16: case PlyType::UInt16: return 2;
    case PlyType::Int32: case PlyType::UInt32: case PlyType::Float32: return 4;
    case PlyType::Float64: return 8;
  }
  return 0;
}

template <typename T>
T loadLe(const char* p) {
  static_assert(std::endian::native == std::endian::little,
                "binary PLY reader assumes a little-endian host");
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

inline double readPlyValue(PlyType t, const char* p) {
  switch (t) {
    case PlyType::Int8: return loadLe<std::int8_t>(p);
    case PlyType::UInt8: return loadLe<std::uint8_t>(p);
    case PlyType::Int16: return loadLe<std::int16_t>(p);
    case PlyType::UInt16: return loadLe<std::uint16_t>(p);
    case PlyType::Int32: return loadLe<std::int32_t>(p);
    case PlyType::UInt32: return loadLe<std::uint32_t>(p);
    case PlyType::Float32: return loadLe<float>(p);
    case PlyType::Float64: return loadLe<double>(p);
  }
  return 0.0;
}

struct PlyProperty {
  std::string name;
  PlyType type = PlyType::Float32;
  bool is_list = false;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> props;
};

inline PointCloud parsePly(std::string_view data) {
  LineReader reader(data);
  std::string_view line;
  if (!reader.next(line) || trim(line) != "ply")
    throw ParseError("missing 'ply' magic", 1);
  enum class Enc { Ascii, BinaryLe } enc = Enc::Ascii;
  bool have_format = false, have_end = false;
  std::vector<PlyElement> elements;
  while (reader.next(line)) {
    const auto toks = splitWs(trim(line));
    const std::size_t ln = reader.lineNo();
    if (toks.empty()) continue;
    if (toks[0] == "comment" || toks[0] == "obj_info") continue;
    if (toks[0] == "end_header") {
      have_end = true;
      break;
    }
    if (toks[0] == "format" && toks.size() == 3) {
      if (toks[1] == "ascii") enc = Enc::Ascii;
      else if (toks[1] == "binary_little_endian") enc = Enc::BinaryLe;
      else throw ParseError("unsupported PLY format '" + std::string(toks[1]) + "'", ln);
      have_format = true;
    } else if (toks[0] == "element" && toks.size() == 3) {
      auto n = toInteger(toks[2]);
      if (!n || *n < 0) throw ParseError("invalid element count at line " + std::to_string(ln), ln);
      elements.push_back({std::string(toks[1]), static_cast<std::size_t>(*n), {}});
    } else if (toks[0] == "property" && !elements.empty()) {
      if (toks.size() == 5 && toks[1] == "list") {
        if (!plyType(toks[2]) || !plyType(toks[3]))
          throw ParseError("invalid list property at line " + std::to_string(ln), ln);
        elements.back().props.push_back({std::string(toks[4]), *plyType(toks[3]), true});
      } else if (toks.size() == 3) {
        auto t = plyType(toks[1]);
        if (!t) throw ParseError("unknown property type at line " + std::to_string(ln), ln);
        elements.back().props.push_back({std::string(toks[2]), *t, false});
      } else {
        throw ParseError("malformed property at line " + std::to_string(ln), ln);
      }
    } else {
      throw ParseError("unexpected PLY header line " + std::to_string(ln), ln);
    }
  }
  if (!have_format || !have_end) throw ParseError("incomplete PLY header", reader.lineNo());

  std::size_t vertex_elem = elements.size();
  for (std::size_t e = 0; e < elements.size(); ++e)
    if (elements[e].name == "vertex") { vertex_elem = e; break; }
  if (vertex_elem == elements.size()) throw ParseError("PLY has no vertex element", 0);
  const PlyElement& vertex = elements[vertex_elem];

  int xyz[3] = {-1, -1, -1};
  std::vector<std::string> extra_names;
  std::vector<std::size_t> extra_idx;
  for (std::size_t k = 0; k < vertex.props.size(); ++k) {
    const auto& p = vertex.props[k];
    if (p.is_list) throw ParseError("list properties on vertices are not supported", 0);
    if (p.name == "x" || p.name == "y" || p.name == "z") {
      xyz[p.name[0] - 'x'] = static_cast<int>(k);
    } else {
      extra_names.push_back(p.name);
      extra_idx.push_back(k);
    }
  }
  if (xyz[0] < 0 || xyz[1] < 0 || xyz[2] < 0)
    throw ParseError("PLY vertex element must have x, y and z", 0);

  CloudBuilder builder(extra_names);
  builder.reserve(vertex.count);
  std::vector<double> row(vertex.props.size());

  if (enc == Enc::Ascii) {
    // Skip any element declared before the vertices, one line per item.
    for (std::size_t e = 0; e < vertex_elem; ++e)
      for (std::size_t i = 0; i < elements[e].count; ++i)
        if (!reader.next(line)) throw ParseError("unexpected end of PLY data", reader.lineNo());
    for (std::size_t i = 0; i < vertex.count; ++i) {
      if (!reader.next(line)) throw ParseError("unexpected end of PLY data", reader.lineNo());
      const std::size_t ln = reader.lineNo();
      const auto toks = splitWs(trim(line));
      if (toks.size() != row.size())
        throw ParseError("wrong number of values at line " + std::to_string(ln), ln);
      for (std::size_t k = 0; k < row.size(); ++k) {
        auto d = toDouble(toks[k]);
        if (!d) throw ParseError("invalid number at line " + std::to_string(ln), ln);
        row[k] = *d;
      }
      builder.add(row[static_cast<std::size_t>(xyz[0])], row[static_cast<std::size_t>(xyz[1])],
                  row[static_cast<std::size_t>(xyz[2])], ln);
      for (std::size_t k = 0; k < extra_idx.size(); ++k) builder.addExtra(k, row[extra_idx[k]]);
    }
    return builder.finish();
  }

  std::size_t pos = reader.pos();
  for (std::size_t e = 0; e < vertex_elem; ++e) {
    std::size_t stride = 0;
    for (const auto& p : elements[e].props) {
      if (p.is_list)
        throw ParseError("binary PLY with list elements before vertices is not supported", 0);
      stride += plySize(p.type);
    }
    pos += stride * elements[e].count;
  }
  std::size_t stride = 0;
  std::vector<std::size_t> offsets;
  for (const auto& p : vertex.props) {
    offsets.push_back(stride);
    stride += plySize(p.type);
  }
  if (pos > data.size() || (data.size() - pos) / stride < vertex.count)
    throw ParseError("binary PLY data is truncated", 0);
  for (std::size_t i = 0; i < vertex.count; ++i) {
    const char* base = data.data() + pos + i * stride;
    for (std::size_t k = 0; k < row.size(); ++k)
      row[k] = readPlyValue(vertex.props[k].type, base + offsets[k]);
    builder.add(row[static_cast<std::size_t>(xyz[0])], row[static_cast<std::size_t>(xyz[1])],
                row[static_cast<std::size_t>(xyz[2])], i + 1);
    for (std::size_t k = 0; k < extra_idx.size(); ++k) builder.addExtra(k, row[extra_idx[k]]);
  }
  return builder.finish();
}

inline void writeFile(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace detail

/// @brief Reads a cloud, preserving file order.
///
/// Throws IoError when the file cannot be read and ParseError (carrying the
/// offending line or record) for malformed or non-finite records.
inline PointCloud loadCloud(const std::filesystem::path& path, CloudFormat format) {
  const std::string data = detail::readFile(path);
  switch (format) {
    case CloudFormat::Xyz: return detail::parseXyz(data);
    case CloudFormat::PcdAscii: return detail::parsePcd(data);
    case CloudFormat::Ply: return detail::parsePly(data);
  }
  throw InvalidArgument("unknown format");
}

inline PointCloud loadCloud(const std::filesystem::path& path) {
  return loadCloud(path, formatFromPath(path));
}

/// Serializes to an in-memory buffer; see saveCloud.
inline std::string serializeCloud(const PointCloud& cloud, CloudFormat format,
                                  const std::vector<std::string>& scalars = {},
                                  const SaveOptions& options = {}) {
  std::vector<const std::vector<double>*> columns;
  for (const auto& name : scalars) columns.push_back(&cloud.attribute(name));
  for (const auto& name : scalars)
    if (name == "x" || name == "y" || name == "z" || name.empty() ||
        name.find_first_of(" \t\r\n") != std::string::npos)
      throw InvalidArgument("invalid scalar field name '" + name + "'");

  const int prec = options.precision;
  const std::size_t n = cloud.size();
  std::string out;
  out.reserve(n * 32 * (3 + scalars.size()) / 3 + 512);

  auto append_row = [&](std::size_t i) {
    const Point3& p = cloud[i];
    out += detail::fmt(p.x(), prec);
    out += ' ';
    out += detail::fmt(p.y(), prec);
    out += ' ';
    out += detail::fmt(p.z(), prec);
    for (const auto* col : columns) {
      out += ' ';
      out += detail::fmt((*col)[i], prec);
    }
    out += '\n';
  };

  std::string names = "x y z";
  for (const auto& s : scalars) names += ' ' + s;

  switch (format) {
    case CloudFormat::Xyz: {
      if (!scalars.empty()) out += "# fields: " + names + "\n";
      for (std::size_t i = 0; i < n; ++i) append_row(i);
      break;
    }
    case CloudFormat::PcdAscii: {
      const std::size_t nf = 3 + scalars.size();
      auto repeat = [&](const char* tok) {
        std::string s;
        for (std::size_t k = 0; k < nf; ++k) s += (k ? " " : "") + std::string(tok);
        return s;
      };
      out += "# .PCD v0.7 - Point Cloud Data file format\n";
      out += "VERSION 0.7\n";
      out += "FIELDS " + names + "\n";
      out += "SIZE " + repeat("8") + "\n";
      out += "TYPE " + repeat("F") + "\n";
      out += "COUNT " + repeat("1") + "\n";
      out += "WIDTH " + std::to_string(n) + "\n";
      out += "HEIGHT 1\n";
      out += "VIEWPOINT 0 0 0 1 0 0 0\n";
      out += "POINTS " + std::to_string(n) + "\n";
      out += "DATA ascii\n";
      for (std::size_t i = 0; i < n; ++i) append_row(i);
      break;
    }
    case CloudFormat::Ply: {
      out += "ply\n";
      out += options.binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n";
      out += "element vertex " + std::to_string(n) + "\n";
      out += "property double x\nproperty double y\nproperty double z\n";
      for (const auto& s : scalars) out += "property double " + s + "\n";
      out += "end_header\n";
      if (!options.binary) {
        for (std::size_t i = 0; i < n; ++i) append_row(i);
      } else {
        auto put = [&out](double v) {
          char buf[sizeof(double)];
          std::memcpy(buf, &v, sizeof(double));
          out.append(buf, sizeof(double));
        };
        for (std::size_t i = 0; i < n; ++i) {
          put(cloud[i].x());
          put(cloud[i].y());
          put(cloud[i].z());
          for (const auto* col : columns) put((*col)[i]);
        }
      }
      break;
    }
  }
  return out;
}

/// @brief Writes `cloud` plus the named scalar attributes, one column each.
///
/// Throws UnknownAttribute for a scalar that the cloud does not carry.
inline void saveCloud(const PointCloud& cloud, const std::filesystem::path& path,
                      CloudFormat format, const std::vector<std::string>& scalars = {},
                      const SaveOptions& options = {}) {
  detail::writeFile(path, serializeCloud(cloud, format, scalars, options));
}

}  // namespace donseg

#endif  // DONSEG_IO_HPP
