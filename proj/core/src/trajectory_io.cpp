#include "etop/trajectory_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace etop {

namespace {

constexpr char kMagic[4] = {'E', 'T', 'O', '1'};

std::uint64_t read_le(const unsigned char* bytes, int width) {
  std::uint64_t v = 0;
  for (int i = width - 1; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

void write_le(std::uint64_t v, unsigned char* bytes, int width) {
  for (int i = 0; i < width; ++i) {
    bytes[i] = static_cast<unsigned char>(v & 0xFF);
    v >>= 8;
  }
}

TrajectoryDataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  std::string line;
  const auto strip_cr = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };
  if (!std::getline(in, line)) throw ParseError(path + ": missing header row", 1);
  strip_cr(line);
  long long d = 1;
  for (char ch : line)
    if (ch == ',') ++d;
  if (line.empty()) throw ParseError(path + ": empty header row", 1);

  std::vector<double> values;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    std::stringstream fields(line);
    std::string field;
    long long col = 0;
    while (std::getline(fields, field, ',')) {
      char* end = nullptr;
      const double v = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || *end != '\0')
        throw ParseError(path + ": non-numeric field '" + field + "' at line " +
                             std::to_string(line_no),
                         line_no);
      values.push_back(v);
      ++col;
    }
    if (col != d)
      throw ParseError(path + ": expected " + std::to_string(d) + " fields, got " +
                           std::to_string(col) + " at line " + std::to_string(line_no),
                       line_no);
  }
  const long long frames = static_cast<long long>(values.size()) / d;
  if (frames < 2) throw ParseError(path + ": dataset needs at least 2 frames", line_no);

  TrajectoryDataset data;
  data.frames.resize(frames, d);
  for (long long i = 0; i < frames; ++i)
    for (long long c = 0; c < d; ++c) data.frames(i, c) = values[i * d + c];
  data.source = path;
  return data;
}

TrajectoryDataset load_raw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path, -1, 0);
  unsigned char header[16];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (in.gcount() != sizeof(header))
    throw ParseError(path + ": truncated header (" + std::to_string(in.gcount()) + " bytes)", -1,
                     in.gcount());
  if (std::memcmp(header, kMagic, 4) != 0)
    throw ParseError(path + ": bad magic, expected ETO1", -1, 0);
  const std::uint64_t d = read_le(header + 4, 4);
  const std::uint64_t frames = read_le(header + 8, 8);
  if (d == 0) throw ParseError(path + ": dimension is zero", -1, 4);
  if (frames == 0) throw ParseError(path + ": empty dataset (M = 0)", -1, 8);
  if (frames < 2) throw ParseError(path + ": dataset needs at least 2 frames", -1, 8);
  if (d > (1ull << 20) || frames > (1ull << 40))
    throw ParseError(path + ": implausible header sizes", -1, 4);

  TrajectoryDataset data;
  data.frames.resize(static_cast<Eigen::Index>(frames), static_cast<Eigen::Index>(d));
  std::vector<unsigned char> row(d * 8);
  std::uint64_t offset = 16;
  for (std::uint64_t i = 0; i < frames; ++i) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != row.size())
      throw ParseError(path + ": truncated payload at byte " +
                           std::to_string(offset + static_cast<std::uint64_t>(in.gcount())),
                       -1, static_cast<long long>(offset + in.gcount()));
    for (std::uint64_t c = 0; c < d; ++c)
      data.frames(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          std::bit_cast<double>(read_le(row.data() + c * 8, 8));
    offset += row.size();
  }
  data.source = path;
  return data;
}

}  // namespace

TrajectoryDataset load_trajectory(const std::string& path, TrajectoryFormat format) {
  return format == TrajectoryFormat::Csv ? load_csv(path) : load_raw(path);
}

void save_trajectory(const std::string& path, const Eigen::MatrixXd& frames,
                     TrajectoryFormat format, const std::vector<std::string>& column_names) {
  const Eigen::Index m = frames.rows(), d = frames.cols();
  if (format == TrajectoryFormat::Csv) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path, 0);
    for (Eigen::Index c = 0; c < d; ++c) {
      if (c) out << ',';
      if (c < static_cast<Eigen::Index>(column_names.size()))
        out << column_names[c];
      else
        out << 'x' << c;
    }
    out << '\n';
    char buf[40];
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index c = 0; c < d; ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g", frames(i, c));
        if (c) out << ',';
        out << buf;
      }
      out << '\n';
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path, -1, 0);
  unsigned char header[16];
  std::memcpy(header, kMagic, 4);
  write_le(static_cast<std::uint64_t>(d), header + 4, 4);
  write_le(static_cast<std::uint64_t>(m), header + 8, 8);
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  std::vector<unsigned char> row(static_cast<std::size_t>(d) * 8);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index c = 0; c < d; ++c)
      write_le(std::bit_cast<std::uint64_t>(frames(i, c)), row.data() + c * 8, 8);
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
}

TrajectoryFormat trajectory_format_from_name(const std::string& name) {
  if (name == "csv") return TrajectoryFormat::Csv;
  if (name == "raw-f64") return TrajectoryFormat::RawF64;
  throw ConfigError("unknown trajectory format '" + name + "' (use csv or raw-f64)");
}

}  // namespace etop
