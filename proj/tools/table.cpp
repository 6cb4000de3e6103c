#include "table.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace etop::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != header_.size()) throw std::runtime_error("table row width mismatch");
  rows_.push_back(std::move(row));
}

void Table::write_csv(const std::string& path) const {
  std::string out;
  for (std::size_t c = 0; c < header_.size(); ++c) {
    if (c) out += ',';
    out += header_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      if (const auto* s = std::get_if<std::string>(&row[c]))
        out += *s;
      else if (const auto* d = std::get_if<double>(&row[c]))
        out += format_double(*d);
      else
        out += std::to_string(std::get<long long>(row[c]));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

void Table::write_json(const std::string& path) const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (const auto* s = std::get_if<std::string>(&row[c]))
        obj[header_[c]] = *s;
      else if (const auto* d = std::get_if<double>(&row[c]))
        obj[header_[c]] = *d;
      else
        obj[header_[c]] = std::get<long long>(row[c]);
    }
    rows.push_back(std::move(obj));
  }
  write_file_atomic(path, rows.dump(2) + "\n");
}

}  // namespace etop::cli
