#pragma once

#include <string>
#include <variant>
#include <vector>

namespace etop::cli {

/// Column-ordered table serialized to CSV (and optionally a JSON mirror).
/// Floats are written with 17 significant digits so a 64-bit round trip is
/// exact; files are written to a temp path and renamed into place.
class Table {
 public:
  using Cell = std::variant<std::string, double, long long>;

  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<Cell> row);

  void write_csv(const std::string& path) const;
  void write_json(const std::string& path) const;

  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);  // %.17g

/// Atomic text write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace etop::cli
