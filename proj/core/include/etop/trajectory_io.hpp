#pragma once

#include <string>
#include <vector>

#include "etop/systems.hpp"

namespace etop {

enum class TrajectoryFormat { Csv, RawF64 };

/// Reads trajectory frames.
///
/// CSV: a header row of column names, then one frame per line of
/// comma-separated decimal numbers. Raw ("raw-f64"): magic bytes "ETO1",
/// dimension d as 32-bit unsigned little-endian, frame count M as 64-bit
/// unsigned little-endian, then M*d IEEE-754 doubles little-endian,
/// row-major.
///
/// Throws ParseError with a line number (CSV) or byte offset (raw) on
/// malformed input; a dataset needs at least 2 frames.
TrajectoryDataset load_trajectory(const std::string& path, TrajectoryFormat format);

/// Writes frames in either format (the exact inverse of load_trajectory).
/// CSV floats use 17 significant digits so a round trip is bit-exact.
void save_trajectory(const std::string& path, const Eigen::MatrixXd& frames,
                     TrajectoryFormat format,
                     const std::vector<std::string>& column_names = {});

TrajectoryFormat trajectory_format_from_name(const std::string& name);  // "csv" | "raw-f64"

}  // namespace etop
