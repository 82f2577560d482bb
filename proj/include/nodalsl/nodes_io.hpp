#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nodalsl/forward.hpp"

namespace nodalsl {

/// Shortest exact decimal form of a double (round-trips to the same bits).
std::string format_double(double v);

/// Fixed 17-significant-digit form used in data files.
std::string format_double17(double v);

/// Write `content` to `path` atomically (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// Nodes CSV: header `n,j,x,k_n`, LF line endings, '.' decimal separator,
/// rows sorted by (n, j), x and k_n at 17 significant digits.
std::string nodes_to_csv(const NodalDataset& dataset);
void write_nodes_csv(const std::string& path, const NodalDataset& dataset);

/// Parse a nodes CSV.  Validates the header, (n,j) uniqueness and (n,j)
/// ordering.  Node reference positions are not stored in the file; they are
/// recomputed from the case when needed.
NodalDataset read_nodes_csv(const std::string& path);

/// Two-column CSV `x,<value>` with a header row.
std::vector<std::pair<double, double>> read_xy_csv(const std::string& path);
std::string xy_to_csv(const std::string& value_name, const std::vector<double>& x,
                      const std::vector<double>& y);

}  // namespace nodalsl
