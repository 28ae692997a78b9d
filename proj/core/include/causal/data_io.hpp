#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "causal/estimator/effect.hpp"
#include "causal/graph/pdag.hpp"

namespace causal {

/// Numeric table with a header row.
struct DataTable {
  std::vector<std::string> columns;
  Eigen::MatrixXd values;
};

/// Comma-separated values with a header line. Blank lines are skipped;
/// every cell must parse completely as a finite decimal. Throws InputError.
DataTable read_csv(std::istream& in);
DataTable load_csv(const std::string& path);

/// Writes with 17 significant digits so values round-trip exactly.
void write_csv(std::ostream& out, const DataTable& table);

/// Reorders the columns into graph vertex order. Extra columns are ignored;
/// a missing vertex raises InputError naming it.
Eigen::MatrixXd align_columns(const DataTable& table, const Pdag& g);

/// {"tau": {label: value}, "acov": [...row-major...], "se": {label: value},
///  "ci": {...} (optional), "method", "n", "outcome", "seed" (optional)}
nlohmann::json estimate_to_json(const EffectEstimate& est, const Pdag& g,
                                std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace causal
