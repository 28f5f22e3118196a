#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qifs/classical.hpp"
#include "qifs/husimi.hpp"
#include "qifs/qstate.hpp"

namespace qifs {

using nlohmann::json;

// Matrices serialize as {"dim": N, "re": [[...]], "im": [[...]]}, row-major.
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);

// Kets use flat arrays: {"dim": N, "re": [...], "im": [...]}.
json ket_to_json(const Vec& v);
Vec ket_from_json(const json& j);

std::string csv_field(const std::string& raw);  // RFC-4180 quoting

void write_csv_measure(const std::filesystem::path& path, const EmpiricalMeasure& mu);
void write_csv_grid(const std::filesystem::path& path, const HusimiGrid& grid);
void write_csv_profile(const std::filesystem::path& path, const std::string& label,
                       const Eigen::VectorXd& values);

struct PgmOptions {
  bool binary = false;  // P2 ASCII by default, P5 when set
  int bits = 8;         // 8 or 16
  std::string comment;  // single comment line (config hash for CLI runs)
};

/// Max-value normalized PGM; the normalization constant belongs in a JSON
/// sidecar next to the image.
void write_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& values,
               const PgmOptions& opt = {});
json pgm_sidecar(const Eigen::MatrixXd& values, const PgmOptions& opt);

void write_text(const std::filesystem::path& path, const std::string& content);
void write_json(const std::filesystem::path& path, const json& j);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace qifs
