#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcrf/solver.hpp"
#include "gcrf/types.hpp"

namespace gcrf::io {

/// %.17g; round-trips every finite double.
std::string format_double(double value);

/// Plain numeric CSV, one sample per row. A first line containing any
/// non-numeric cell is treated as a header and skipped.
Matrix parse_matrix_csv(std::istream& in);
Matrix read_matrix_csv(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const Matrix& m,
                      const std::vector<std::string>& header = {});
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& header = {});

/// {"n", "p", "lambda": row-major, "theta": row-major}, plus optional
/// "x_mean"/"y_mean" when the model was fit on centered data.
struct ModelFile {
  ModelParams params;
  std::optional<Vector> x_mean;
  std::optional<Vector> y_mean;
};

std::string model_to_json(const ModelFile& model);
ModelFile model_from_json(const std::string& text);
void write_model_json(const std::filesystem::path& path, const ModelFile& model);
ModelFile read_model_json(const std::filesystem::path& path);

/// iter,objective,grad_norm,primal_residual,dual_residual,mu,elapsed_ms
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);

}  // namespace gcrf::io
