#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "gcrf/errors.hpp"

namespace gcrf::io {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_double(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

json row_major(const Matrix& m) {
  json arr = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
  }
  return arr;
}

Matrix from_row_major(const json& arr, Index rows, Index cols, const char* key) {
  if (!arr.is_array() || arr.size() != static_cast<std::size_t>(rows * cols)) {
    throw Error(std::string("model JSON: \"") + key + "\" must hold " +
                std::to_string(rows * cols) + " numbers");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const json& v = arr[static_cast<std::size_t>(i * cols + j)];
      if (!v.is_number()) throw Error(std::string("model JSON: non-numeric entry in ") + key);
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string elapsed_cell(double ms) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), ms, std::chars_format::fixed, 3);
  return ec == std::errc() ? std::string(buf, ptr) : std::string();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

Matrix parse_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    std::vector<double> values(cells.size());
    bool numeric = true;
    for (std::size_t j = 0; j < cells.size() && numeric; ++j) {
      numeric = parse_double(cells[j], values[j]);
    }
    if (!numeric) {
      if (!seen_content) {
        seen_content = true;
        columns = cells.size();
        continue;  // header
      }
      throw ParseError(line_no, "non-numeric cell");
    }
    seen_content = true;
    if (columns == 0) columns = cells.size();
    if (cells.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " columns, got " +
                                    std::to_string(cells.size()));
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value");
    }
    rows.push_back(std::move(values));
  }
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(columns));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < columns; ++j) {
      m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return parse_matrix_csv(in);
  } catch (const ParseError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_matrix_csv(std::ostream& out, const Matrix& m, const std::vector<std::string>& header) {
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  if (!header.empty()) out << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m,
                      const std::vector<std::string>& header) {
  auto out = open_for_write(path);
  write_matrix_csv(out, m, header);
  if (!out) throw Error("failed writing " + path.string());
}

std::string model_to_json(const ModelFile& model) {
  const ModelParams& params = model.params;
  json doc;
  doc["n"] = params.n();
  doc["p"] = params.p();
  doc["lambda"] = row_major(params.lambda);
  doc["theta"] = row_major(params.theta);
  if (model.x_mean) doc["x_mean"] = row_major(*model.x_mean);
  if (model.y_mean) doc["y_mean"] = row_major(*model.y_mean);
  return doc.dump(2) + "\n";
}

ModelFile model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("model JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("p") || !doc.contains("lambda") ||
      !doc.contains("theta")) {
    throw Error("model JSON: expected keys n, p, lambda, theta");
  }
  if (!doc["n"].is_number_integer() || !doc["p"].is_number_integer()) {
    throw Error("model JSON: n and p must be integers");
  }
  const auto n = doc["n"].get<Index>();
  const auto p = doc["p"].get<Index>();
  if (n < 1 || p < 1) throw Error("model JSON: n and p must be positive");

  ModelFile model;
  model.params.lambda = from_row_major(doc["lambda"], p, p, "lambda");
  model.params.theta = from_row_major(doc["theta"], n, p, "theta");
  if (doc.contains("x_mean")) model.x_mean = Vector(from_row_major(doc["x_mean"], n, 1, "x_mean"));
  if (doc.contains("y_mean")) model.y_mean = Vector(from_row_major(doc["y_mean"], p, 1, "y_mean"));
  return model;
}

void write_model_json(const std::filesystem::path& path, const ModelFile& model) {
  auto out = open_for_write(path);
  out << model_to_json(model);
  if (!out) throw Error("failed writing " + path.string());
}

ModelFile read_model_json(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << "iter,objective,grad_norm,primal_residual,dual_residual,mu,elapsed_ms\n";
  for (const auto& r : trace) {
    out << r.iter << ',' << format_double(r.objective) << ',' << optional_cell(r.grad_norm) << ','
        << optional_cell(r.primal_residual) << ',' << optional_cell(r.dual_residual) << ','
        << optional_cell(r.mu) << ',' << elapsed_cell(r.elapsed_ms) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
  auto out = open_for_write(path);
  write_trace_csv(out, trace);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace gcrf::io
