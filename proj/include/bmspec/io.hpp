#pragma once

#include "bmspec/hypermatrix.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace bmspec {

// {"order": 2|3, "dims": [...], "data": [...], "metadata": {...}}, data last-index-fastest.
struct HypermatrixDocument {
  int order = 3;
  std::vector<std::size_t> dims;
  std::vector<double> data;
  nlohmann::json metadata = nlohmann::json::object();

  static HypermatrixDocument from(const Hypermatrix3& h, nlohmann::json metadata = nlohmann::json::object());
  static HypermatrixDocument from(const MatrixR& m, nlohmann::json metadata = nlohmann::json::object());

  Hypermatrix3 hypermatrix() const;  // order must be 3
  MatrixR matrix() const;            // order must be 2
};

// Numbers are written with 17 significant digits.
std::string to_json_text(const HypermatrixDocument& doc);
// Throws parse errors naming the line/column or the offending field.
HypermatrixDocument parse_document(const std::string& text, const std::string& source = "<input>");

// "-" means stdin/stdout.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

std::string dump_number_array(const std::vector<double>& values);

}  // namespace bmspec
