#include "bmspec/io.hpp"

#include "bmspec/error.hpp"
#include "bmspec/format.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace bmspec {

using nlohmann::json;

HypermatrixDocument HypermatrixDocument::from(const Hypermatrix3& h, json metadata) {
  HypermatrixDocument d;
  d.order = 3;
  d.dims = {h.dims()[0], h.dims()[1], h.dims()[2]};
  d.data = h.data();
  d.metadata = std::move(metadata);
  return d;
}

HypermatrixDocument HypermatrixDocument::from(const MatrixR& m, json metadata) {
  HypermatrixDocument d;
  d.order = 2;
  d.dims = {static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())};
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d.data.push_back(m(i, j));
  d.metadata = std::move(metadata);
  return d;
}

Hypermatrix3 HypermatrixDocument::hypermatrix() const {
  if (order != 3) throw Error(ErrorKind::InvalidArgument, "document holds an order-" + std::to_string(order) + " array, expected 3");
  return Hypermatrix3::from_data({dims[0], dims[1], dims[2]}, data);
}

MatrixR HypermatrixDocument::matrix() const {
  if (order != 2) throw Error(ErrorKind::InvalidArgument, "document holds an order-" + std::to_string(order) + " array, expected 2");
  MatrixR m(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
  for (std::size_t i = 0; i < dims[0]; ++i)
    for (std::size_t j = 0; j < dims[1]; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = data[i * dims[1] + j];
  return m;
}

std::string dump_number_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (t) out += ", ";
    if (!std::isfinite(values[t])) throw Error(ErrorKind::NumericRange, "cannot serialize a non-finite number");
    // "-0" would parse back as the integer 0
    out += (values[t] == 0.0 && std::signbit(values[t])) ? "-0.0" : repr17(values[t]);
  }
  return out + "]";
}

std::string to_json_text(const HypermatrixDocument& doc) {
  std::string out = "{\n";
  out += "  \"order\": " + std::to_string(doc.order) + ",\n";
  out += "  \"dims\": [";
  for (std::size_t t = 0; t < doc.dims.size(); ++t) out += (t ? ", " : "") + std::to_string(doc.dims[t]);
  out += "],\n";
  out += "  \"data\": " + dump_number_array(doc.data);
  if (!doc.metadata.empty()) out += ",\n  \"metadata\": " + doc.metadata.dump();
  return out + "\n}\n";
}

namespace {

[[noreturn]] void field_error(const std::string& source, const std::string& field, const std::string& msg) {
  throw Error(ErrorKind::Parse, source + ": field '" + field + "': " + msg);
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t t = 0; t < byte && t < text.size(); ++t) {
    if (text[t] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

HypermatrixDocument parse_document(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, source + ": top level must be an object");
  HypermatrixDocument d;
  if (!j.contains("order") || !j["order"].is_number_integer()) field_error(source, "order", "missing or not an integer");
  d.order = j["order"].get<int>();
  if (d.order != 2 && d.order != 3) field_error(source, "order", "must be 2 or 3");
  if (!j.contains("dims") || !j["dims"].is_array()) field_error(source, "dims", "missing or not an array");
  const json& dims = j["dims"];
  if (dims.size() != static_cast<std::size_t>(d.order)) field_error(source, "dims", "length must equal order");
  std::size_t total = 1;
  for (std::size_t t = 0; t < dims.size(); ++t) {
    if (!dims[t].is_number_unsigned() || dims[t].get<std::size_t>() == 0)
      field_error(source, "dims[" + std::to_string(t) + "]", "must be a positive integer");
    d.dims.push_back(dims[t].get<std::size_t>());
    total *= d.dims.back();
  }
  if (!j.contains("data") || !j["data"].is_array()) field_error(source, "data", "missing or not an array");
  const json& data = j["data"];
  if (data.size() != total)
    field_error(source, "data", "has " + std::to_string(data.size()) + " entries, dims require " + std::to_string(total));
  for (std::size_t t = 0; t < data.size(); ++t) {
    if (!data[t].is_number()) field_error(source, "data[" + std::to_string(t) + "]", "not a number");
    d.data.push_back(data[t].get<double>());
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) field_error(source, "metadata", "must be an object");
    d.metadata = j["metadata"];
  }
  return d;
}

std::string read_text(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, path + ": cannot open for writing");
  out << text;
}

}  // namespace bmspec
