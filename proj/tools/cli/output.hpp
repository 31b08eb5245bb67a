#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "subzeta/qpoly.hpp"

namespace subzeta::cli {

// %.17g, which round-trips a double.
std::string fmt(double x);

// Comma-separated rows with LF endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& row(std::vector<std::string> cells);
  std::string str() const { return text_; }
  void save(const std::filesystem::path& path) const;

 private:
  std::size_t width_;
  std::string text_;
};

nlohmann::json to_json(const mpq_class& q);
nlohmann::json to_json(std::complex<double> z);
nlohmann::json to_json(const QPoly& f);
nlohmann::json to_json(const RationalFn& f);
nlohmann::json to_json(const PoleData& d);

// Pretty-printed with sorted keys and a trailing newline.
void save_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace subzeta::cli
