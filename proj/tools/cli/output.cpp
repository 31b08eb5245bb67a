#include "cli/output.hpp"

#include <cstdio>
#include <fstream>

#include "subzeta/error.hpp"

namespace subzeta::cli {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(std::move(header)); }

CsvWriter& CsvWriter::row(std::vector<std::string> cells) {
  if (cells.size() != width_) throw Error(ErrorKind::DimensionMismatch, "csv row width");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  return *this;
}

void CsvWriter::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text_;
}

nlohmann::json to_json(const mpq_class& q) { return q.get_str(); }

nlohmann::json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json to_json(const QPoly& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (const mpq_class& c : f.coeffs()) arr.push_back(c.get_str());
  return arr;
}

nlohmann::json to_json(const RationalFn& f) {
  return {{"numerator", to_json(f.numerator())},
          {"denominator", to_json(f.denominator())},
          {"text", "(" + f.numerator().to_string() + ") / (" + f.denominator().to_string() + ")"}};
}

nlohmann::json to_json(const PoleData& d) {
  nlohmann::json roots = nlohmann::json::array();
  for (const Root& r : d.roots) {
    roots.push_back({{"re", r.value.real()}, {"im", r.value.imag()}, {"multiplicity", r.multiplicity}});
  }
  nlohmann::json factors = nlohmann::json::array();
  for (const ResolutionDatum& f : d.matched_factors) factors.push_back({f.N, f.v});
  return {{"roots", roots},
          {"rho", d.rho},
          {"m_rho", d.m_rho},
          {"rho_exact", d.rho_exact ? nlohmann::json(d.rho_exact->get_str()) : nlohmann::json(nullptr)},
          {"matched_factors", factors}};
}

void save_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace subzeta::cli
