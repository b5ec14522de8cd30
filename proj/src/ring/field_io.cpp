#include "ring/field_io.hpp"

#include <cstdio>
#include <fstream>

#include "ring/errors.hpp"

namespace ring {

namespace {

nlohmann::json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

cplx cplx_from(const nlohmann::json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

} // namespace

nlohmann::json field_to_json(const HarmonicField& f) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : f.modes()) {
    modes.push_back({{"n", m.n},
                     {"ARe", m.A.real()},
                     {"AIm", m.A.imag()},
                     {"BRe", m.B.real()},
                     {"BIm", m.B.imag()}});
  }
  return {{"rho", f.rho()}, {"a0", cplx_json(f.a0())}, {"b0", cplx_json(f.b0())},
          {"modes", modes}};
}

HarmonicField field_from_json(const nlohmann::json& j) {
  std::vector<HarmonicMode> modes;
  for (const auto& m : j.at("modes")) {
    modes.push_back({m.at("n").get<int>(),
                     {m.at("ARe").get<double>(), m.at("AIm").get<double>()},
                     {m.at("BRe").get<double>(), m.at("BIm").get<double>()}});
  }
  return HarmonicField(j.at("rho").get<double>(), cplx_from(j.at("a0")), cplx_from(j.at("b0")),
                       std::move(modes));
}

void save_field(const HarmonicField& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << field_to_json(f).dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

HarmonicField load_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  nlohmann::json j;
  try {
    in >> j;
    return field_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad field file " + path + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : n_cols_(header.size()) {
  if (header.empty()) throw DomainError("CsvWriter: empty header");
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != n_cols_) throw DomainError("CsvWriter: row width mismatch");
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

void CsvWriter::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text_;
  if (!out) throw IoError("write failed: " + path);
}

} // namespace ring
