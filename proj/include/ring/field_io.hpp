#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ring/harmonic.hpp"

namespace ring {

// Schema: {rho, a0:{re,im}, b0:{re,im}, modes:[{n, ARe, AIm, BRe, BIm}]}
nlohmann::json field_to_json(const HarmonicField& f);
HarmonicField field_from_json(const nlohmann::json& j);

void save_field(const HarmonicField& f, const std::string& path);
HarmonicField load_field(const std::string& path);

// Deterministic shortest round-trip formatting for CSV cells.
std::string format_double(double v);

// Plain CSV with a header row and '\n' line endings.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header);

  void row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }
  void save(const std::string& path) const;

private:
  size_t n_cols_;
  std::string text_;
};

} // namespace ring
