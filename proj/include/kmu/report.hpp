#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kmu {

// pass means value <= threshold (Below) or value > threshold (Above, for
// corruption-style witnesses that must stay large).
enum class Direction { Below, Above };

struct ResidualEntry {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Direction direction = Direction::Below;
  bool pass = false;
};

struct Tolerances {
  std::map<std::string, double> values;

  static Tolerances defaults();
  double get(const std::string& name) const;
  void set(const std::string& name, double v) { values[name] = v; }
};

struct Report {
  std::string family_label;  // homogeneous-space name with concrete n
  int n = 0;
  double alpha = 0.0;
  uint64_t seed = 0;

  bool sasakian = false;
  double kappa = 0.0, mu = 0.0, lambda = 0.0;
  std::optional<double> boeckx_fit;
  std::optional<double> boeckx_closed;
  std::string base_label;  // empty when unclassified (Sasakian)
  std::optional<std::string> standard_kind;
  std::optional<double> standard_a;

  std::vector<ResidualEntry> residuals;
  std::vector<std::string> errors;
  bool pass = false;

  void add(const std::string& name, double value, double threshold,
           Direction dir = Direction::Below);
  void finalize();  // fills pass from entries and errors
};

// deterministic serialization: 15 significant digits, residuals in
// scientific notation
std::string json_number(double v);
std::string json_scientific(double v);
std::string json_escape(const std::string& s);

std::string to_json(const Report& r);
std::string to_text(const Report& r);

}  // namespace kmu
