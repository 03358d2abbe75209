#include "kmu/report.hpp"

#include <cstdio>

namespace kmu {

Tolerances Tolerances::defaults() {
  Tolerances t;
  t.values = {
      {"structure_constants", 1e-12},
      {"jacobi", 1e-12},
      {"gram_condition", 1e8},
      {"decomp_reductive", 1e-12},
      {"decomp_hbar_closed", 1e-12},
      {"decomp_hbar_b", 1e-12},
      {"decomp_bb_hbar", 1e-12},
      {"decomp_bb_m_xi", 1e-12},
      {"contact_phi_square", 1e-12},
      {"contact_metric_compat", 1e-12},
      {"contact_deta", 1e-12},
      {"contact_eta_dual", 1e-12},
      {"contact_phi_xi", 1e-12},
      {"h_trace", 1e-10},
      {"h_g_symmetric", 1e-10},
      {"h_xi_kernel", 1e-10},
      {"h_phi_anticommute", 1e-10},
      {"h_eigen_pattern", 1e-8},
      {"lc_torsion", 1e-10},
      {"lc_metricity", 1e-10},
      {"lc_xi_deviation", 1e-10},
      {"curv_antisym_xy", 1e-9},
      {"curv_antisym_zw", 1e-9},
      {"curv_bianchi", 1e-9},
      {"kappa_mu_fit", 1e-8},
      {"kappa_le_one", 1e-10},
      {"kappa_lambda_consistency", 1e-9},
      {"lambda_closed_form", 1e-9},
      {"boeckx_match", 1e-8},
      {"curvature_display_cross", 1e-8},
      {"eta_parallel", 1e-9},
      {"da_axioms", 1e-10},
      {"da_invariant", 1e-10},
      {"da_h_scaling", 1e-9},
      {"da_kappa_mu_formula", 1e-9},
      {"ad_invariance", 1e-9},
      {"base_xi_leak", 1e-9},
      {"base_lts_axioms", 1e-9},
      {"base_curvature_cross", 1e-9},
      {"tau_involution", 1e-9},
      {"tau_automorphism", 1e-9},
      {"tau_anticommute", 1e-9},
      {"rbar_plus_scalar", 1e-9},
      {"rbar_plus_residual", 1e-9},
      {"standard_square", 1e-9},
      {"standard_invariant", 1e-9},
      {"standard_twisted", 1e-9},
      {"standard_uniqueness_low", 1e-3},
      {"standard_uniqueness_high", 1e-3},
      {"jordan_off_subspace", 1e-9},
      {"jordan_jt1", 1e-9},
      {"jordan_jt2", 1e-9},
      {"jordan_rt", 1e-9},
      {"jordan_scalar_match", 1e-9},
      {"jordan_scalar_residual", 1e-9},
  };
  return t;
}

double Tolerances::get(const std::string& name) const {
  auto it = values.find(name);
  if (it == values.end()) return 0.0;
  return it->second;
}

void Report::add(const std::string& name, double value, double threshold, Direction dir) {
  ResidualEntry e;
  e.name = name;
  e.value = value;
  e.threshold = threshold;
  e.direction = dir;
  e.pass = dir == Direction::Below ? value <= threshold : value > threshold;
  residuals.push_back(std::move(e));
}

void Report::finalize() {
  pass = errors.empty();
  for (const auto& e : residuals)
    if (!e.pass) pass = false;
}

std::string json_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string json_scientific(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string to_json(const Report& r) {
  std::string s;
  s += "{\n";
  s += "  \"spec\": {\"family\": \"" + json_escape(r.family_label) +
       "\", \"n\": " + std::to_string(r.n) + ", \"alpha\": " + json_number(r.alpha) +
       ", \"seed\": " + std::to_string(r.seed) + "},\n";
  s += std::string("  \"sasakian\": ") + (r.sasakian ? "true" : "false") + ",\n";
  s += "  \"kappa\": " + json_number(r.kappa) + ",\n";
  s += "  \"mu\": " + json_number(r.mu) + ",\n";
  s += "  \"lambda\": " + json_number(r.lambda) + ",\n";
  s += "  \"boeckx\": " + (r.boeckx_fit ? json_number(*r.boeckx_fit) : "null") + ",\n";
  s += "  \"boeckx_closed_form\": " +
       (r.boeckx_closed ? json_number(*r.boeckx_closed) : "null") + ",\n";
  s += "  \"base\": " +
       (r.base_label.empty() ? std::string("null") : "\"" + json_escape(r.base_label) + "\"") +
       ",\n";
  if (r.standard_kind)
    s += "  \"standard_structure\": {\"kind\": \"" + json_escape(*r.standard_kind) +
         "\", \"a\": " + json_number(r.standard_a.value_or(0.0)) + "},\n";
  else
    s += "  \"standard_structure\": null,\n";
  s += "  \"residuals\": {\n";
  for (size_t i = 0; i < r.residuals.size(); ++i) {
    const auto& e = r.residuals[i];
    s += "    \"" + json_escape(e.name) + "\": {\"value\": " + json_scientific(e.value) +
         ", \"threshold\": " + json_scientific(e.threshold) + ", \"direction\": \"" +
         (e.direction == Direction::Below ? "below" : "above") + "\", \"pass\": " +
         (e.pass ? "true" : "false") + "}";
    s += i + 1 < r.residuals.size() ? ",\n" : "\n";
  }
  s += "  },\n";
  s += "  \"errors\": [";
  for (size_t i = 0; i < r.errors.size(); ++i) {
    s += "\"" + json_escape(r.errors[i]) + "\"";
    if (i + 1 < r.errors.size()) s += ", ";
  }
  s += "],\n";
  s += std::string("  \"pass\": ") + (r.pass ? "true" : "false") + "\n";
  s += "}";
  return s;
}

std::string to_text(const Report& r) {
  std::string s;
  s += "model " + r.family_label + "  n=" + std::to_string(r.n) + "  alpha=" +
       json_number(r.alpha) + "  seed=" + std::to_string(r.seed) + "\n";
  s += "  kappa=" + json_number(r.kappa) + "  mu=" + json_number(r.mu) + "  lambda=" +
       json_number(r.lambda);
  if (r.boeckx_fit) s += "  I=" + json_number(*r.boeckx_fit);
  if (r.sasakian) s += "  [Sasakian]";
  s += "\n";
  if (!r.base_label.empty()) s += "  base: " + r.base_label + "\n";
  if (r.standard_kind)
    s += "  standard structure: " + *r.standard_kind + ", a=" +
         json_number(r.standard_a.value_or(0.0)) + "\n";
  for (const auto& e : r.residuals) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-28s %14.6e %s %9.1e  %s\n", e.name.c_str(), e.value,
                  e.direction == Direction::Below ? "<=" : "> ", e.threshold,
                  e.pass ? "ok" : "FAIL");
    s += line;
  }
  for (const auto& e : r.errors) s += "  error: " + e + "\n";
  s += r.pass ? "  PASS\n" : "  FAIL\n";
  return s;
}

}  // namespace kmu
