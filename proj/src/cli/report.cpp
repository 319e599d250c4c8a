#include "symgrowth/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

namespace symgrowth::cli {

namespace fs = std::filesystem;
using nlohmann::json;

const std::map<std::string, std::string>& tag_registry() {
  static const std::map<std::string, std::string> tags = {
      {"iterate-scaling", "delta(f^n; x, y) = n delta(f; x, y) for fixed points x, y of the lift"},
      {"delta-well-defined", "delta(f; x, y) does not depend on the connecting curve or the primitive"},
      {"torus-filling", "u(s) ~ s for the flat torus cover"},
      {"hyperbolic-filling", "u(s) <= 1 on the hyperbolic plane"},
      {"filling-bounds", "u_lo(s) <= u(s) <= u_hi(s), and v(t) brackets the inverse of s u(s)"},
      {"growth-sequence", "Gamma_n >= 1 and the growth type of Gamma_n"},
      {"growth-laws", "translation bounded, skew product ~ n, twist map ~ n max|H''|"},
      {"certificate", "Gamma_n >= v(n c / 2) / b"},
      {"propagation-inequality", "Gamma_n >= d_n / (1 + diam D)"},
      {"width-scaling", "width(f^n) = n width(f)"},
      {"width-conjugation", "width is invariant under conjugation"},
      {"log-distortion", "||a^n|| <= C log(n + 1) in BS(q, p)"},
      {"u-element", "liminf log||a^n|| / log n, estimated from finite data"},
      {"appendix", "f^2 = id on T^4 / Z_2, bounded growth, no point-fixing lift acts trivially on H_1"},
      {"isoperimetric", "|int_beta alpha| <= kappa length(beta) for null-homologous loops in R^2 minus Z^2"},
      {"flux-criterion", "the flux of the shear path vanishes iff int psi = 0"},
      {"plumbing", "artifact plumbing"},
  };
  return tags;
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

json Report::to_json() const {
  json records = json::array();
  for (const auto& c : checks)
    records.push_back({{"check_id", c.check_id},
                       {"tag", c.tag},
                       {"values", c.values},
                       {"target", c.target},
                       {"pass", c.pass},
                       {"runtime_s", c.runtime}});
  json files = json::array();
  for (const auto& s : series) files.push_back(s.name + ".csv");
  return {{"experiment", experiment},
          {"config", config},
          {"all_pass", all_pass()},
          {"checks", records},
          {"series", files}};
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + fmt::format(".tmp{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
    out << content;
    out.flush();
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", tmp.string()));
  }
  fs::rename(tmp, target);
}

std::string resolve_out_dir(const std::string& fallback) {
  const char* env = std::getenv("SYMGROWTH_OUT_DIR");
  return env && *env ? std::string(env) : fallback;
}

int exit_code(const Report& report) { return report.all_pass() ? 0 : 1; }

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

std::vector<std::string> write_artifacts(const Report& report, const std::string& out_dir) {
  std::vector<std::string> paths;
  for (const auto& s : report.series) {
    std::string text;
    for (std::size_t i = 0; i < s.columns.size(); ++i) text += (i ? "," : "") + csv_cell(s.columns[i]);
    text += '\n';
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + csv_cell(row[i]);
      text += '\n';
    }
    const auto path = (fs::path(out_dir) / (s.name + ".csv")).string();
    write_atomic(path, text);
    paths.push_back(path);
  }
  const auto path = (fs::path(out_dir) / "report.json").string();
  write_atomic(path, report.to_json().dump(2) + "\n");
  paths.push_back(path);
  return paths;
}

std::vector<std::string> emit_plot_data(const Report& report, const std::string& out_dir) {
  std::vector<std::string> paths;
  const auto& tags = tag_registry();
  for (const auto& s : report.series) {
    if (s.rows.empty()) continue;
    std::vector<std::size_t> cols;
    if (s.plot_columns.empty()) {
      for (std::size_t i = 0; i < s.columns.size(); ++i) cols.push_back(i);
    } else {
      for (const auto& name : s.plot_columns) {
        const auto it = std::find(s.columns.begin(), s.columns.end(), name);
        if (it != s.columns.end()) cols.push_back(static_cast<std::size_t>(it - s.columns.begin()));
      }
    }
    const auto tag = tags.count(s.tag) ? s.tag : std::string("plumbing");
    std::string text = fmt::format("# {}\n# tests: {}\n#", s.name, tags.at(tag));
    for (std::size_t c : cols) text += " " + s.columns[c];
    text += '\n';
    for (const auto& row : s.rows) {
      for (std::size_t k = 0; k < cols.size(); ++k) {
        std::string cell = cols[k] < row.size() ? row[cols[k]] : "";
        if (cell.empty()) cell = "-";
        std::replace(cell.begin(), cell.end(), ' ', '_');
        text += (k ? " " : "") + cell;
      }
      text += '\n';
    }
    const auto path = (fs::path(out_dir) / (s.name + ".dat")).string();
    write_atomic(path, text);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace symgrowth::cli
