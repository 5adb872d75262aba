#include "gtp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "gtp/error.hpp"

namespace gtp {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void parse_error(const std::string& source, std::size_t line, const std::string& what) {
  fail(ErrorCode::kParse, source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& cell, const std::string& source, std::size_t line) {
  const std::string text = trim(cell);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) parse_error(source, line, "non-numeric cell '" + text + "'");
  if (!std::isfinite(value)) parse_error(source, line, "non-finite cell '" + text + "'");
  return value;
}

struct Table {
  std::vector<std::string> ids;
  std::vector<double> values;
  std::size_t dim = 0;
};

Table read_table(std::istream& in, const std::string& source, const std::string& id_column) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::unordered_set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv_line(trim(line));
    if (!have_header) {
      if (cells.size() < 2 || trim(cells[0]) != id_column) {
        parse_error(source, line_no, "expected header '" + id_column + ",f1,...,fd'");
      }
      table.dim = cells.size() - 1;
      have_header = true;
      continue;
    }
    if (cells.size() != table.dim + 1) {
      parse_error(source, line_no, "row has " + std::to_string(cells.size() - 1) + " features, expected " +
                                       std::to_string(table.dim));
    }
    std::string id = trim(cells[0]);
    if (id.empty()) parse_error(source, line_no, "empty id");
    if (!seen.insert(id).second) parse_error(source, line_no, "duplicate id '" + id + "'");
    table.ids.push_back(std::move(id));
    for (std::size_t j = 1; j < cells.size(); ++j) table.values.push_back(parse_number(cells[j], source, line_no));
  }
  if (!have_header) parse_error(source, line_no, "missing header row");
  if (table.ids.empty()) parse_error(source, line_no, "no data rows");
  return table;
}

void write_table(std::ostream& out, const std::string& id_column, std::size_t dim,
                 const std::vector<std::string>& ids, const std::vector<double>& values) {
  out << id_column;
  for (std::size_t j = 0; j < dim; ++j) out << ",f" << (j + 1);
  out << '\n';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i];
    for (std::size_t j = 0; j < dim; ++j) out << ',' << format_double(values[i * dim + j]);
    out << '\n';
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

CandidatePool read_pool_csv(std::istream& in, const std::string& source) {
  Table table = read_table(in, source, "id");
  return CandidatePool(std::move(table.ids), std::move(table.values), table.dim);
}

TargetSet read_targets_csv(std::istream& in, const std::string& source) {
  Table table = read_table(in, source, "t_id");
  return TargetSet(std::move(table.values), table.dim);
}

void write_pool_csv(std::ostream& out, const CandidatePool& pool) {
  write_table(out, "id", pool.dim(), pool.ids(), pool.values());
}

void write_targets_csv(std::ostream& out, const TargetSet& targets) {
  std::vector<std::string> ids(targets.size());
  for (std::size_t t = 0; t < ids.size(); ++t) ids[t] = "t" + std::to_string(t + 1);
  write_table(out, "t_id", targets.dim(), ids, targets.values());
}

CandidatePool load_pool(const std::string& path) {
  auto in = open_input(path);
  return read_pool_csv(in, path);
}

TargetSet load_targets(const std::string& path) {
  auto in = open_input(path);
  return read_targets_csv(in, path);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_pool(const CandidatePool& pool, const std::string& path) {
  std::ostringstream ss;
  write_pool_csv(ss, pool);
  write_text_file(path, ss.str());
}

void save_targets(const TargetSet& targets, const std::string& path) {
  std::ostringstream ss;
  write_targets_csv(ss, targets);
  write_text_file(path, ss.str());
}

void save_labels(const CandidatePool& pool, const std::vector<int>& labels, const std::string& path) {
  if (labels.size() != pool.size()) fail(ErrorCode::kValidation, "label count does not match the pool");
  std::ostringstream ss;
  ss << "id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    ss << pool.id(i) << ',';
    if (labels[i] < 0) {
      ss << "noise";
    } else {
      ss << (labels[i] + 1);
    }
    ss << '\n';
  }
  write_text_file(path, ss.str());
}

nlohmann::json report_to_json(const SolveReport& report, const CandidatePool& pool, const TargetSet& targets,
                              const nlohmann::json& config) {
  using nlohmann::json;
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["algorithm"] = report.algorithm;
  doc["cost"] = report.cost;
  doc["k"] = report.partitioning.k;
  doc["n"] = pool.size();
  doc["per_team_cost"] = report.per_team_cost;
  doc["team_sizes"] = report.team_sizes;
  doc["centroids"] = report.centroids;
  json target_rows = json::array();
  for (std::size_t t = 0; t < targets.size(); ++t) {
    target_rows.push_back(std::vector<double>(targets[t].begin(), targets[t].end()));
  }
  doc["targets"] = std::move(target_rows);
  doc["removed_ids"] = report.removed_ids;
  json assignment = json::object();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const int t = report.partitioning.team[i];
    if (t == kRemoved) {
      assignment[pool.id(i)] = "removed";
    } else {
      assignment[pool.id(i)] = t + 1;
    }
  }
  doc["assignment"] = std::move(assignment);
  doc["iterations"] = report.iterations;
  doc["seed"] = report.seed;
  doc["wall_time_s"] = report.wall_time_s;
  doc["config"] = config;
  return doc;
}

void save_report(const SolveReport& report, const CandidatePool& pool, const TargetSet& targets,
                 const nlohmann::json& config, const std::string& path) {
  write_text_file(path, report_to_json(report, pool, targets, config).dump(2) + "\n");
}

SolveReport report_from_json(const nlohmann::json& doc, const CandidatePool& pool) {
  try {
    if (doc.at("schema_version").get<std::string>() != kReportSchemaVersion) {
      fail(ErrorCode::kParse, "unsupported report schema version");
    }
    SolveReport report;
    report.algorithm = doc.at("algorithm").get<std::string>();
    report.cost = doc.at("cost").get<double>();
    report.per_team_cost = doc.at("per_team_cost").get<std::vector<double>>();
    report.team_sizes = doc.at("team_sizes").get<std::vector<std::size_t>>();
    report.centroids = doc.at("centroids").get<std::vector<Vector>>();
    report.removed_ids = doc.at("removed_ids").get<std::vector<std::string>>();
    report.iterations = doc.at("iterations").get<int>();
    report.seed = doc.at("seed").get<std::uint64_t>();
    report.wall_time_s = doc.at("wall_time_s").get<double>();
    const std::size_t k = doc.at("k").get<std::size_t>();
    report.partitioning = Partitioning(std::vector<int>(pool.size(), kRemoved), k);
    for (const auto& [id, team] : doc.at("assignment").items()) {
      const std::size_t i = pool.index_of(id);
      report.partitioning.team[i] = team.is_string() ? kRemoved : team.get<int>() - 1;
    }
    validate(report.partitioning, pool);
    return report;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed report: ") + e.what());
  }
}

}  // namespace gtp
