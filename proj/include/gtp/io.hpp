#pragma once

// File formats.
//
//   pool CSV:    header `id,f1,...,fd`, one candidate per row
//   targets CSV: header `t_id,f1,...,fd`, one target per row
//   labels CSV:  header `id,label`, label is a 1-based team or `noise`
//   report JSON: see report_to_json
//
// Numbers are written with 17 significant digits so values round-trip exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "gtp/core.hpp"
#include "json.hpp"

namespace gtp {

inline constexpr const char* kReportSchemaVersion = "1";

std::string format_double(double value);

CandidatePool read_pool_csv(std::istream& in, const std::string& source = "<stream>");
TargetSet read_targets_csv(std::istream& in, const std::string& source = "<stream>");
void write_pool_csv(std::ostream& out, const CandidatePool& pool);
void write_targets_csv(std::ostream& out, const TargetSet& targets);

CandidatePool load_pool(const std::string& path);
TargetSet load_targets(const std::string& path);
void save_pool(const CandidatePool& pool, const std::string& path);
void save_targets(const TargetSet& targets, const std::string& path);
void save_labels(const CandidatePool& pool, const std::vector<int>& labels, const std::string& path);

// Team indices are written 1-based; removed candidates map to "removed".
nlohmann::json report_to_json(const SolveReport& report, const CandidatePool& pool, const TargetSet& targets,
                              const nlohmann::json& config = nlohmann::json::object());
void save_report(const SolveReport& report, const CandidatePool& pool, const TargetSet& targets,
                 const nlohmann::json& config, const std::string& path);
// Rebuilds the numeric fields and the partitioning of a saved report.
SolveReport report_from_json(const nlohmann::json& doc, const CandidatePool& pool);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace gtp
