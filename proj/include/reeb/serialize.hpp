#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "reeb/certifier.hpp"
#include "reeb/index_core.hpp"
#include "reeb/jump_solver.hpp"
#include "reeb/preq_homology.hpp"

namespace reeb {

using Json = nlohmann::json;

// Structured-text (JSON) schemas. Readers reject unknown fields and
// non-exact numbers; rationals are "p/q" strings or integers.
Json to_json(const PathModel& path);
Json to_json(const BaseManifold& base);
Json to_json(const SystemModel& system);
Json to_json(const JumpCertificate& cert);

PathModel path_from_json(const Json& j);
BaseManifold base_from_json(const Json& j);
SystemModel system_from_json(const Json& j);
JumpCertificate certificate_from_json(const Json& j);

// A path file holds {"paths": [...]}, a single path, or a system (whose
// orbit paths are taken in order).
std::vector<PathModel> paths_from_json(const Json& j);

// Parses JSON text, mapping syntax errors to InvalidInput.
Json parse_json(std::string_view text);

// Machine format: one key=value pair per line, records separated by a
// blank line. Lists are comma separated.
using Record = std::vector<std::pair<std::string, std::string>>;

std::string render_records(const std::vector<Record>& records);
std::vector<Record> parse_records(std::string_view text);

Record to_record(const PathModel& path);
Record to_record(const BaseManifold& base);
Record to_record(const JumpCertificate& cert);
PathModel path_from_record(const Record& record);
BaseManifold base_from_record(const Record& record);
JumpCertificate certificate_from_record(const Record& record);

// A certificate file is either JSON or a single machine record.
JumpCertificate read_certificate(std::string_view text);

std::vector<Record> report_records(const BoundReport& report);
std::string render_report_text(const BoundReport& report);

std::string read_file(const std::string& path);

}  // namespace reeb
