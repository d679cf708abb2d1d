#pragma once

// JSON documents for databases and cases.
//
//   {"version": 1, "kb_w": "<formula>", "actions": [...],
//    "courts": {"ids": [...], "leq_s": [[lo, hi], ...]},
//    "cases": [{"id", "court", "time", "df", "case_desc", "tree"}],
//    "unwarranted": [{"observer_case_id"?, "mark_time", "target": {"case_id", "path"}}]}
//
// Tree nodes are {"op": "and"|"or", "formula", "children"} or
// {"label": "axiom"|"assess"|"ref", "pre", "fact", "ref_id", "target_path"}.

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "caselaw/model.hpp"

namespace caselaw {

inline constexpr int kDocumentVersion = 1;

/// Throws ParseError for malformed JSON or schema violations and ModelError
/// (naming the case or node) when the database invariants fail.
CaseLawDatabase database_from_json(const nlohmann::json& doc);
CaseLawDatabase parse_database(std::string_view text);
CaseLawDatabase load_database(const std::filesystem::path& path);

nlohmann::json to_json(const CaseLawDatabase& db);
nlohmann::json to_json(const Case& c);
nlohmann::json to_json(const ProofNode& node);

/// Pretty-printed, newline terminated.
std::string database_to_string(const CaseLawDatabase& db);
void save_database(const CaseLawDatabase& db, const std::filesystem::path& path);

/// Case record without id-independent validation; `time` defaults to 0.
Case case_from_json(const nlohmann::json& record);
ProofNode node_from_json(const nlohmann::json& record);

}  // namespace caselaw
