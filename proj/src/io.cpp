#include "caselaw/io.hpp"

#include <fstream>
#include <sstream>

#include "caselaw/errors.hpp"
#include "caselaw/parser.hpp"

namespace caselaw {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

Formula formula_field(const json& obj, const char* key, const std::string& where) {
  const std::string text = string_field(obj, key, where);
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw ParseError(where + ": field '" + key + "': " + e.what());
  }
}

std::int64_t int_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_number_integer()) throw ParseError(where + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<std::string> strings(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw ParseError(where + ": expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

NodePath path_value(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": a path must be an array of integers");
  NodePath out;
  for (const auto& item : v) {
    if (!item.is_number_integer() || item.get<std::int64_t>() < 0)
      throw ParseError(where + ": a path must be an array of non-negative integers");
    out.push_back(item.get<int>());
  }
  return out;
}

ProofNode node_at_path(const json& record, const std::string& where) {
  if (!record.is_object()) throw ParseError(where + ": expected a node object");
  if (record.contains("op")) {
    const std::string op = string_field(record, "op", where);
    NodeKind kind;
    if (op == "and")
      kind = NodeKind::And;
    else if (op == "or")
      kind = NodeKind::Or;
    else
      throw ParseError(where + ": unknown op '" + op + "'");
    const json& children = field(record, "children", where);
    if (!children.is_array()) throw ParseError(where + ": 'children' must be an array");
    std::vector<ProofNode> kids;
    for (std::size_t i = 0; i < children.size(); ++i)
      kids.push_back(node_at_path(children[i], where + "/" + std::to_string(i)));
    ProofNode n;
    n.kind = kind;
    n.formula = formula_field(record, "formula", where);
    n.children = std::move(kids);
    return n;
  }
  const std::string label = string_field(record, "label", where);
  const Formula fact = formula_field(record, "fact", where);
  if (label == "axiom") {
    ProofNode n = ProofNode::axiom(fact);
    if (record.contains("pre")) n.pre = formula_field(record, "pre", where);
    return n;
  }
  const Formula pre = formula_field(record, "pre", where);
  if (label == "assess") return ProofNode::assess(pre, fact);
  if (label == "ref") {
    NodePath target;
    if (record.contains("target_path")) target = path_value(record["target_path"], where);
    return ProofNode::reference(string_field(record, "ref_id", where), pre, fact,
                                std::move(target));
  }
  throw ParseError(where + ": unknown label '" + label + "'");
}

Case case_at(const json& record, const std::string& where) {
  const std::string id = string_field(record, "id", where);
  const std::string here = "case '" + id + "'";
  Case c = make_case(id, formula_field(record, "df", here), formula_field(record, "case_desc", here),
                     node_at_path(field(record, "tree", here), here + " tree"),
                     string_field(record, "court", here));
  if (record.contains("time")) c.time = int_field(record, "time", here);
  return c;
}

}  // namespace

ProofNode node_from_json(const json& record) { return node_at_path(record, "node"); }

Case case_from_json(const json& record) { return case_at(record, "case"); }

CaseLawDatabase database_from_json(const json& doc) {
  const std::string where = "document";
  if (!doc.is_object()) throw ParseError(where + ": expected an object");
  if (doc.contains("version") &&
      (!doc["version"].is_number_integer() || doc["version"].get<int>() != kDocumentVersion))
    throw ParseError(where + ": unsupported version");

  Formula kb_w = doc.contains("kb_w") ? formula_field(doc, "kb_w", where) : Formula::top();
  std::set<std::string> actions;
  if (doc.contains("actions"))
    for (auto& a : strings(doc["actions"], "actions")) actions.insert(std::move(a));

  const json& courts = field(doc, "courts", where);
  std::set<CourtId> ids;
  for (auto& c : strings(field(courts, "ids", "courts"), "courts.ids")) ids.insert(std::move(c));
  std::vector<std::pair<CourtId, CourtId>> leq;
  if (courts.contains("leq_s")) {
    const json& pairs = courts["leq_s"];
    if (!pairs.is_array()) throw ParseError("courts.leq_s: expected an array of pairs");
    for (const auto& p : pairs) {
      auto pair = strings(p, "courts.leq_s");
      if (pair.size() != 2) throw ParseError("courts.leq_s: every entry must be [lo, hi]");
      leq.emplace_back(pair[0], pair[1]);
    }
  }

  std::vector<Case> cases;
  if (doc.contains("cases")) {
    const json& records = doc["cases"];
    if (!records.is_array()) throw ParseError("cases: expected an array");
    for (std::size_t i = 0; i < records.size(); ++i) {
      const std::string here = "cases[" + std::to_string(i) + "]";
      Case c = case_at(records[i], here);
      if (!records[i].contains("time")) throw ParseError("case '" + c.id + "': missing field 'time'");
      cases.push_back(std::move(c));
    }
  }

  std::vector<UnwarrantedMark> marks;
  if (doc.contains("unwarranted")) {
    const json& records = doc["unwarranted"];
    if (!records.is_array()) throw ParseError("unwarranted: expected an array");
    for (std::size_t i = 0; i < records.size(); ++i) {
      const std::string here = "unwarranted[" + std::to_string(i) + "]";
      const json& r = records[i];
      UnwarrantedMark m;
      if (r.contains("observer_case_id")) m.observer = string_field(r, "observer_case_id", here);
      m.mark_time = int_field(r, "mark_time", here);
      const json& target = field(r, "target", here);
      m.target.case_id = string_field(target, "case_id", here + ".target");
      m.target.path = path_value(field(target, "path", here + ".target"), here + ".target");
      marks.push_back(std::move(m));
    }
  }
  return CaseLawDatabase(std::move(kb_w), std::move(actions), CourtHierarchy(std::move(ids), leq),
                         std::move(cases), marks);
}

CaseLawDatabase parse_database(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return database_from_json(doc);
}

CaseLawDatabase load_database(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_database(buffer.str());
}

json to_json(const ProofNode& node) {
  if (!node.is_leaf()) {
    json children = json::array();
    for (const auto& c : node.children) children.push_back(to_json(c));
    return {{"op", to_string(node.kind)},
            {"formula", node.formula.to_string()},
            {"children", std::move(children)}};
  }
  json out = {{"label", to_string(node.kind)},
              {"pre", node.pre.to_string()},
              {"fact", node.fact().to_string()}};
  if (node.kind == NodeKind::Ref) {
    out["ref_id"] = node.ref_id;
    out["target_path"] = node.target_path;
  }
  return out;
}

json to_json(const Case& c) {
  return {{"id", c.id},
          {"court", c.crt},
          {"time", c.time},
          {"df", c.df.to_string()},
          {"case_desc", c.case_desc.to_string()},
          {"tree", to_json(c.tree)}};
}

json to_json(const CaseLawDatabase& db) {
  json leq = json::array();
  for (const auto& [lo, hi] : db.hierarchy().strict_pairs()) leq.push_back({lo, hi});
  json cases = json::array();
  for (const auto& c : db.cases()) cases.push_back(to_json(c));
  json marks = json::array();
  for (const auto& m : marks_of(db))
    marks.push_back({{"mark_time", m.mark_time},
                     {"target", {{"case_id", m.target.case_id}, {"path", m.target.path}}}});
  return {{"version", kDocumentVersion},
          {"kb_w", db.kb_w().to_string()},
          {"actions", db.actions()},
          {"courts", {{"ids", db.hierarchy().courts()}, {"leq_s", std::move(leq)}}},
          {"cases", std::move(cases)},
          {"unwarranted", std::move(marks)}};
}

std::string database_to_string(const CaseLawDatabase& db) { return to_json(db).dump(2) + "\n"; }

void save_database(const CaseLawDatabase& db, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << database_to_string(db);
}

}  // namespace caselaw
