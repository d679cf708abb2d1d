#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "caselaw/consistency.hpp"
#include "caselaw/errors.hpp"
#include "caselaw/io.hpp"
#include "caselaw/norms.hpp"
#include "caselaw/parser.hpp"
#include "caselaw/qbf.hpp"
#include "caselaw/reasoning.hpp"

namespace caselaw::cli {

using nlohmann::json;

namespace {

struct Settings {
  std::string db_path;
  std::string format = "text";
  // query commands
  std::string formula;
  std::string case_desc = "true";
  std::string court;
  std::string set_path;
  // norms / normalize
  std::string case_id;
  std::string out_path;
  // from-qbf
  std::string qbf_path;
  std::size_t limit = kDefaultExpansionLimit;

  bool json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CaseLawDatabase load(const Settings& s) {
  if (s.db_path.empty()) throw ParseError("--db is required");
  return load_database(s.db_path);
}

void require_consistent(const CaseLawDatabase& db) {
  ConsistencyReport report = check_db(db);
  if (!report.ok())
    throw InconsistentDatabaseError("database is inconsistent (" +
                                    std::to_string(report.violations.size()) +
                                    " violations); run `check` for details");
}

json violation_json(const Violation& v) {
  json out = {{"kind", to_string(v.kind)}, {"case_id", v.case_id}, {"detail", v.detail}};
  out["path"] = v.path ? json(*v.path) : json(nullptr);
  return out;
}

int cmd_check(const Settings& s, std::ostream& out) {
  const CaseLawDatabase db = load(s);
  const ConsistencyReport report = check_db(db);
  if (s.json()) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back(violation_json(v));
    out << json{{"consistent", report.ok()}, {"violations", violations}}.dump(2) << "\n";
  } else {
    for (const auto& v : report.violations)
      out << to_string(v.kind) << "\t" << v.case_id << "\t"
          << (v.path ? path_to_string(*v.path) : "-") << "\t" << v.detail << "\n";
    if (report.ok())
      out << "consistent\n";
    else
      out << "inconsistent: " << report.violations.size() << " violation(s)\n";
  }
  return report.ok() ? kOk : kNegative;
}

std::vector<Formula> read_formula_set(const std::string& path) {
  std::vector<Formula> out;
  std::istringstream in(read_file(path));
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_formula(line));
    } catch (const ParseError& e) {
      throw ParseError(path + " line " + std::to_string(no) + ": " + e.what());
    }
  }
  return out;
}

Query query_of(const Settings& s) {
  if (s.court.empty()) throw ParseError("--court is required");
  return Query{parse_formula(s.formula), parse_formula(s.case_desc), s.court};
}

int cmd_permit_set(const Settings& s, const CaseLawDatabase& db, bool deduce, std::ostream& out) {
  if (s.court.empty()) throw ParseError("--court is required");
  const std::vector<Formula> fs = read_formula_set(s.set_path);
  const Formula desc = parse_formula(s.case_desc);
  const auto witnesses = permit_set(db, fs, desc, s.court);
  // A set is deducible when it is permitted and no member's negation is.
  std::vector<std::pair<Formula, bool>> contradicted;
  bool any_contradicted = false;
  if (deduce && witnesses) {
    PermitOptions quiet;
    quiet.verify_database = false;
    for (const auto& [f, w] : *witnesses) {
      const bool c = permit(db, Query{negate(f), desc, s.court}, quiet).has_value();
      contradicted.emplace_back(f, c);
      any_contradicted = any_contradicted || c;
    }
  }
  const char* verdict = !witnesses         ? (deduce ? "not-permitted" : "not permitted")
                        : !deduce          ? "permitted"
                        : any_contradicted ? "permitted-but-contradicted"
                                           : "deducible";
  if (s.json()) {
    json doc = {{"result", verdict}};
    if (witnesses) {
      json ws = json::array();
      for (const auto& [f, w] : *witnesses)
        ws.push_back({{"formula", f.to_string()}, {"witness", to_json(w)}});
      doc["witnesses"] = ws;
    }
    if (deduce) {
      json cs = json::array();
      for (const auto& [f, c] : contradicted)
        if (c) cs.push_back(f.to_string());
      doc["contradicted"] = cs;
    }
    out << doc.dump(2) << "\n";
  } else {
    out << verdict << "\n";
    for (const auto& [f, c] : contradicted)
      if (c) out << "contradicted\t" << f.to_string() << "\n";
    if (witnesses)
      for (const auto& [f, w] : *witnesses) out << to_json(w).dump(2) << "\n";
  }
  const bool positive = witnesses && (!deduce || !any_contradicted);
  return positive ? kOk : kNegative;
}

int cmd_permit(const Settings& s, std::ostream& out) {
  const CaseLawDatabase db = load(s);
  if (!s.set_path.empty()) return cmd_permit_set(s, db, false, out);
  const auto witness = permit(db, query_of(s));
  if (s.json()) {
    json doc = {{"result", witness ? "permitted" : "not permitted"}};
    if (witness) doc["witness"] = to_json(*witness);
    out << doc.dump(2) << "\n";
  } else {
    out << (witness ? "permitted" : "not permitted") << "\n";
    if (witness) out << to_json(*witness).dump(2) << "\n";
  }
  return witness ? kOk : kNegative;
}

int cmd_deduce(const Settings& s, std::ostream& out) {
  const CaseLawDatabase db = load(s);
  if (!s.set_path.empty()) return cmd_permit_set(s, db, true, out);
  const Query q = query_of(s);
  const Deducibility result = deducible(db, q);
  std::optional<Case> witness;
  if (result != Deducibility::NotPermitted) {
    PermitOptions quiet;
    quiet.verify_database = false;
    witness = permit(db, q, quiet);
  }
  if (s.json()) {
    json doc = {{"result", to_string(result)}};
    if (witness) doc["witness"] = to_json(*witness);
    out << doc.dump(2) << "\n";
  } else {
    out << to_string(result) << "\n";
    if (witness) out << to_json(*witness).dump(2) << "\n";
  }
  return result == Deducibility::Deducible ? kOk : kNegative;
}

int cmd_norms(const Settings& s, std::ostream& out) {
  const CaseLawDatabase db = load(s);
  std::vector<std::pair<CaseId, Norm>> norms;
  if (!s.case_id.empty()) {
    norms.emplace_back(s.case_id, extract_norm(db.at(s.case_id), db));
  } else {
    for (const auto& c : db.cases())
      if (is_privacy_case(c, db)) norms.emplace_back(c.id, extract_norm(c, db));
  }
  if (s.json()) {
    json doc = json::array();
    for (const auto& [id, n] : norms)
      doc.push_back({{"case_id", id},
                     {"polarity", n.polarity == Polarity::Positive ? "+" : "-"},
                     {"action", n.action},
                     {"condition", n.condition.to_string()}});
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& [id, n] : norms) out << n.to_line() << "\n";
  }
  return kOk;
}

void emit_database(const CaseLawDatabase& db, const Settings& s, std::ostream& out) {
  if (s.out_path.empty())
    out << database_to_string(db);
  else
    save_database(db, s.out_path);
}

int cmd_normalize(const Settings& s, std::ostream& out) {
  const CaseLawDatabase db = load(s);
  require_consistent(db);
  CaseLawDatabase result = db;
  if (!s.case_id.empty()) {
    if (!is_privacy_case(db.at(s.case_id), db))
      throw ModelError("case '" + s.case_id + "' is not a privacy case");
    result = normalize(db, s.case_id);
  } else {
    result = normalize_all(db);
  }
  emit_database(result, s, out);
  return kOk;
}

std::string shell_quote(const std::string& text) {
  std::string out = "'";
  for (char c : text) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

int cmd_from_qbf(const Settings& s, std::ostream& out) {
  const QbfInstance inst = parse_qbf(read_file(s.qbf_path));
  const auto [db, q] = qbf_to_cld(inst);
  const std::string invocation = "permit --db " + (s.out_path.empty() ? "<db.json>" : s.out_path) +
                                 " --formula " + shell_quote(q.f.to_string()) + " --casedesc " +
                                 shell_quote(q.case_desc.to_string()) + " --court " + q.crt;
  if (s.json()) {
    json doc = {{"query",
                 {{"formula", q.f.to_string()},
                  {"case_desc", q.case_desc.to_string()},
                  {"court", q.crt}}},
                {"invocation", invocation}};
    if (s.out_path.empty())
      doc["database"] = to_json(db);
    else
      save_database(db, s.out_path);
    out << doc.dump(2) << "\n";
    return kOk;
  }
  emit_database(db, s, out);
  if (s.out_path.empty())
    out << "# " << invocation << "\n";
  else
    out << invocation << "\n";
  return kOk;
}

int cmd_solve_switch(const Settings& s, std::ostream& out) {
  const CaseLawDatabase db = load(s);
  require_consistent(db);
  const bool result = solve_switch(db, query_of(s), s.limit);
  if (s.json())
    out << json{{"result", result}}.dump(2) << "\n";
  else
    out << (result ? "true" : "false") << "\n";
  return result ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Case-law reasoning over propositional logic", "caselaw"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--db", s.db_path, "Database document (JSON)");
  app.add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  auto* check = app.add_subcommand("check", "Check database consistency");

  auto add_query = [&](CLI::App* cmd) {
    cmd->add_option("--formula", s.formula, "Formula to decide");
    cmd->add_option("--casedesc", s.case_desc, "Case description (default: true)");
    cmd->add_option("--court", s.court, "Court of the hypothetical case")->required();
  };
  auto* permit_cmd = app.add_subcommand("permit", "Is the formula permitted?");
  add_query(permit_cmd);
  permit_cmd->add_option("--set", s.set_path, "File with one formula per line");
  auto* deduce_cmd = app.add_subcommand("deduce", "Is the formula deducible?");
  add_query(deduce_cmd);
  deduce_cmd->add_option("--set", s.set_path, "File with one formula per line");

  auto* norms_cmd = app.add_subcommand("norms", "Extract norms from privacy cases");
  norms_cmd->add_option("--case", s.case_id, "Only this case");

  auto* normalize_cmd = app.add_subcommand("normalize", "Replace privacy cases by normal forms");
  normalize_cmd->add_option("--case", s.case_id, "Only this case");
  normalize_cmd->add_option("--out", s.out_path, "Output file (default: stdout)");

  auto* qbf_cmd = app.add_subcommand("from-qbf", "Reduce a QBF instance to a database");
  qbf_cmd->add_option("qbf", s.qbf_path, "QBF file")->required();
  qbf_cmd->add_option("--out", s.out_path, "Database output file (default: stdout)");

  auto* switch_cmd = app.add_subcommand("solve-switch", "Decide permission by the switch encoding");
  add_query(switch_cmd);
  switch_cmd->add_option("--limit", s.limit, "Maximum universal expansion size");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }

  try {
    auto needs_formula = [&] {
      if (s.formula.empty() && s.set_path.empty()) throw ParseError("--formula or --set is required");
    };
    if (check->parsed()) return cmd_check(s, out);
    if (permit_cmd->parsed()) return needs_formula(), cmd_permit(s, out);
    if (deduce_cmd->parsed()) return needs_formula(), cmd_deduce(s, out);
    if (norms_cmd->parsed()) return cmd_norms(s, out);
    if (normalize_cmd->parsed()) return cmd_normalize(s, out);
    if (qbf_cmd->parsed()) return cmd_from_qbf(s, out);
    if (switch_cmd->parsed()) {
      if (s.formula.empty()) throw ParseError("--formula is required");
      return cmd_solve_switch(s, out);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const InconsistentDatabaseError& e) {
    err << "inconsistent database: " << e.what() << "\n";
    return kInconsistentDatabase;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kValidationError;
  }
  return kParseError;
}

}  // namespace caselaw::cli
