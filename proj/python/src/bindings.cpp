// Python module caselaw._core. Databases cross the boundary as JSON documents;
// formulas as text in the usual syntax.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "caselaw/consistency.hpp"
#include "caselaw/entailment.hpp"
#include "caselaw/errors.hpp"
#include "caselaw/io.hpp"
#include "caselaw/norms.hpp"
#include "caselaw/parser.hpp"
#include "caselaw/qbf.hpp"
#include "caselaw/reasoning.hpp"

namespace py = pybind11;
using namespace caselaw;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Query make_query(const std::string& f, const std::string& desc, const std::string& court) {
  return Query{parse_formula(f), parse_formula(desc), court};
}

py::list violations(const ConsistencyReport& r) {
  py::list out;
  for (const auto& v : r.violations) {
    py::dict d;
    d["kind"] = to_string(v.kind);
    d["case"] = v.case_id;
    d["path"] = v.path ? py::cast(*v.path) : py::none();
    d["detail"] = v.detail;
    out.append(d);
  }
  return out;
}

PermitOptions options(bool verify) {
  PermitOptions o;
  o.verify_database = verify;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Case-law reasoning over propositional logic";

  auto base = py::register_exception<Error>(m, "CaselawError");
  py::register_exception<ParseError>(m, "ParseError", base);
  auto model = py::register_exception<ModelError>(m, "ModelError", base);
  py::register_exception<UnknownCourtError>(m, "UnknownCourtError", model);
  py::register_exception<InconsistentDatabaseError>(m, "InconsistentDatabaseError", base);
  py::register_exception<ReservedNameError>(m, "ReservedNameError", base);
  py::register_exception<SizeLimitError>(m, "SizeLimitError", base);

  m.def("normalize_formula", [](const std::string& f) { return parse_formula(f).to_string(); },
        "Parse a formula and print it back in canonical form.");
  m.def("is_satisfiable", [](const std::string& f) { return is_satisfiable(parse_formula(f)); });
  m.def("entails", [](const std::string& premise, const std::string& conclusion) {
    return entails(parse_formula(premise), parse_formula(conclusion));
  });

  py::class_<CaseLawDatabase>(m, "Database")
      .def_static("from_dict", [](const py::object& doc) { return database_from_json(from_python(doc)); })
      .def_static("from_json", [](const std::string& text) { return parse_database(text); })
      .def_static("load", [](const std::string& path) { return load_database(path); })
      .def("to_dict", [](const CaseLawDatabase& db) { return to_python(to_json(db)); })
      .def("to_json", &database_to_string)
      .def("save", [](const CaseLawDatabase& db, const std::string& path) { save_database(db, path); })
      .def("__len__", &CaseLawDatabase::size)
      .def("case_ids",
           [](const CaseLawDatabase& db) {
             std::vector<std::string> ids;
             for (const auto& c : db.cases()) ids.push_back(c.id);
             return ids;
           })
      .def("check", [](const CaseLawDatabase& db) { return violations(check_db(db)); },
           "Violations of database consistency; empty when consistent.")
      .def("is_consistent", [](const CaseLawDatabase& db) { return check_db(db).ok(); })
      .def(
          "permit",
          [](const CaseLawDatabase& db, const std::string& f, const std::string& court,
             const std::string& case_desc, bool verify) -> py::object {
            const auto w = permit(db, make_query(f, case_desc, court), options(verify));
            return w ? to_python(to_json(*w)) : py::none();
          },
          py::arg("formula"), py::arg("court"), py::arg("case_desc") = "true",
          py::arg("verify") = true, "Witness case as a dict, or None.")
      .def(
          "permit_set",
          [](const CaseLawDatabase& db, const std::vector<std::string>& fs, const std::string& court,
             const std::string& case_desc, bool verify) -> py::object {
            std::vector<Formula> formulas;
            for (const auto& f : fs) formulas.push_back(parse_formula(f));
            const auto ws = permit_set(db, formulas, parse_formula(case_desc), court, options(verify));
            if (!ws) return py::none();
            py::dict out;
            for (const auto& [f, w] : *ws) out[py::str(f.to_string())] = to_python(to_json(w));
            return out;
          },
          py::arg("formulas"), py::arg("court"), py::arg("case_desc") = "true",
          py::arg("verify") = true)
      .def(
          "deduce",
          [](const CaseLawDatabase& db, const std::string& f, const std::string& court,
             const std::string& case_desc) {
            return std::string(to_string(deducible(db, make_query(f, case_desc, court))));
          },
          py::arg("formula"), py::arg("court"), py::arg("case_desc") = "true",
          "'deducible', 'permitted-but-contradicted' or 'not-permitted'.")
      .def(
          "solve_switch",
          [](const CaseLawDatabase& db, const std::string& f, const std::string& court,
             const std::string& case_desc, std::size_t limit) {
            return solve_switch(db, make_query(f, case_desc, court), limit);
          },
          py::arg("formula"), py::arg("court"), py::arg("case_desc") = "true",
          py::arg("limit") = kDefaultExpansionLimit)
      .def("norms",
           [](const CaseLawDatabase& db) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             for (const auto& n : extract_norms(db))
               out.emplace_back(n.polarity == Polarity::Positive ? "+" : "-", n.action,
                                n.condition.to_string());
             return out;
           },
           "(polarity, action, condition) per privacy case, in time order.")
      .def(
          "normalize",
          [](const CaseLawDatabase& db, std::optional<std::string> case_id) {
            return case_id ? normalize(db, *case_id) : normalize_all(db);
          },
          py::arg("case_id") = py::none());

  m.def("solve_qbf", [](const std::string& text) { return solve_qbf(parse_qbf(text)); },
        "Validity of an 'e ... 0 / a ... 0 / formula' instance.");
  m.def(
      "qbf_to_database",
      [](const std::string& text) {
        auto [db, q] = qbf_to_cld(parse_qbf(text));
        py::dict query;
        query["formula"] = q.f.to_string();
        query["case_desc"] = q.case_desc.to_string();
        query["court"] = q.crt;
        return py::make_tuple(db, query);
      },
      "Database and query whose permissibility is the validity of the instance.");
}
