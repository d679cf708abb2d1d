#include "caselaw/qbf.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "caselaw/errors.hpp"
#include "caselaw/parser.hpp"

namespace caselaw {

void validate(const QbfInstance& inst) {
  std::set<Atom> bound;
  for (const auto* block : {&inst.exists_vars, &inst.forall_vars})
    for (const auto& v : *block)
      if (!bound.insert(v).second)
        throw ModelError("variable '" + v.to_string() + "' is quantified twice");
  for (const auto& a : atoms_of(inst.matrix))
    if (!bound.count(a)) throw ModelError("matrix atom '" + a.to_string() + "' is not quantified");
}

namespace {

std::vector<Atom> parse_block(const std::string& line, std::size_t line_no, char quantifier) {
  std::istringstream in(line);
  std::string word;
  in >> word;
  if (word != std::string(1, quantifier))
    throw ParseError(std::string("expected a line starting with '") + quantifier + "'", line_no, 1);
  std::vector<Atom> vars;
  bool terminated = false;
  while (in >> word) {
    if (terminated) throw ParseError("text after the terminating 0", line_no, 1);
    if (word == "0") {
      terminated = true;
      continue;
    }
    if (!is_identifier(word) || word == "true" || word == "false")
      throw ParseError("invalid variable name '" + word + "'", line_no, 1);
    vars.emplace_back(word);
  }
  if (!terminated) throw ParseError("quantifier line must end with 0", line_no, 1);
  return vars;
}

}  // namespace

QbfInstance parse_qbf(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c' && (first + 1 == line.size() || std::isspace(static_cast<unsigned char>(
                                                               line[first + 1]))))
      continue;
    lines.emplace_back(no, line);
  }
  if (lines.size() != 3)
    throw ParseError("expected an 'e' line, an 'a' line and one formula line, found " +
                     std::to_string(lines.size()) + " lines");
  QbfInstance inst;
  inst.exists_vars = parse_block(lines[0].second, lines[0].first, 'e');
  inst.forall_vars = parse_block(lines[1].second, lines[1].first, 'a');
  try {
    inst.matrix = parse_formula(lines[2].second);
  } catch (const ParseError& e) {
    throw ParseError("formula: " + std::string(e.what()), lines[2].first, e.column());
  }
  try {
    validate(inst);
  } catch (const ModelError& e) {
    throw ParseError(e.what(), lines[2].first, 1);
  }
  return inst;
}

std::string to_qbf_text(const QbfInstance& inst) {
  std::string out = "e";
  for (const auto& v : inst.exists_vars) out += " " + v.to_string();
  out += " 0\na";
  for (const auto& v : inst.forall_vars) out += " " + v.to_string();
  return out + " 0\n" + inst.matrix.to_string() + "\n";
}

namespace {

Formula expand(const Formula& matrix, const std::vector<Atom>& vars, std::size_t limit) {
  if (vars.size() >= 63 || (std::size_t{1} << vars.size()) > limit)
    throw SizeLimitError("universal expansion over " + std::to_string(vars.size()) +
                         " variables exceeds the limit of " + std::to_string(limit) +
                         " assignments");
  Formula out = Formula::top();
  const std::size_t count = std::size_t{1} << vars.size();
  for (std::size_t bits = 0; bits < count && !out.is_bot(); ++bits) {
    std::map<Atom, Formula> values;
    for (std::size_t i = 0; i < vars.size(); ++i)
      values[vars[i]] = (bits >> i) & 1 ? Formula::top() : Formula::bot();
    out = conjoin(out, substitute(matrix, values));
  }
  return out;
}

Atom chosen_atom(std::size_t i) { return Atom(kChosenPrefix + std::to_string(i)); }

}  // namespace

Formula expand_universal(const QbfInstance& inst, std::size_t limit) {
  return expand(inst.matrix, inst.forall_vars, limit);
}

bool solve_qbf(const QbfInstance& inst, std::size_t limit) {
  validate(inst);
  return is_satisfiable(expand_universal(inst, limit));
}

SwitchEncoding encode_switch(const CaseLawDatabase& db, const Query& q, const Oracle& oracle) {
  if (!db.hierarchy().contains(q.crt)) throw UnknownCourtError("unknown court '" + q.crt + "'");
  if (uses_reserved_atoms(q.f) || uses_reserved_atoms(q.case_desc) ||
      uses_reserved_atoms(db.kb_w()))
    throw ReservedNameError(std::string("input uses the reserved atom prefix '") + kChosenPrefix +
                            "'");
  Checker checker(db, oracle);
  SwitchEncoding enc;
  enc.selectors = citable_leaves(db, checker);

  const Formula base = conjoin(db.kb_w(), q.case_desc);
  Formula pre_switch = Formula::top();
  Formula fact_switch = Formula::top();
  for (std::size_t i = 0; i < enc.selectors.size(); ++i) {
    const Formula off = negate(Formula::atom(chosen_atom(i)));
    pre_switch = conjoin(pre_switch, disjoin(off, enc.selectors[i].pre));
    fact_switch = conjoin(fact_switch, disjoin(off, enc.selectors[i].fact));
    enc.instance.exists_vars.push_back(chosen_atom(i));
  }
  const Formula phi1 = Formula::implication(base, pre_switch);
  const Formula phi2 = Formula::implication(conjoin(base, fact_switch), q.f);
  enc.instance.matrix = conjoin(phi1, phi2);
  enc.phi3 = conjoin(base, fact_switch);

  std::set<Atom> world = atoms_of(enc.instance.matrix);
  for (const auto& a : atoms_of(enc.phi3)) world.insert(a);
  for (const auto& x : enc.instance.exists_vars) world.erase(x);
  enc.instance.forall_vars.assign(world.begin(), world.end());
  return enc;
}

bool solve_switch(const CaseLawDatabase& db, const Query& q, std::size_t limit,
                  const Oracle& oracle) {
  const SwitchEncoding enc = encode_switch(db, q, oracle);
  const Formula universal = expand_universal(enc.instance, limit);
  if (universal.is_bot()) return false;

  // phi3 speaks about some world, not every world: rename the world atoms.
  std::set<Atom> taken = atoms_of(universal);
  for (const auto& a : atoms_of(enc.phi3)) taken.insert(a);
  std::map<Atom, Formula> rename;
  for (const auto& y : enc.instance.forall_vars) {
    std::string name = "__exists_" + y.name;
    while (taken.count(Atom(name, y.args))) name = "_" + name;
    Atom fresh(name, y.args);
    taken.insert(fresh);
    rename[y] = Formula::atom(fresh);
  }
  return oracle.is_satisfiable(conjoin(universal, substitute(enc.phi3, rename)));
}

std::pair<CaseLawDatabase, Query> qbf_to_cld(const QbfInstance& inst) {
  validate(inst);
  if (inst.exists_vars.empty()) throw ModelError("the existential block must not be empty");
  std::vector<Case> cases;
  std::int64_t time = 0;
  for (const auto& x : inst.exists_vars) {
    if (!x.args.empty()) throw ModelError("QBF variables must be plain identifiers");
    for (bool positive : {true, false}) {
      const Formula lit = positive ? Formula::atom(x) : negate(Formula::atom(x));
      cases.push_back(make_case((positive ? "pos_" : "neg_") + x.name, lit, Formula::top(),
                                ProofNode::assess(Formula::top(), lit),
                                positive ? kQbfPositiveCourt : kQbfNegativeCourt, time++));
    }
  }
  CourtHierarchy courts({kQbfPositiveCourt, kQbfNegativeCourt, kQbfQueryCourt}, {});
  CaseLawDatabase db(Formula::top(), {}, std::move(courts), std::move(cases));
  return {std::move(db), Query{inst.matrix, Formula::top(), kQbfQueryCourt}};
}

}  // namespace caselaw
