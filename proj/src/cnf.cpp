#include "lagonn/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace lagonn {

namespace {

bool is_int_token(const std::string& tok) {
  if (tok.empty()) return false;
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  return true;
}

} // namespace

Instance parse_dimacs(const std::string& text, const std::string& name) {
  Instance inst;
  inst.name = name;

  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  int nc_expected = 0;
  std::vector<int> pending;  // literals of the clause being assembled
  bool done = false;         // saw the SATLIB '%' end marker

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok.size() > 1 && tok[0] == 'c') continue;
    if (tok == "%") { done = true; continue; }

    if (!have_header) {
      if (tok != "p") fail(ErrorKind::MalformedHeader, "expected 'p cnf <vars> <clauses>' header");
      std::string fmt;
      long long nv = 0, nc = 0;
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 1 || nc < 1)
        fail(ErrorKind::MalformedHeader, "expected 'p cnf <vars> <clauses>' header");
      std::string extra;
      if (ls >> extra) fail(ErrorKind::MalformedHeader, "trailing tokens in header");
      inst.num_vars = static_cast<int>(nv);
      inst.clauses.reserve(static_cast<std::size_t>(nc));
      nc_expected = static_cast<int>(nc);
      have_header = true;
      continue;
    }

    do {
      if (!is_int_token(tok)) {
        if (done) break;
        fail(ErrorKind::MalformedHeader, "unexpected token '" + tok + "'");
      }
      int v = std::stoi(tok);
      if (v == 0) {
        if (done && pending.empty()) break;
        if (pending.size() != 3)
          fail(ErrorKind::ClauseArity, "clause with " + std::to_string(pending.size()) +
                                           " literals; exactly 3 required");
        Clause c;
        for (int k = 0; k < 3; ++k) {
          int lit = pending[static_cast<std::size_t>(k)];
          int var = std::abs(lit) - 1;
          if (var < 0 || var >= inst.num_vars)
            fail(ErrorKind::VarOutOfRange, "literal " + std::to_string(lit) + " out of range");
          c.lits[static_cast<std::size_t>(k)] = Literal{var, lit < 0};
        }
        for (int a = 0; a < 3; ++a)
          for (int b = a + 1; b < 3; ++b)
            if (c.lits[a].var == c.lits[b].var)
              fail(ErrorKind::DuplicateVarInClause,
                   "variable " + std::to_string(c.lits[a].var + 1) + " repeated in clause " +
                       std::to_string(inst.clauses.size() + 1));
        inst.clauses.push_back(c);
        pending.clear();
      } else {
        if (done) fail(ErrorKind::ClauseCountMismatch, "literals after end marker");
        pending.push_back(v);
      }
    } while (ls >> tok);
  }

  if (!have_header) fail(ErrorKind::MalformedHeader, "missing 'p cnf' header");
  if (!pending.empty()) fail(ErrorKind::ClauseArity, "unterminated clause at end of file");
  if (inst.num_clauses() != nc_expected)
    fail(ErrorKind::ClauseCountMismatch, "header promises " + std::to_string(nc_expected) +
                                             " clauses, found " +
                                             std::to_string(inst.num_clauses()));
  return inst;
}

Instance load_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  if (auto pos = name.find_last_of('/'); pos != std::string::npos) name = name.substr(pos + 1);
  if (name.size() > 4 && name.ends_with(".cnf")) name = name.substr(0, name.size() - 4);
  return parse_dimacs(ss.str(), name);
}

std::string to_dimacs(const Instance& inst) {
  std::ostringstream out;
  if (!inst.name.empty()) out << "c " << inst.name << "\n";
  out << "p cnf " << inst.num_vars << " " << inst.num_clauses() << "\n";
  for (const Clause& c : inst.clauses) {
    for (const Literal& l : c.lits) out << (l.negated ? -(l.var + 1) : (l.var + 1)) << " ";
    out << "0\n";
  }
  return out.str();
}

int evaluate(const Instance& inst, const Assignment& s) {
  if (s.size() != inst.num_vars)
    fail(ErrorKind::LengthMismatch, "assignment length " + std::to_string(s.size()) +
                                        " != num_vars " + std::to_string(inst.num_vars));
  int unsat = 0;
  for (const Clause& c : inst.clauses) {
    bool sat = false;
    for (const Literal& l : c.lits) sat = sat || literal_true(l, s);
    unsat += sat ? 0 : 1;
  }
  return unsat;
}

CanonicalClause normalize_clause(const Clause& c) {
  CanonicalClause out;
  int k = 0;
  for (int i = 0; i < 3; ++i)
    if (c.lits[i].negated) out.perm[k++] = i;
  out.type_id = k + 1;
  for (int i = 0; i < 3; ++i)
    if (!c.lits[i].negated) out.perm[k++] = i;
  return out;
}

VarIndex::VarIndex(const Instance& inst) : clauses_of(static_cast<std::size_t>(inst.num_vars)) {
  for (int m = 0; m < inst.num_clauses(); ++m)
    for (const Literal& l : inst.clauses[static_cast<std::size_t>(m)].lits)
      clauses_of[static_cast<std::size_t>(l.var)].push_back(m);
}

Instance random_instance(Rng& rng, int num_vars, int num_clauses, std::string name) {
  if (num_vars < 3) fail(ErrorKind::InvalidParameter, "need at least 3 variables");
  if (num_clauses < 1) fail(ErrorKind::InvalidParameter, "need at least 1 clause");
  Instance inst;
  inst.num_vars = num_vars;
  inst.name = std::move(name);
  inst.clauses.reserve(static_cast<std::size_t>(num_clauses));
  for (int m = 0; m < num_clauses; ++m) {
    std::array<int, 3> vars{};
    for (int k = 0; k < 3; ++k) {
      bool fresh = false;
      while (!fresh) {
        vars[k] = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_vars)));
        fresh = true;
        for (int j = 0; j < k; ++j) fresh = fresh && vars[j] != vars[k];
      }
    }
    Clause c;
    for (int k = 0; k < 3; ++k) c.lits[static_cast<std::size_t>(k)] = Literal{vars[k], rng.spin() < 0};
    inst.clauses.push_back(c);
  }
  return inst;
}

std::optional<Assignment> find_satisfying_exhaustive(const Instance& inst) {
  if (inst.num_vars > 26)
    fail(ErrorKind::InvalidParameter, "exhaustive check limited to 26 variables");
  const std::uint64_t top = std::uint64_t{1} << inst.num_vars;
  Assignment s(inst.num_vars);
  for (std::uint64_t mask = 0; mask < top; ++mask) {
    for (int v = 0; v < inst.num_vars; ++v) s[v] = (mask >> v) & 1 ? 1 : -1;
    bool ok = true;
    for (const Clause& c : inst.clauses) {
      bool sat = false;
      for (const Literal& l : c.lits) sat = sat || literal_true(l, s);
      if (!sat) { ok = false; break; }
    }
    if (ok) return s;
  }
  return std::nullopt;
}

} // namespace lagonn
