#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "lagonn/cnf.hpp"

using namespace lagonn;

namespace {

Instance tiny() {
  // (x1 | ~x2 | x3) & (~x1 | x2 | x4)
  return parse_dimacs("p cnf 4 2\n1 -2 3 0\n-1 2 4 0\n", "tiny");
}

} // namespace

TEST_CASE("dimacs parse and serialize round trip") {
  const Instance a = tiny();
  CHECK(a.num_vars == 4);
  CHECK(a.num_clauses() == 2);
  CHECK(a.clauses[0].lits[0] == Literal{0, false});
  CHECK(a.clauses[0].lits[1] == Literal{1, true});
  CHECK(a.clauses[1].lits[2] == Literal{3, false});

  const Instance b = parse_dimacs(to_dimacs(a), "tiny");
  CHECK(a.num_vars == b.num_vars);
  CHECK(a.clauses == b.clauses);
}

TEST_CASE("dimacs tolerates comments, blank lines and satlib trailer") {
  const std::string text =
      "c a comment\n"
      "c another\n"
      "\n"
      "p cnf 3 2\n"
      "1 2 3 0\n"
      "-1 -2\n"
      "-3 0\n"
      "%\n"
      "0\n";
  const Instance inst = parse_dimacs(text);
  CHECK(inst.num_clauses() == 2);
  CHECK(inst.clauses[1].lits[2] == Literal{2, true});
}

TEST_CASE("dimacs parse failures carry the right kind") {
  const auto kind_of = [](const std::string& text) {
    try {
      parse_dimacs(text);
    } catch (const Error& e) {
      return e.kind;
    }
    return ErrorKind::Io;  // sentinel: no throw
  };
  CHECK(kind_of("1 2 3 0\n") == ErrorKind::MalformedHeader);
  CHECK(kind_of("p dnf 3 1\n1 2 3 0\n") == ErrorKind::MalformedHeader);
  CHECK(kind_of("p cnf 0 1\n1 2 3 0\n") == ErrorKind::MalformedHeader);
  CHECK(kind_of("p cnf 3 1 9\n1 2 3 0\n") == ErrorKind::MalformedHeader);
  CHECK(kind_of("p cnf 3 1\n1 2 0\n") == ErrorKind::ClauseArity);
  CHECK(kind_of("p cnf 3 1\n1 2 3 4 0\n") == ErrorKind::ClauseArity);
  CHECK(kind_of("p cnf 3 1\n1 -1 2 0\n") == ErrorKind::DuplicateVarInClause);
  CHECK(kind_of("p cnf 3 1\n1 1 2 0\n") == ErrorKind::DuplicateVarInClause);
  CHECK(kind_of("p cnf 3 1\n1 2 4 0\n") == ErrorKind::VarOutOfRange);
  CHECK(kind_of("p cnf 3 2\n1 2 3 0\n") == ErrorKind::ClauseCountMismatch);
  CHECK(kind_of("p cnf 3 1\n1 2 3 0\n-1 2 3 0\n") == ErrorKind::ClauseCountMismatch);
  CHECK(kind_of("p cnf 3 1\n1 2 3\n") == ErrorKind::ClauseArity);
}

TEST_CASE("clauses may span lines") {
  const Instance inst = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n-2 -3 0\n");
  CHECK(inst.num_clauses() == 2);
  CHECK(inst.clauses[1].lits[0] == Literal{0, true});
}

TEST_CASE("evaluate counts unsatisfied clauses") {
  const Instance inst = tiny();
  Assignment s(4);
  s << 1, 1, 1, 1;
  CHECK(evaluate(inst, s) == 0);
  // x1 TRUE, x2 FALSE kills neither; x1 FALSE, x2 TRUE, x3 FALSE, x4 FALSE
  // kills the first clause only
  s << -1, 1, -1, -1;
  CHECK(evaluate(inst, s) == 1);
  CHECK_THROWS_AS(evaluate(inst, Assignment::Ones(3)), Error);
}

TEST_CASE("evaluate agrees with a literal-by-literal oracle on random data") {
  Rng rng(7);
  const Instance inst = random_instance(rng, 12, 50, "rand12");
  for (int rep = 0; rep < 50; ++rep) {
    const Assignment s = testutil::random_spins(rng, 12);
    int unsat = 0;
    for (const Clause& c : inst.clauses) {
      int true_lits = 0;
      for (const Literal& l : c.lits) {
        const bool var_true = s[l.var] > 0;
        if (l.negated != var_true) ++true_lits;
      }
      if (true_lits == 0) ++unsat;
    }
    CHECK(evaluate(inst, s) == unsat);
  }
}

TEST_CASE("normalize_clause puts negated literals first, stably") {
  for (int pattern = 0; pattern < 8; ++pattern) {
    Clause c;
    for (int k = 0; k < 3; ++k) c.lits[k] = Literal{k, (pattern >> k & 1) != 0};
    const CanonicalClause cc = normalize_clause(c);
    int negs = 0;
    for (int k = 0; k < 3; ++k) negs += (pattern >> k) & 1;
    CHECK(cc.type_id == negs + 1);
    // negated slots precede positive slots, each group in original order
    for (int slot = 0; slot < 3; ++slot)
      CHECK(c.lits[cc.perm[slot]].negated == (slot < negs));
    for (int slot = 0; slot + 1 < 3; ++slot)
      if (c.lits[cc.perm[slot]].negated == c.lits[cc.perm[slot + 1]].negated)
        CHECK(cc.perm[slot] < cc.perm[slot + 1]);
    // perm is a permutation
    std::set<int> seen(cc.perm.begin(), cc.perm.end());
    CHECK(seen.size() == 3);
  }
}

TEST_CASE("var index lists every clause of a variable") {
  Rng rng(11);
  const Instance inst = random_instance(rng, 15, 60, "rand15");
  const VarIndex vidx(inst);
  std::size_t total = 0;
  for (int v = 0; v < inst.num_vars; ++v) {
    for (int c : vidx.clauses_of[v]) {
      bool found = false;
      for (const Literal& l : inst.clauses[c].lits) found = found || l.var == v;
      CHECK(found);
    }
    total += vidx.clauses_of[v].size();
  }
  CHECK(total == 3 * std::size_t(inst.num_clauses()));
}

TEST_CASE("random instances are well formed and seed deterministic") {
  Rng a(42), b(42), c(43);
  const Instance ia = random_instance(a, 20, 91);
  const Instance ib = random_instance(b, 20, 91);
  const Instance ic = random_instance(c, 20, 91);
  CHECK(ia.clauses == ib.clauses);
  CHECK(ia.clauses != ic.clauses);
  for (const Clause& cl : ia.clauses) {
    for (const Literal& l : cl.lits) {
      CHECK(l.var >= 0);
      CHECK(l.var < 20);
    }
    CHECK(cl.lits[0].var != cl.lits[1].var);
    CHECK(cl.lits[0].var != cl.lits[2].var);
    CHECK(cl.lits[1].var != cl.lits[2].var);
  }
}

TEST_CASE("exhaustive satisfiability check") {
  const Instance sat = tiny();
  const auto model = find_satisfying_exhaustive(sat);
  REQUIRE(model.has_value());
  CHECK(evaluate(sat, *model) == 0);

  // all eight sign patterns over three variables: every assignment falsifies
  // exactly one clause
  std::string text = "p cnf 3 8\n";
  for (int pattern = 0; pattern < 8; ++pattern) {
    for (int k = 0; k < 3; ++k)
      text += std::to_string((pattern >> k & 1) ? -(k + 1) : (k + 1)) + " ";
    text += "0\n";
  }
  const Instance unsat = parse_dimacs(text, "allpatterns");
  CHECK_FALSE(find_satisfying_exhaustive(unsat).has_value());
}
