#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lagonn/errors.hpp"
#include "lagonn/rng.hpp"

namespace lagonn {

// var is a 0-based variable index; DIMACS files use 1-based ids.
struct Literal {
  int var = 0;
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Clause {
  std::array<Literal, 3> lits{};
  friend bool operator==(const Clause&, const Clause&) = default;
};

// Spin assignment, one entry per variable, each +1 (TRUE) or -1 (FALSE).
using Assignment = Eigen::VectorXi;

struct Instance {
  int num_vars = 0;
  std::vector<Clause> clauses;
  std::string name;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

// type_id encodes the number of negated literals plus one:
//   1: x|y|z   2: ~x|y|z   3: ~x|~y|z   4: ~x|~y|~z
// perm[k] is the position in the original clause of the literal placed in
// canonical slot k (negated literals first, original order preserved within
// each group).
struct CanonicalClause {
  int type_id = 1;
  std::array<int, 3> perm{0, 1, 2};
};

inline bool literal_true(const Literal& l, const Assignment& s) {
  return l.negated ? s[l.var] < 0 : s[l.var] > 0;
}

Instance parse_dimacs(const std::string& text, const std::string& name = "");
Instance load_dimacs_file(const std::string& path);
std::string to_dimacs(const Instance& inst);

// Number of unsatisfied clauses.
int evaluate(const Instance& inst, const Assignment& s);

CanonicalClause normalize_clause(const Clause& c);

// clauses_of[v] lists the clause indices containing variable v.
struct VarIndex {
  std::vector<std::vector<int>> clauses_of;
  explicit VarIndex(const Instance& inst);
};

// Uniform random 3-SAT: clause variables sampled without replacement,
// polarities fair coin flips. Duplicate clauses across the instance are
// allowed, as in the standard uniform model.
Instance random_instance(Rng& rng, int num_vars, int num_clauses, std::string name = "");

// Exhaustive satisfiability check, limited to num_vars <= 26.
std::optional<Assignment> find_satisfying_exhaustive(const Instance& inst);

} // namespace lagonn
