#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace fmplex;
using namespace fmplex::smtlib;
using namespace fmplex::testing;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError::Kind error_kind(const std::string& text) {
  try {
    (void)parse_problem(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseError::Kind::Syntax;
}

const std::string header = "(declare-fun x () Real)\n(declare-fun y () Real)\n";

TEST(Parse, Sat2dMatchesMatrix) {
  Problem p = parse_problem(slurp(data_path("sat2d.smt2")));
  EXPECT_EQ(p.variables, (std::vector<std::string>{"x1", "x2"}));
  ASSERT_EQ(p.atoms.size(), 4u);
  EXPECT_TRUE(p.check_sat);
  EXPECT_TRUE(p.get_model);
  EXPECT_FALSE(p.get_unsat_core);
  std::vector<Constraint> rows;
  for (const auto& a : p.atoms) {
    NormalizedAtom n = normalize(a.atom);
    EXPECT_FALSE(n.equality);
    rows.push_back(n.row);
  }
  EXPECT_EQ(rows, sat2d().constraints());
}

TEST(Parse, Unsat3dMatchesMatrix) {
  Problem p = parse_problem(slurp(data_path("unsat3d.smt2")));
  std::vector<Constraint> rows;
  for (const auto& a : p.atoms) rows.push_back(normalize(a.atom).row);
  EXPECT_EQ(rows, unsat3d().constraints());
  EXPECT_TRUE(p.get_unsat_core);
}

TEST(Parse, NamedConjunctionsAndDecimals) {
  Problem p = parse_problem(slurp(data_path("named.smt2")));
  ASSERT_EQ(p.atoms.size(), 4u);
  EXPECT_EQ(p.label(0), "bounds");
  EXPECT_EQ(p.label(1), "bounds");
  EXPECT_EQ(p.label(2), "gap");
  EXPECT_EQ(p.label(3), "a3");
  EXPECT_EQ(p.atoms[1].atom.rel, Relation::Ge);
  EXPECT_EQ(p.atoms[1].atom.rhs, q(1, 2));
  EXPECT_EQ(p.atoms[3].atom.rel, Relation::Eq);
  EXPECT_EQ(p.atoms[3].atom.rhs, q(1, 3));
  EXPECT_EQ(p.atoms[2].assert_index, 1u);
  EXPECT_EQ(p.atoms[3].assert_index, 2u);
}

TEST(Parse, TermsAreCollected) {
  Problem p = parse_problem(header + "(assert (<= (+ (* 2 x) (- y) (* x 0.1) 3) (/ (- x 4) 2)))");
  ASSERT_EQ(p.atoms.size(), 1u);
  // 2.1x - y + 3 <= x/2 - 2
  EXPECT_EQ(p.atoms[0].atom.coeffs, (std::vector<Rational>{q(8, 5), q(-1)}));
  EXPECT_EQ(p.atoms[0].atom.rhs, q(-5));
  Problem nested = parse_problem(header + "(assert (and (and (< x 1) (> y 0)) (= x y)))");
  EXPECT_EQ(nested.atoms.size(), 3u);
  Problem decl = parse_problem("(declare-const z Real)(set-info :status sat)(assert (>= z (- 1 3 (- 2))))");
  EXPECT_EQ(decl.atoms[0].atom.rhs, q(0));
}

TEST(Parse, Comments) {
  Problem p = parse_problem("; leading\n(declare-fun x () Real) ; trailing\n(assert (<= x 1)); end");
  EXPECT_EQ(p.atoms.size(), 1u);
}

TEST(Parse, ErrorKinds) {
  EXPECT_EQ(error_kind(header + "(assert (or (< x 0) (> x 1)))"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind(header + "(assert (= (* x y) 1))"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind(header + "(assert (not (<= x 1)))"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind(header + "(assert (distinct x y))"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind(header + "(assert (ite (<= x 1) (<= y 1) (<= y 2)))"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind(header + "(assert (<= z 1))"), ParseError::Kind::UnknownSymbol);
  EXPECT_EQ(error_kind(header + "(assert (<= x 1)"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind(header + "(assert (<= x 1)))"), ParseError::Kind::Syntax);
  EXPECT_EQ(error_kind("(set-logic QF_NRA)"), ParseError::Kind::Unsupported);
  EXPECT_EQ(error_kind("(declare-fun b () Bool)"), ParseError::Kind::Unsupported);
}

TEST(Parse, ErrorPositions) {
  try {
    (void)parse_problem(header + "(assert (or (< x 0) (> x 1)))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_EQ(std::string(e.what()).rfind("3:10: ", 0), 0u);
  }
  try {
    (void)parse_problem(header + "(assert\n  (<= w 1))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(e.column(), 7u);
  }
}

TEST(RoundTrip, Corpus) {
  std::vector<std::string> scripts;
  for (const auto& entry : std::filesystem::directory_iterator(FMPLEX_TEST_DATA))
    if (entry.path().extension() == ".smt2") scripts.push_back(slurp(entry.path().string()));
  GenParams g;
  g.strict_ratio = 0.3;
  for (std::uint64_t k = 0; k < 20; ++k) scripts.push_back(generate_script(g, k));
  scripts.push_back(header + "(assert (and))\n(assert (! (< x (/ (- 7) 3)) :named n1))\n(assert (= 0 x))");
  for (const auto& s : scripts) {
    Problem p = parse_problem(s);
    Problem again = parse_problem(print_problem(p));
    EXPECT_EQ(again, p) << print_problem(p);
  }
}

bool direct(const Atom& a, const std::vector<Rational>& point) {
  Rational lhs;
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) lhs += a.coeffs[k] * point[k];
  switch (a.rel) {
    case Relation::Le: return lhs <= a.rhs;
    case Relation::Lt: return lhs < a.rhs;
    case Relation::Ge: return lhs >= a.rhs;
    case Relation::Gt: return lhs > a.rhs;
    case Relation::Eq: return lhs == a.rhs;
  }
  return false;
}

TEST(Normalize, AgreesWithSubstitution) {
  std::vector<Problem> problems{parse_problem(slurp(data_path("sat2d.smt2"))),
                                parse_problem(slurp(data_path("named.smt2")))};
  GenParams g;
  g.strict_ratio = 0.5;
  for (std::uint64_t k = 0; k < 10; ++k) problems.push_back(generate(g, k));
  std::mt19937_64 rng(71);
  for (const auto& p : problems) {
    for (const auto& a : p.atoms) {
      NormalizedAtom n = normalize(a.atom);
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<Rational> point;
        Assignment alpha;
        for (std::size_t v = 0; v < p.nvars(); ++v) {
          point.push_back(make_rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1));
          alpha.set(v, DeltaScalar(point.back()));
        }
        bool ours = evaluate(alpha, n.row);
        if (n.equality) ours = ours && linear_value(n.row.coeffs, alpha) == n.row.bound;
        EXPECT_EQ(ours, direct(a.atom, point));
      }
      // Points on the boundary separate strict from weak.
      if (a.atom.rel != Relation::Eq && p.nvars() == 1 && !is_zero(a.atom.coeffs[0])) {
        std::vector<Rational> edge{a.atom.rhs / a.atom.coeffs[0]};
        Assignment alpha;
        alpha.set(0, DeltaScalar(edge[0]));
        EXPECT_EQ(evaluate(alpha, n.row), direct(a.atom, edge));
      }
    }
  }
}

TEST(PrintResult, Formats) {
  Problem p = parse_problem("(declare-fun x1 () Real)(declare-fun x2 () Real)(assert (<= x1 0))(assert (>= x1 1))"
                            "(check-sat)(get-model)(get-unsat-core)");
  EXPECT_EQ(print_result(SatAnswer{{q(3), q(1)}}, p), "sat\n(model (define-fun x1 () Real 3) (define-fun x2 () Real 1))\n");
  EXPECT_EQ(print_result(SatAnswer{{q(-1, 2), q(0)}}, p),
            "sat\n(model (define-fun x1 () Real (- (/ 1 2))) (define-fun x2 () Real 0))\n");
  EXPECT_EQ(print_result(UnsatAnswer{{0, 1}}, p), "unsat\n(core a0 a1)\n");
  p.get_model = false;
  p.get_unsat_core = false;
  EXPECT_EQ(print_result(SatAnswer{{q(3), q(1)}}, p), "sat\n");
  EXPECT_EQ(print_result(UnsatAnswer{{0, 1}}, p), "unsat\n");
}

TEST(PrintResult, NamedCoreLabelsOnce) {
  Problem p = parse_problem(slurp(data_path("named.smt2")));
  EXPECT_EQ(print_result(UnsatAnswer{{0, 1, 2}}, p), "unsat\n(core bounds gap)\n");
}

TEST(PrintQe, Shapes) {
  const std::vector<std::string> names{"x1", "x2"};
  EXPECT_EQ(print_qe({}, names), "false");
  EXPECT_EQ(print_qe({LinearSystem(2, 0)}, names), "true");
  EXPECT_EQ(print_qe({LinearSystem(2, 0), LinearSystem(2, 0)}, names), "(or true true)");
  LinearSystem strict = system(2, {row({1, -2}, 3, true), row({0, 1}, -1)});
  EXPECT_EQ(print_qe({strict}, names), "(or (and (< (+ x1 (* (- 2) x2)) 3) (<= x2 (- 1))))");
}

TEST(Witness, Models) {
  ModelWitness m = parse_model("(model (define-fun x1 () Real 3) (define-fun x2 () Real (- (/ 1 2))))");
  EXPECT_EQ(m.at("x1"), q(3));
  EXPECT_EQ(m.at("x2"), q(-1, 2));
  ModelWitness flat = parse_model("x1=3, x2=-1/2 y=0.25");
  EXPECT_EQ(flat.at("x2"), q(-1, 2));
  EXPECT_EQ(flat.at("y"), q(1, 4));
  EXPECT_THROW((void)parse_model("x1"), ParseError);
  EXPECT_THROW((void)parse_model("x1=abc"), ParseError);
}

TEST(Witness, Cores) {
  EXPECT_EQ(parse_core("(core a0 gap)").labels, (std::vector<std::string>{"a0", "gap"}));
  EXPECT_EQ(parse_core("0,1 3").labels, (std::vector<std::string>{"0", "1", "3"}));
  Problem p = parse_problem(slurp(data_path("named.smt2")));
  EXPECT_EQ(core_atoms(p, parse_core("bounds a3")), (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(core_atoms(p, parse_core("2")), (std::vector<std::size_t>{2}));
  EXPECT_FALSE(core_atoms(p, parse_core("nope")).has_value());
}

TEST(Witness, SolverOutput) {
  Witness w = parse_solver_output("sat\n(model (define-fun x () Real 1))\n; nodes=1\n");
  ASSERT_TRUE(std::holds_alternative<ModelWitness>(w));
  EXPECT_EQ(std::get<ModelWitness>(w).at("x"), q(1));
  Witness u = parse_solver_output("unsat\n(core a1 a2)\n");
  ASSERT_TRUE(std::holds_alternative<CoreWitness>(u));
  EXPECT_EQ(std::get<CoreWitness>(u).labels.size(), 2u);
  EXPECT_THROW((void)parse_solver_output("unknown\n"), ParseError);
}

}  // namespace
