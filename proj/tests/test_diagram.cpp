#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "stabgrp/diagram.hpp"

using namespace stab;

namespace {

IntVec v2(long long x, long long y) { return {Int(x), Int(y)}; }

bool same_lattice(const std::vector<IntVec>& a, const std::vector<IntVec>& b) { return lattice_equal(a, b, 2); }

// Closed-form edge values, worked out by hand from the grid recursions.
IntVec cp1_value(EdgeKind k, int i, int j) {
  switch (k) {
    case EdgeKind::diagonal: return v2(j - i, 0);
    case EdgeKind::vertical: return v2(1 - i, 1);
    default: return v2(1 - j, 1);
  }
}

IntVec f1_value(EdgeKind k, int i, int j) {
  switch (k) {
    case EdgeKind::diagonal: return v2(2 * j - 2 * i + 1, j - i + 1);
    case EdgeKind::vertical: return v2(2 - 2 * i, 2 - i);
    default: return v2(1 - 2 * j, 1 - j);
  }
}

template <typename F>
void expect_assignment(const LambdaReport& R, F closed) {
  IntMatrix h = lattice_hnf(R.lambda, 2);
  for (const auto& ev : R.assignment) {
    IntVec want = closed(ev.kind, ev.i, ev.j);
    IntVec diff{ev.value[0] - want[0], ev.value[1] - want[1]};
    EXPECT_TRUE(lattice_contains(h, diff)) << ev.edge << " = " << vec_to_string(ev.value) << " expected "
                                           << vec_to_string(want);
  }
}

// Triangles containing both endpoints of a segment, from coordinates alone.
std::set<int> triangles_on(const DegenerationDiagram& D, std::array<int, 2> a, std::array<int, 2> b, int copy) {
  std::set<int> out;
  for (const auto& t : D.triangles) {
    if (t.copy != copy) continue;
    std::set<std::array<int, 2>> vs{{t.i - 1, t.j - 1}, {t.i, t.j}, t.upper ? std::array<int, 2>{t.i - 1, t.j}
                                                                             : std::array<int, 2>{t.i, t.j - 1}};
    if (vs.count(a) && vs.count(b)) out.insert(t.sheet);
  }
  return out;
}

}  // namespace

TEST(DiagramBuild, TriangleAndEdgeCounts) {
  for (int p = 2; p <= 6; ++p)
    for (int q = 2; q <= 6; ++q) {
      auto D = build_cp1xcp1(p, q);
      EXPECT_EQ(D.n, 2 * p * q);
      EXPECT_EQ(static_cast<int>(D.interior_edges(0).size()), 3 * p * q - p - q);
    }
  for (int q = 2; q <= 6; ++q)
    for (int p = q + 1; p <= 7; ++p) EXPECT_EQ(build_f1(p, q).n, (2 * p - q) * q);
  auto DC = build_doublecover(1, 1, 2, 2);
  EXPECT_EQ(DC.n, 16);
  EXPECT_EQ(build_f1(3, 2).n, 8);
}

TEST(DiagramBuild, RejectsBadParameters) {
  EXPECT_THROW(build_cp1xcp1(1, 3), std::invalid_argument);
  EXPECT_THROW(build_cp1xcp1(3, 1), std::invalid_argument);
  EXPECT_THROW(build_f1(2, 2), std::invalid_argument);
  EXPECT_THROW(build_f1(5, 1), std::invalid_argument);
  EXPECT_THROW(build_doublecover(0, 1, 2, 2), std::invalid_argument);
  EXPECT_THROW(build_doublecover(1, 1, 1, 2), std::invalid_argument);
  EXPECT_THROW(build_diagram(Template::cp1xcp1, {{"p", 2}}), std::invalid_argument);
}

TEST(DiagramBuild, EdgesBoundTheirTriangles) {
  for (auto D : {build_cp1xcp1(3, 4), build_f1(5, 3), build_doublecover(2, 1, 3, 2)})
    for (const auto& e : D.edges) {
      if (!e.interior()) continue;
      auto ts = triangles_on(D, e.lo, e.hi, e.copy);
      ASSERT_EQ(ts.size(), 2u) << e.name();
      EXPECT_EQ(*ts.begin(), e.sheets[0]);
      EXPECT_EQ(*ts.rbegin(), e.sheets[1]);
    }
}

TEST(DiagramBuild, VertexTypesTwoByTwo) {
  auto D = build_cp1xcp1(2, 2);
  std::map<VertexType, int> count;
  for (const auto& v : D.vertices) ++count[v.type];
  EXPECT_EQ(D.vertices.size(), 9u);
  EXPECT_EQ(count[VertexType::two_point], 2);
  EXPECT_EQ(count[VertexType::six_point], 1);
  // the grid corners (p,0) and (0,q) touch no interior edge
  EXPECT_EQ(count[VertexType::empty], 2);
  EXPECT_EQ(count[VertexType::three_point], 4);
  EXPECT_EQ(D.vertex(0, 0).type, VertexType::two_point);
  EXPECT_EQ(D.vertex(2, 2).type, VertexType::two_point);
  EXPECT_EQ(D.vertex(1, 1).type, VertexType::six_point);
}

TEST(DiagramBuild, F1TwoPoints) {
  auto D = build_f1(4, 2);
  EXPECT_EQ(D.vertex(2, 2).type, VertexType::two_point);
  EXPECT_EQ(D.vertex(4, 2).type, VertexType::two_point);
  EXPECT_EQ(D.vertex(1, 1).type, VertexType::three_point);
}

TEST(DiagramBuild, LabelsAndSixPointOrder) {
  auto D = build_cp1xcp1(3, 3);
  EXPECT_EQ(D.edges[D.edge(EdgeKind::vertical, 1, 1)].label, 2);
  EXPECT_EQ(build_f1(4, 2).edges[build_f1(4, 2).edge(EdgeKind::vertical, 1, 1)].label, 1);
  for (const auto& v : D.vertices) {
    if (v.type != VertexType::six_point) continue;
    const auto& es = v.edges[0];
    std::vector<std::pair<EdgeKind, std::pair<int, int>>> got;
    for (int e : es) got.push_back({D.edges[e].kind, {D.edges[e].i, D.edges[e].j}});
    int a = v.x, b = v.y;
    std::vector<std::pair<EdgeKind, std::pair<int, int>>> want{
        {EdgeKind::diagonal, {a, b}},       {EdgeKind::vertical, {a, b}},   {EdgeKind::horizontal, {a, b}},
        {EdgeKind::horizontal, {a + 1, b}}, {EdgeKind::vertical, {a, b + 1}}, {EdgeKind::diagonal, {a + 1, b + 1}}};
    EXPECT_EQ(got, want);
  }
}

TEST(DiagramBuild, DoubleCoverBoundary) {
  auto D = build_doublecover(2, 3, 3, 2);
  int tops = 0, rights = 0;
  for (const auto& e : D.edges) {
    if (e.kind == EdgeKind::top) { ++tops; EXPECT_EQ(e.multiplicity, 2 * 3); }
    if (e.kind == EdgeKind::right) { ++rights; EXPECT_EQ(e.multiplicity, 2 * 2); }
  }
  EXPECT_EQ(tops, 3);
  EXPECT_EQ(rights, 2);
  const auto& y = D.edges[D.edge(EdgeKind::right, 3, 2)];
  EXPECT_EQ(y.sheets, (std::array<int, 2>{2 * 3 * 2, 4 * 3 * 2}));
  EXPECT_EQ(D.vertex(3, 2).type, VertexType::corner_special);
  EXPECT_EQ(D.vertex(1, 2).type, VertexType::top_special);
  EXPECT_EQ(D.vertex(3, 1).type, VertexType::right_special);
}

TEST(DiagramTheta, SkeletonValidates) {
  for (auto D : {build_cp1xcp1(2, 2), build_cp1xcp1(3, 2), build_cp1xcp1(3, 3), build_f1(3, 2), build_f1(4, 3),
                 build_doublecover(1, 1, 2, 2), build_doublecover(2, 1, 2, 3)}) {
    auto S = diagram_skeleton(D);
    EXPECT_TRUE(S.theta.transitive());
    auto v = validate_theta(S.relations, S.theta);
    EXPECT_TRUE(v.ok) << template_name(D.tmpl) << " " << (v.violations.empty() ? "" : v.violations[0]);
    bool cusp = false, node = false;
    for (const auto& r : S.relations.relations) {
      cusp |= r.kind == RelationKind::cusp;
      node |= r.kind == RelationKind::node;
    }
    EXPECT_TRUE(cusp && node);
  }
  EXPECT_EQ(diagram_skeleton(build_cp1xcp1(2, 2)).theta.degree, 8);
}

TEST(DiagramTheta, WrongThetaRejected) {
  auto D = build_cp1xcp1(2, 2);
  auto S = diagram_skeleton(D);
  std::swap(S.theta.images[0], S.theta.images[2]);
  std::swap(S.theta.images[1], S.theta.images[3]);
  EXPECT_FALSE(validate_theta(S.relations, S.theta).ok);
}

TEST(DiagramConstraints, PrintedListExamples) {
  auto D = build_cp1xcp1(3, 3);
  auto S = emit_printed(D);
  int d11 = D.edge(EdgeKind::diagonal, 1, 1), v11 = D.edge(EdgeKind::vertical, 1, 1),
      h11 = D.edge(EdgeKind::horizontal, 1, 1);
  bool six = false, two = false, norm = false;
  for (const auto& eq : S.equations) {
    std::map<int, int> t(eq.terms.begin(), eq.terms.end());
    if (t == std::map<int, int>{{d11, 1}, {v11, -1}, {h11, 1}} && eq.rhs == v2(0, 0)) six = true;
    if (t == std::map<int, int>{{d11, 1}} && eq.rhs == v2(0, 0)) two = true;
    if (t == std::map<int, int>{{v11, 1}} && eq.rhs == v2(0, 1)) norm = true;
  }
  EXPECT_TRUE(six && two && norm);
}

TEST(DiagramConstraints, GenericSignsMatchPrintedAtBoundary) {
  // bottom 3-point (i,0): v_{i,1} - d_{i+1,1} = (1,1)
  auto D = build_cp1xcp1(4, 3);
  auto S = emit_generic(D);
  int v = D.edge(EdgeKind::vertical, 2, 1), d = D.edge(EdgeKind::diagonal, 3, 1);
  bool found = false;
  for (const auto& eq : S.equations) {
    std::map<int, int> t(eq.terms.begin(), eq.terms.end());
    if (t == std::map<int, int>{{v, 1}, {d, -1}} && eq.rhs == v2(1, 1)) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(DiagramSolve, Cp1Regression) {
  for (int p = 2; p <= 6; ++p)
    for (int q = 2; q <= 6; ++q) {
      auto R = solve_lambda(build_cp1xcp1(p, q));
      EXPECT_TRUE(same_lattice(R.lambda, {v2(2 - p, 2), v2(2 - q, 2)})) << p << "," << q;
      EXPECT_TRUE(R.generic_printed_agree);
      expect_assignment(R, cp1_value);
      EXPECT_EQ(R.multiplicity, 2 * p * q - 1);
      // Z_2 + Z_{p-q} for p, q even; Z_{2(p-q)} otherwise (Z_0 = Z)
      std::vector<IntVec> expect = (p % 2 == 0 && q % 2 == 0) ? std::vector<IntVec>{v2(2, 0), v2(0, p - q)}
                                                                : std::vector<IntVec>{v2(2 * (p - q), 0), v2(0, 1)};
      EXPECT_EQ(R.ab_factor, quotient_invariants(2, expect)) << p << "," << q;
      bool both_even = p % 2 == 0 && q % 2 == 0;
      EXPECT_EQ(R.commutator.order(), both_even ? 4 : 2);
      EXPECT_TRUE(R.witness_agrees);
      EXPECT_TRUE(R.twisting_integers_exist);
    }
}

TEST(DiagramSolve, F1Regression) {
  for (int q = 2; q <= 6; ++q)
    for (int p = q + 1; p <= 7; ++p) {
      auto R = solve_lambda(build_f1(p, q));
      EXPECT_TRUE(same_lattice(R.lambda, {v2(2 * p - 3, p - 3), v2(2 * q - 2, q - 2)})) << p << "," << q;
      EXPECT_TRUE(R.generic_printed_agree) << (R.discrepancies.empty() ? "" : R.discrepancies[0]);
      expect_assignment(R, f1_value);
      EXPECT_EQ(R.ab_factor, quotient_invariants(1, {{Int(3 * q - 2 * p)}}));
      EXPECT_EQ(R.multiplicity, (2 * p - q) * q - 1);
      bool z2 = p % 2 == 1 && q % 2 == 0;
      EXPECT_EQ(R.commutator.order(), z2 ? 2 : 1) << p << "," << q;
      EXPECT_TRUE(R.witness_agrees);
    }
}

TEST(DiagramSolve, DoubleCoverRegression) {
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int p = 2; p <= 4; ++p)
        for (int q = 2; q <= 4; ++q) {
          auto R = solve_lambda(build_doublecover(a, b, p, q));
          EXPECT_TRUE(same_lattice(R.lambda, {v2(p + a - 2, a - 2), v2(q + b - 2, b - 2)}));
          EXPECT_TRUE(R.generic_printed_agree) << (R.discrepancies.empty() ? "" : R.discrepancies[0]);
          ASSERT_TRUE(R.corner_redundant.has_value());
          EXPECT_TRUE(*R.corner_redundant);
          expect_assignment(R, cp1_value);
          EXPECT_EQ(R.multiplicity, 4 * p * q - 1);
          int order = 2;
          if (a % 2 == 0 && b % 2 == 0 && p % 2 == 0 && q % 2 == 0) order = 4;
          else if ((a % 2 || b % 2) && ((a + p) % 2 || (b + q) % 2)) order = 1;
          EXPECT_EQ(R.commutator.order(), order) << a << b << p << q;
          EXPECT_TRUE(R.witness_agrees);
        }
}

TEST(DiagramSolve, ShuffleInvariance) {
  std::mt19937 rng(11);
  for (auto D : {build_cp1xcp1(4, 3), build_f1(5, 2), build_doublecover(2, 3, 3, 2)}) {
    auto base = solve_system(emit_generic(D));
    for (int t = 0; t < 10; ++t) {
      AbarSystem S = emit_generic(D);
      std::shuffle(S.equations.begin(), S.equations.end(), rng);
      for (auto& eq : S.equations) std::shuffle(eq.terms.begin(), eq.terms.end(), rng);
      std::vector<std::size_t> order(S.unknowns.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      AbarSystem T = S;
      for (std::size_t k = 0; k < order.size(); ++k) T.unknowns[k] = S.unknowns[order[k]];
      auto sol = solve_system(T);
      EXPECT_EQ(sol.hnf, base.hnf);
      for (std::size_t k = 0; k < order.size(); ++k) EXPECT_EQ(sol.values[k], base.values[order[k]]);
    }
  }
}

TEST(DiagramSolve, SwapSymmetry) {
  for (int p = 2; p <= 6; ++p)
    for (int q = 2; q <= 6; ++q)
      EXPECT_EQ(solve_lambda(build_cp1xcp1(p, q)).ab_factor, solve_lambda(build_cp1xcp1(q, p)).ab_factor);
}

TEST(DiagramSolve, StructuredErrors) {
  AbarSystem torsion;
  torsion.unknowns = {0};
  torsion.equations = {{{{0, 2}}, v2(1, 0), "2x"}};
  try {
    solve_system(torsion);
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(e.kind, "inconsistent");
  }
  AbarSystem free;
  free.unknowns = {0, 1};
  free.equations = {{{{0, 1}, {1, 1}}, v2(1, 0), "x+y"}};
  try {
    solve_system(free);
    FAIL();
  } catch (const ConstraintError& e) {
    EXPECT_EQ(e.kind, "underdetermined");
  }
  AbarSystem bad;
  bad.unknowns = {0};
  bad.equations = {{{{5, 1}}, v2(0, 0), "unknown edge"}};
  EXPECT_THROW(solve_system(bad), ConstraintError);
}

TEST(DiagramSolve, ConflictingEqualitiesBecomeLambda) {
  AbarSystem S;
  S.unknowns = {0, 1};
  S.equations = {{{{0, 1}}, v2(1, 0), ""}, {{{1, 1}}, v2(0, 3), ""}, {{{0, 1}, {1, -1}}, v2(0, 0), ""}};
  auto sol = solve_system(S);
  EXPECT_TRUE(same_lattice(sol.generators, {v2(1, -3)}));
}

TEST(DiagramVerdict, ParityRuleAndWitness) {
  EXPECT_EQ(commutator_subgroup({v2(1, 2)}).name(), "Z_2 via (1,eta)");
  EXPECT_EQ(commutator_subgroup({v2(2, 1)}).name(), "Z_2 via (eta,1)");
  EXPECT_EQ(commutator_subgroup({v2(2, 2), v2(0, 4)}).name(), "Z_2 x Z_2");
  EXPECT_EQ(commutator_subgroup({v2(3, 2), v2(0, 1)}).name(), "trivial");
  for (int k = -4; k <= 4; ++k)
    for (int l = -4; l <= 4; ++l)
      EXPECT_EQ(commutator_witness({v2(k, l)}), commutator_subgroup({v2(k, l)})) << k << "," << l;
  // generating-set independence: the parity verdict only depends on the lattice
  std::vector<IntVec> g{v2(3, 2), v2(1, 4)};
  std::vector<IntVec> h{v2(4, 6), v2(1, 4)};
  ASSERT_TRUE(same_lattice(g, h));
  EXPECT_EQ(commutator_subgroup(g), commutator_subgroup(h));
}

TEST(DiagramVerdict, KernelFormParityIsFlaggedOnly) {
  auto R = solve_lambda(build_cp1xcp1(3, 2));
  EXPECT_FALSE(R.review_flags.empty());
  EXPECT_TRUE(R.property_star);
  EXPECT_EQ(kernel_form(v2(2, 3)), "(u1^2 eta, u1^3 eta)");
  EXPECT_EQ(kernel_form(v2(0, -1)), "(u1^0, u1^-1 eta)");
}

TEST(DiagramTwisting, IncrementsHold) {
  for (auto D : {build_cp1xcp1(4, 4), build_f1(6, 3), build_doublecover(1, 2, 3, 3)}) {
    auto l = twisting_integers(D);
    ASSERT_TRUE(l.has_value());
    std::map<int, Int> val;
    std::size_t k = 0;
    for (int c = 0; c < D.copies(); ++c)
      for (int e : D.interior_edges(c)) val[e] = (*l)[k++];
    for (const auto& v : D.vertices) {
      if (v.type != VertexType::six_point) continue;
      for (int c = 0; c < D.copies(); ++c) {
        const auto& es = v.edges[c];
        EXPECT_EQ(val[es[5]], val[es[0]] - 1);
        EXPECT_EQ(val[es[4]], val[es[1]] + 1);
        EXPECT_EQ(val[es[3]], val[es[2]]);
      }
    }
  }
}
