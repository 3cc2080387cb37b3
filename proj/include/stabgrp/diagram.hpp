// Degeneration diagrams and the abar-constraint pipeline.
//
// Layout conventions (all templates): square (i,j) occupies
// [i-1,i] x [j-1,j]; its diagonal runs from (i-1,j-1) to (i,j) and splits it
// into an upper-left triangle U and a lower-right triangle R. Sheets are
// numbered row by row from the bottom, squares left to right, U before R.
// Edges of a copy are labelled by (hi endpoint, lo endpoint) with vertices
// compared as (y, x).
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "stabgrp/braidvk.hpp"
#include "stabgrp/intlinalg.hpp"
#include "stabgrp/tbraid.hpp"
#include "stabgrp/words.hpp"

namespace stab {

enum class Template { cp1xcp1, f1, doublecover };

inline const char* template_name(Template t) {
  switch (t) {
    case Template::cp1xcp1: return "cp1xcp1";
    case Template::f1: return "f1";
    default: return "doublecover";
  }
}

inline std::optional<Template> parse_template(const std::string& s) {
  if (s == "cp1xcp1") return Template::cp1xcp1;
  if (s == "f1") return Template::f1;
  if (s == "doublecover") return Template::doublecover;
  return std::nullopt;
}

enum class EdgeKind { diagonal, vertical, horizontal, top, right };

inline const char* edge_kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::diagonal: return "diagonal";
    case EdgeKind::vertical: return "vertical";
    case EdgeKind::horizontal: return "horizontal";
    case EdgeKind::top: return "top";
    default: return "right";
  }
}

enum class VertexType { empty, two_point, three_point, six_point, corner_special, top_special, right_special };

inline const char* vertex_type_name(VertexType t) {
  switch (t) {
    case VertexType::empty: return "empty";
    case VertexType::two_point: return "2-point";
    case VertexType::three_point: return "3-point";
    case VertexType::six_point: return "6-point";
    case VertexType::corner_special: return "corner-special";
    case VertexType::top_special: return "top-special";
    default: return "right-special";
  }
}

struct Triangle {
  int i = 0, j = 0;
  bool upper = false;
  int copy = 0;
  int sheet = 0;  // 1-based
};

struct DiagramEdge {
  EdgeKind kind = EdgeKind::diagonal;
  int i = 0, j = 0;
  int copy = 0;
  std::array<int, 2> lo{}, hi{};      // (x, y) endpoints
  std::array<int, 2> sheets{};        // bounding triangles, increasing
  int multiplicity = 1;               // generators carried (2b / 2a on boundary edges)
  int label = 0;                      // 1-based within its copy; 0 for boundary edges

  bool interior() const { return kind == EdgeKind::diagonal || kind == EdgeKind::vertical || kind == EdgeKind::horizontal; }

  std::string name() const {
    const char* c = kind == EdgeKind::diagonal ? "d" : kind == EdgeKind::vertical ? "v"
                  : kind == EdgeKind::horizontal ? "h" : kind == EdgeKind::top ? "z" : "y";
    return std::string(c) + (copy == 1 ? "~" : "") + "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
  }
};

struct DiagramVertex {
  int x = 0, y = 0;
  VertexType type = VertexType::empty;
  std::vector<std::vector<int>> edges;  // per copy: incident interior edges in label order
};

struct DegenerationDiagram {
  Template tmpl = Template::cp1xcp1;
  int p = 0, q = 0, a = 0, b = 0;
  int n = 0;
  std::vector<Triangle> triangles;  // indexed by sheet - 1
  std::vector<DiagramEdge> edges;   // interior edges of copy 0, copy 1, then boundary edges
  std::vector<DiagramVertex> vertices;

  int copies() const { return tmpl == Template::doublecover ? 2 : 1; }

  std::optional<int> find_edge(EdgeKind k, int i, int j, int copy = 0) const {
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].kind == k && edges[e].i == i && edges[e].j == j && edges[e].copy == copy) return static_cast<int>(e);
    return std::nullopt;
  }

  int edge(EdgeKind k, int i, int j, int copy = 0) const {
    auto e = find_edge(k, i, j, copy);
    if (!e) throw std::out_of_range(std::string("no ") + edge_kind_name(k) + " edge at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    return *e;
  }

  std::vector<int> interior_edges(int copy) const {
    std::vector<int> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].interior() && edges[e].copy == copy) out.push_back(static_cast<int>(e));
    return out;
  }

  const DiagramVertex& vertex(int x, int y) const {
    for (const auto& v : vertices)
      if (v.x == x && v.y == y) return v;
    throw std::out_of_range("no vertex at (" + std::to_string(x) + "," + std::to_string(y) + ")");
  }

  std::map<std::string, int> params() const {
    if (tmpl == Template::doublecover) return {{"a", a}, {"b", b}, {"p", p}, {"q", q}};
    return {{"p", p}, {"q", q}};
  }
};

namespace detail {

inline std::array<int, 2> vertex_key(const std::array<int, 2>& v) { return {v[1], v[0]}; }

// Lays out one copy of the grid. first_col(j) is the leftmost square of row j;
// half(i, j) says square (i,j) has only its lower-right triangle.
template <typename FirstCol, typename Half>
void layout_copy(DegenerationDiagram& D, int copy, FirstCol first_col, Half half,
                 std::map<std::tuple<int, int, int, bool>, int>& sheet_of) {
  for (int j = 1; j <= D.q; ++j)
    for (int i = first_col(j); i <= D.p; ++i)
      for (bool upper : {true, false}) {
        if (upper && half(i, j)) continue;
        Triangle t{i, j, upper, copy, static_cast<int>(D.triangles.size()) + 1};
        sheet_of[{copy, i, j, upper}] = t.sheet;
        D.triangles.push_back(t);
      }

  auto find = [&](int i, int j, bool upper) -> int {
    auto it = sheet_of.find({copy, i, j, upper});
    return it == sheet_of.end() ? 0 : it->second;
  };
  std::vector<DiagramEdge> es;
  auto add = [&](EdgeKind k, int i, int j, std::array<int, 2> lo, std::array<int, 2> hi, int s1, int s2) {
    if (!s1 || !s2) return;
    DiagramEdge e;
    e.kind = k; e.i = i; e.j = j; e.copy = copy; e.lo = lo; e.hi = hi;
    e.sheets = {std::min(s1, s2), std::max(s1, s2)};
    es.push_back(e);
  };
  for (int j = 1; j <= D.q; ++j)
    for (int i = 1; i <= D.p; ++i) {
      add(EdgeKind::diagonal, i, j, {i - 1, j - 1}, {i, j}, find(i, j, true), find(i, j, false));
      add(EdgeKind::vertical, i, j, {i, j - 1}, {i, j}, find(i, j, false), find(i + 1, j, true));
      add(EdgeKind::horizontal, i, j, {i - 1, j}, {i, j}, find(i, j, true), find(i, j + 1, false));
    }
  std::sort(es.begin(), es.end(), [](const DiagramEdge& x, const DiagramEdge& y) {
    return std::make_pair(vertex_key(x.hi), vertex_key(x.lo)) < std::make_pair(vertex_key(y.hi), vertex_key(y.lo));
  });
  for (std::size_t k = 0; k < es.size(); ++k) es[k].label = static_cast<int>(k) + 1;
  D.edges.insert(D.edges.end(), es.begin(), es.end());
}

inline void type_vertices(DegenerationDiagram& D) {
  std::set<std::pair<int, int>> pts;
  for (const auto& t : D.triangles) {
    int x0 = t.i - 1, y0 = t.j - 1;
    pts.insert({x0, y0});
    pts.insert({t.i, t.j});
    if (t.upper) pts.insert({x0, t.j});
    else pts.insert({t.i, y0});
  }
  for (auto [x, y] : pts) {
    DiagramVertex v;
    v.x = x; v.y = y;
    v.edges.resize(D.copies());
    for (std::size_t e = 0; e < D.edges.size(); ++e) {
      const auto& E = D.edges[e];
      if (!E.interior()) continue;
      if ((E.lo[0] == x && E.lo[1] == y) || (E.hi[0] == x && E.hi[1] == y)) v.edges[E.copy].push_back(static_cast<int>(e));
    }
    std::size_t c = v.edges[0].size();
    if (D.tmpl == Template::doublecover && x == D.p && y == D.q) v.type = VertexType::corner_special;
    else if (D.tmpl == Template::doublecover && y == D.q && x > 0 && x < D.p) v.type = VertexType::top_special;
    else if (D.tmpl == Template::doublecover && x == D.p && y > 0 && y < D.q) v.type = VertexType::right_special;
    else if (c == 0) v.type = VertexType::empty;
    else if (c == 1) v.type = VertexType::two_point;
    else if (c == 2) v.type = VertexType::three_point;
    else if (c == 6) v.type = VertexType::six_point;
    else throw std::logic_error("vertex with " + std::to_string(c) + " interior edges");
    D.vertices.push_back(std::move(v));
  }
}

}  // namespace detail

inline DegenerationDiagram build_cp1xcp1(int p, int q) {
  if (p < 2 || q < 2)
    throw std::invalid_argument("cp1xcp1 requires p, q >= 2: for p = 1 the complement group is the braid group B_2q "
                                "and the construction breaks down in this insufficiently ample case");
  DegenerationDiagram D;
  D.tmpl = Template::cp1xcp1;
  D.p = p; D.q = q;
  std::map<std::tuple<int, int, int, bool>, int> sheet_of;
  detail::layout_copy(D, 0, [](int) { return 1; }, [](int, int) { return false; }, sheet_of);
  D.n = static_cast<int>(D.triangles.size());
  detail::type_vertices(D);
  return D;
}

inline DegenerationDiagram build_f1(int p, int q) {
  if (!(p > q && q >= 2)) throw std::invalid_argument("f1 requires p > q >= 2");
  DegenerationDiagram D;
  D.tmpl = Template::f1;
  D.p = p; D.q = q;
  std::map<std::tuple<int, int, int, bool>, int> sheet_of;
  detail::layout_copy(D, 0, [](int j) { return j; }, [](int i, int j) { return i == j; }, sheet_of);
  D.n = static_cast<int>(D.triangles.size());
  detail::type_vertices(D);
  return D;
}

inline DegenerationDiagram build_doublecover(int a, int b, int p, int q) {
  if (a < 1 || b < 1 || p < 2 || q < 2) throw std::invalid_argument("doublecover requires a, b >= 1 and p, q >= 2");
  DegenerationDiagram D;
  D.tmpl = Template::doublecover;
  D.a = a; D.b = b; D.p = p; D.q = q;
  std::map<std::tuple<int, int, int, bool>, int> sheet_of;
  for (int c = 0; c < 2; ++c)
    detail::layout_copy(D, c, [](int) { return 1; }, [](int, int) { return false; }, sheet_of);
  D.n = static_cast<int>(D.triangles.size());
  for (int i = 1; i <= p; ++i) {
    DiagramEdge e;
    e.kind = EdgeKind::top; e.i = i; e.j = q; e.lo = {i - 1, q}; e.hi = {i, q};
    e.sheets = {sheet_of.at({0, i, q, true}), sheet_of.at({1, i, q, true})};
    e.multiplicity = 2 * b;
    D.edges.push_back(e);
  }
  for (int j = 1; j <= q; ++j) {
    DiagramEdge e;
    e.kind = EdgeKind::right; e.i = p; e.j = j; e.lo = {p, j - 1}; e.hi = {p, j};
    e.sheets = {sheet_of.at({0, p, j, false}), sheet_of.at({1, p, j, false})};
    e.multiplicity = 2 * a;
    D.edges.push_back(e);
  }
  detail::type_vertices(D);
  return D;
}

inline DegenerationDiagram build_diagram(Template t, const std::map<std::string, int>& params) {
  auto get = [&](const char* k) {
    auto it = params.find(k);
    if (it == params.end()) throw std::invalid_argument(std::string("missing parameter ") + k);
    return it->second;
  };
  switch (t) {
    case Template::cp1xcp1: return build_cp1xcp1(get("p"), get("q"));
    case Template::f1: return build_f1(get("p"), get("q"));
    default: return build_doublecover(get("a"), get("b"), get("p"), get("q"));
  }
}

// Monodromy and relation skeleton.

struct DiagramGenerator {
  int edge = 0;
  bool primed = false;  // e' for interior edges; repeat index for boundary edges
  int repeat = 0;
  std::string name;
};

struct DiagramSkeleton {
  std::vector<DiagramGenerator> generators;
  std::vector<int> first_generator;  // per edge, 1-based
  MonodromyRep theta;
  TaggedPresentation relations;
};

inline DiagramSkeleton diagram_skeleton(const DegenerationDiagram& D) {
  DiagramSkeleton S;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t e = 0; e < D.edges.size(); ++e) {
    const auto& E = D.edges[e];
    S.first_generator.push_back(static_cast<int>(S.generators.size()) + 1);
    if (E.interior()) {
      S.generators.push_back({static_cast<int>(e), false, 0, E.name()});
      S.generators.push_back({static_cast<int>(e), true, 0, E.name() + "'"});
      pairs.push_back({E.sheets[0], E.sheets[1]});
      pairs.push_back({E.sheets[0], E.sheets[1]});
    } else {
      std::string base = E.kind == EdgeKind::top ? "z_{" + std::to_string(E.i) : "y_{" + std::to_string(E.j);
      for (int r = 1; r <= E.multiplicity; ++r) {
        S.generators.push_back({static_cast<int>(e), false, r, base + "," + std::to_string(r) + "}"});
        pairs.push_back({E.sheets[0], E.sheets[1]});
      }
    }
  }
  S.theta = make_theta(D.n, pairs);
  auto& P = S.relations;
  P.presentation.generators = static_cast<int>(S.generators.size());

  auto share = [&](int e, int f) {
    const auto& x = D.edges[e].sheets;
    const auto& y = D.edges[f].sheets;
    int c = 0;
    for (int s : x) c += (s == y[0] || s == y[1]);
    return c;
  };
  // Pairwise cusp / commutation pattern, decided by the triangles.
  const int G = P.presentation.generators;
  for (int g = 1; g <= G; ++g)
    for (int h = g + 1; h <= G; ++h) {
      int e = S.generators[g - 1].edge, f = S.generators[h - 1].edge;
      if (e == f) continue;
      int c = share(e, f);
      if (c == 2) throw std::logic_error("two edges bound the same pair of triangles");
      TaggedRelation r = relation_for({g}, {h}, c == 1 ? 3 : 2);
      r.origin = S.generators[g - 1].name + ", " + S.generators[h - 1].name;
      P.add(r);
    }
  // Boundary generators of one edge coincide.
  for (std::size_t e = 0; e < D.edges.size(); ++e) {
    if (D.edges[e].interior()) continue;
    int g0 = S.first_generator[e];
    for (int r = 1; r < D.edges[e].multiplicity; ++r) {
      TaggedRelation t = relation_for({g0}, {g0 + r}, 1);
      t.origin = "boundary " + D.edges[e].name();
      P.add(t);
    }
  }

  auto e_of = [&](int edge) { return Word{S.first_generator[edge]}; };
  auto ep_of = [&](int edge) { return Word{S.first_generator[edge] + 1}; };
  auto a_of = [&](int edge) { return concat(ep_of(edge), inverse(e_of(edge))); };
  auto inv = [](const Word& w) { return inverse(w); };
  auto other = [&](const Word& lhs, const Word& rhs, std::string origin) {
    TaggedRelation r;
    r.kind = RelationKind::other;
    r.relator = concat(inv(lhs), rhs);
    r.origin = std::move(origin);
    P.add(r);
  };

  for (const auto& V : D.vertices)
    for (int c = 0; c < D.copies(); ++c) {
      const auto& es = V.edges[c];
      std::string at = std::string(vertex_type_name(V.type)) + " (" + std::to_string(V.x) + "," + std::to_string(V.y) + ")";
      if (V.type == VertexType::two_point) {
        TaggedRelation r = relation_for(e_of(es[0]), ep_of(es[0]), 1);
        r.origin = at;
        P.add(r);
      } else if (es.size() == 2) {
        int i = es[0], j = es[1];
        other(a_of(j), concat(inv(e_of(i)), e_of(j), ep_of(i), inv(e_of(j)), e_of(i), inv(e_of(j))), at);
      } else if (V.type == VertexType::six_point) {
        const auto& x = es;
        auto e = [&](int k) { return e_of(x[k - 1]); };
        auto a = [&](int k) { return a_of(x[k - 1]); };
        auto conjw = [&](const Word& y, const Word& w) { return concat(inv(w), y, w); };
        Word w61 = concat(e(3), e(2), inv(e(4)), inv(e(5)));
        other(e(6), conjw(e(1), w61), at + " (diagonal elimination)");
        other(a(6), conjw(a(1), w61), at);
        other(a(5), conjw(a(2), concat(inv(e(1)), e(3), inv(e(4)), e(6))), at);
        other(a(4), conjw(a(3), concat(inv(e(1)), e(2), inv(e(5)), e(6))), at);
        other(a(3), conjw(concat(a(2), a(1), e(1), inv(a(2)), inv(e(1))), concat(e(3), e(1))), at);
        other(a(2), conjw(concat(a(3), a(1), e(1), inv(a(3)), inv(e(1))), concat(e(2), e(1))), at);
      }
    }
  return S;
}

// The abar constraint system: each governed edge e carries an unknown
// abar_e in Z^2; equations are sum(c * abar) = rhs, holding modulo Lambda.

struct AbarEquation {
  std::vector<std::pair<int, int>> terms;  // (edge index, coefficient)
  IntVec rhs;
  std::string origin;
};

struct LambdaConstraint {
  IntVec v;
  std::string origin;
};

struct AbarSystem {
  std::vector<int> unknowns;  // edge indices
  std::vector<AbarEquation> equations;
  std::vector<LambdaConstraint> lambda_constraints;
};

struct EmittedConstraints {
  AbarSystem generic, printed;
};

namespace detail {

inline IntVec diag2(long long t) { return {Int(t), Int(t)}; }

inline std::string at(int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

inline AbarSystem system_skeleton(const DegenerationDiagram& D) {
  AbarSystem S;
  for (int c = 0; c < D.copies(); ++c)
    for (int e : D.interior_edges(c)) S.unknowns.push_back(e);
  return S;
}

inline void normalize(const DegenerationDiagram& D, AbarSystem& S) {
  for (int c = 0; c < D.copies(); ++c)
    S.equations.push_back({{{D.edge(EdgeKind::vertical, 1, 1, c), 1}}, {0, 1}, "normalization v_{1,1}"});
}

// Sign of edge e at a 3-point whose other edge is f: + when the shared
// triangle comes after the other triangle bounded by e.
inline int three_point_sign(const DegenerationDiagram& D, int e, int f) {
  const auto& s = D.edges[e].sheets;
  const auto& t = D.edges[f].sheets;
  int shared = (s[0] == t[0] || s[0] == t[1]) ? s[0] : s[1];
  int other = shared == s[0] ? s[1] : s[0];
  return shared > other ? 1 : -1;
}

}  // namespace detail

// Generic rules: vertex type plus triangle order.
inline AbarSystem emit_generic(const DegenerationDiagram& D) {
  AbarSystem S = detail::system_skeleton(D);
  const long long a = D.a, b = D.b;
  for (const auto& V : D.vertices)
    for (int c = 0; c < D.copies(); ++c) {
      const auto& es = V.edges[c];
      std::string where = std::string(vertex_type_name(V.type)) + " " + detail::at(V.x, V.y);
      auto pair_rule = [&](IntVec rhs) {
        if (es.size() != 2) throw std::logic_error("pair rule at vertex without two edges: " + where);
        int e = es[0], f = es[1];
        S.equations.push_back({{{e, detail::three_point_sign(D, e, f)}, {f, detail::three_point_sign(D, f, e)}}, rhs, where});
      };
      switch (V.type) {
        case VertexType::empty: break;
        case VertexType::two_point: S.equations.push_back({{{es[0], 1}}, {0, 0}, where}); break;
        case VertexType::three_point: pair_rule(detail::diag2(1)); break;
        case VertexType::top_special: pair_rule(detail::diag2(1 - b)); break;
        case VertexType::right_special: pair_rule(detail::diag2(1 - a)); break;
        case VertexType::corner_special:
          if (es.size() != 1) throw std::logic_error("corner vertex without a single edge");
          S.equations.push_back({{{es[0], 1}}, detail::diag2(a - b), where});
          break;
        case VertexType::six_point: {
          auto kind = [&](int k) { return D.edges[es[k]].kind; };
          if (kind(0) != EdgeKind::diagonal || kind(5) != EdgeKind::diagonal || kind(1) != EdgeKind::vertical ||
              kind(4) != EdgeKind::vertical || kind(2) != EdgeKind::horizontal || kind(3) != EdgeKind::horizontal)
            throw std::logic_error("6-point edges not in diagonal/vertical/horizontal order at " + where);
          S.equations.push_back({{{es[5], 1}, {es[0], -1}}, {0, 0}, where});
          S.equations.push_back({{{es[4], 1}, {es[1], -1}}, {0, 0}, where});
          S.equations.push_back({{{es[3], 1}, {es[2], -1}}, {0, 0}, where});
          S.equations.push_back({{{es[0], 1}, {es[1], -1}, {es[2], 1}}, {0, 0}, where});
          break;
        }
      }
    }
  detail::normalize(D, S);
  return S;
}

// Hardcoded relation lists, written directly in grid coordinates.
inline AbarSystem emit_printed(const DegenerationDiagram& D) {
  AbarSystem S = detail::system_skeleton(D);
  const int p = D.p, q = D.q;
  auto eq = [&](std::vector<std::tuple<EdgeKind, int, int, int>> t, IntVec rhs, std::string origin, int c) {
    AbarEquation E;
    for (auto [k, i, j, coef] : t) E.terms.push_back({D.edge(k, i, j, c), coef});
    E.rhs = std::move(rhs);
    E.origin = std::move(origin);
    S.equations.push_back(std::move(E));
  };
  const auto d = EdgeKind::diagonal, v = EdgeKind::vertical, h = EdgeKind::horizontal;
  auto six = [&](int i, int j, int c) {
    std::string o = "6-point " + detail::at(i, j);
    eq({{d, i + 1, j + 1, 1}, {d, i, j, -1}}, {0, 0}, o, c);
    eq({{v, i, j + 1, 1}, {v, i, j, -1}}, {0, 0}, o, c);
    eq({{h, i + 1, j, 1}, {h, i, j, -1}}, {0, 0}, o, c);
    eq({{d, i, j, 1}, {v, i, j, -1}, {h, i, j, 1}}, {0, 0}, o, c);
  };

  if (D.tmpl == Template::f1) {
    for (int i = 1; i <= p - 1; ++i) eq({{v, i, 1, 1}, {d, i + 1, 1, -1}}, detail::diag2(1), "bottom", 0);
    for (int i = 1; i < q; ++i) eq({{v, i, i, 1}, {h, i + 1, i, -1}}, detail::diag2(1), "staircase", 0);
    for (int j = 1; j <= q - 1; ++j)
      for (int i = j + 1; i <= p - 1; ++i) six(i, j, 0);
    for (int j = 1; j <= q - 1; ++j) eq({{d, p, j, -1}, {h, p, j, -1}}, detail::diag2(1), "right", 0);
    eq({{v, q, q, 1}}, {0, 0}, "2-point (q,q)", 0);
    for (int i = q + 1; i <= p - 1; ++i) eq({{d, i, q, 1}, {v, i, q, -1}}, detail::diag2(1), "top", 0);
    eq({{d, p, q, 1}}, {0, 0}, "2-point (p,q)", 0);
  } else {
    for (int c = 0; c < D.copies(); ++c) {
      eq({{d, 1, 1, 1}}, {0, 0}, "2-point (0,0)", c);
      for (int i = 1; i <= p - 1; ++i) eq({{v, i, 1, 1}, {d, i + 1, 1, -1}}, detail::diag2(1), "bottom", c);
      for (int j = 1; j <= q - 1; ++j) eq({{h, 1, j, 1}, {d, 1, j + 1, 1}}, detail::diag2(1), "left", c);
      for (int i = 1; i <= p - 1; ++i)
        for (int j = 1; j <= q - 1; ++j) six(i, j, c);
      if (D.tmpl == Template::cp1xcp1) {
        for (int j = 1; j <= q - 1; ++j) eq({{d, p, j, -1}, {h, p, j, -1}}, detail::diag2(1), "right", c);
        for (int i = 1; i <= p - 1; ++i) eq({{d, i, q, 1}, {v, i, q, -1}}, detail::diag2(1), "top", c);
        eq({{d, p, q, 1}}, {0, 0}, "2-point (p,q)", c);
      }
    }
    if (D.tmpl == Template::doublecover) {
      const long long a = D.a, b = D.b;
      S.lambda_constraints.push_back({{Int(a - b + p - q), Int(a - b)}, "corner"});
      S.lambda_constraints.push_back({{Int(q + b - 2), Int(b - 2)}, "top"});
      S.lambda_constraints.push_back({{Int(p + a - 2), Int(a - 2)}, "right"});
    }
  }
  detail::normalize(D, S);
  return S;
}

inline EmittedConstraints emit_constraints(const DegenerationDiagram& D) { return {emit_generic(D), emit_printed(D)}; }

// Raised when a system has no solution modulo any subgroup of Z^2 of the
// allowed form.
struct ConstraintError : std::runtime_error {
  std::string kind;
  std::vector<std::string> details;
  ConstraintError(std::string k, std::string msg, std::vector<std::string> d = {})
      : std::runtime_error(msg), kind(std::move(k)), details(std::move(d)) {}
};

struct LambdaSolution {
  std::vector<IntVec> generators;  // residual contradictions plus explicit constraints
  IntMatrix hnf{0, 2};
  std::vector<IntVec> values;  // per unknown, reduced modulo Lambda
};

inline LambdaSolution solve_system(const AbarSystem& S) {
  const std::size_t E = S.unknowns.size(), m = S.equations.size();
  std::map<int, std::size_t> col;
  for (std::size_t k = 0; k < E; ++k) col[S.unknowns[k]] = k;
  IntMatrix M(m, E);
  IntMatrix R(m, 2);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& eq = S.equations[r];
    if (eq.rhs.size() != 2) throw ConstraintError("malformed", "equation right-hand side is not in Z^2", {eq.origin});
    for (auto [e, c] : eq.terms) {
      auto it = col.find(e);
      if (it == col.end()) throw ConstraintError("malformed", "equation references an ungoverned edge", {eq.origin});
      M(r, it->second) += c;
    }
    R(r, 0) = eq.rhs[0];
    R(r, 1) = eq.rhs[1];
  }
  SmithForm s = smith_normal_form(M);
  if (s.rank < E)
    throw ConstraintError("underdetermined", "constraint system leaves " + std::to_string(E - s.rank) + " unknowns free");
  IntMatrix c = s.u * R;
  LambdaSolution out;
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < s.rank; ++k)
    if (s.d(k, k) != 1) bad.push_back("invariant factor " + s.d(k, k).str());
  if (!bad.empty())
    throw ConstraintError("inconsistent", "constraint matrix has torsion; the system does not reduce to Lambda-membership", bad);
  for (std::size_t k = s.rank; k < m; ++k) {
    IntVec r = c.row(k);
    if (r[0] != 0 || r[1] != 0) out.generators.push_back(r);
  }
  for (const auto& L : S.lambda_constraints) {
    if (L.v.size() != 2) throw ConstraintError("malformed", "Lambda constraint is not in Z^2", {L.origin});
    out.generators.push_back(L.v);
  }
  out.hnf = lattice_hnf(out.generators, 2);
  IntMatrix y(E, 2);
  for (std::size_t k = 0; k < E; ++k) { y(k, 0) = c(k, 0); y(k, 1) = c(k, 1); }
  IntMatrix x = s.v * y;
  for (std::size_t k = 0; k < E; ++k) out.values.push_back(reduce_mod_lattice(x.row(k), out.hnf));
  return out;
}

// Commutator subgroup C / (C n Ker), C = {1,eta} x {1,eta}.
struct CommutatorVerdict {
  bool eta_first_in_kernel = false;   // (eta,1)
  bool eta_second_in_kernel = false;  // (1,eta)

  int order() const { return (eta_first_in_kernel ? 1 : 2) * (eta_second_in_kernel ? 1 : 2); }
  std::string name() const {
    if (eta_first_in_kernel && eta_second_in_kernel) return "trivial";
    if (eta_first_in_kernel) return "Z_2 via (1,eta)";
    if (eta_second_in_kernel) return "Z_2 via (eta,1)";
    return "Z_2 x Z_2";
  }
  bool operator==(const CommutatorVerdict& o) const {
    return eta_first_in_kernel == o.eta_first_in_kernel && eta_second_in_kernel == o.eta_second_in_kernel;
  }
};

// Parity rule on Lambda generators in kernel form
// (kappa, lambda) -> (u1^kappa eta^(kappa(kappa-1)/2), u1^lambda eta^(lambda(lambda-1)/2)).
inline CommutatorVerdict commutator_subgroup(const std::vector<IntVec>& lambda) {
  CommutatorVerdict v;
  for (const auto& g : lambda) {
    if (g[0] % 2 != 0) v.eta_first_in_kernel = true;
    if (g[1] % 2 != 0) v.eta_second_in_kernel = true;
  }
  return v;
}

inline std::string kernel_form(const IntVec& g) {
  auto one = [](const Int& k) {
    Int e = floor_mod(k * (k - 1) / 2, Int(2));
    return "u1^" + k.str() + (e != 0 ? " eta" : "");
  };
  return "(" + one(g[0]) + ", " + one(g[1]) + ")";
}

// Recomputes the verdict from explicit commutators in B~_4: the kernel
// element built from (kappa, lambda) commutes with (u2,1) and (1,u2) up to
// (eta^kappa, 1) and (1, eta^lambda).
inline CommutatorVerdict commutator_witness(const std::vector<IntVec>& lambda) {
  TBraidGroup G(4);
  auto kform = [&](const Int& k) {
    long long kk = to_ll(k);
    return G.mul(G.pow(G.u(1), kk), G.pow(G.eta(), ((kk * (kk - 1) / 2) % 2 + 2) % 2));
  };
  const BTildeElem eta = G.embed(G.eta()), u2 = G.embed(G.u(2));
  CommutatorVerdict v;
  for (const auto& g : lambda) {
    BTilde2Elem k = G.make_pair(G.embed(kform(g[0])), G.embed(kform(g[1])));
    if (G.commutator(k.x, u2) == eta) v.eta_first_in_kernel = true;
    if (G.commutator(k.y, u2) == eta) v.eta_second_in_kernel = true;
  }
  return v;
}

// Twisting integers: one integer per interior edge with, across every
// 6-point, l6 = l1 - 1, l5 = l2 + 1, l4 = l3. Returns a labelling if one exists.
inline std::optional<std::vector<Int>> twisting_integers(const DegenerationDiagram& D) {
  std::vector<int> unknowns;
  for (int c = 0; c < D.copies(); ++c)
    for (int e : D.interior_edges(c)) unknowns.push_back(e);
  std::map<int, std::size_t> col;
  for (std::size_t k = 0; k < unknowns.size(); ++k) col[unknowns[k]] = k;
  std::vector<IntVec> rows;
  IntVec rhs;
  for (const auto& V : D.vertices) {
    if (V.type != VertexType::six_point) continue;
    for (int c = 0; c < D.copies(); ++c) {
      const auto& es = V.edges[c];
      for (auto [hi, lo, step] : {std::tuple{5, 0, -1}, std::tuple{4, 1, 1}, std::tuple{3, 2, 0}}) {
        IntVec r(unknowns.size());
        r[col[es[hi]]] = 1;
        r[col[es[lo]]] = -1;
        rows.push_back(r);
        rhs.push_back(step);
      }
    }
  }
  if (rows.empty()) return std::vector<Int>(unknowns.size());
  return solve_integer_system(IntMatrix::from_rows(rows, unknowns.size()), rhs);
}

struct EdgeValue {
  std::string edge;
  EdgeKind kind = EdgeKind::diagonal;
  int i = 0, j = 0, copy = 0;
  IntVec value;
};

struct LambdaReport {
  Template tmpl = Template::cp1xcp1;
  std::map<std::string, int> params;
  int n = 0;
  std::vector<IntVec> lambda;  // HNF basis
  std::vector<std::string> kernel_forms;
  std::vector<EdgeValue> assignment;
  InvariantFactors ab_factor;  // of Z^2 / Lambda
  long long multiplicity = 0;  // n - 1
  CommutatorVerdict commutator;
  bool witness_agrees = true;
  bool property_star = true;
  bool generic_printed_agree = true;
  std::vector<std::string> discrepancies;
  std::optional<bool> corner_redundant;
  bool twisting_integers_exist = false;
  std::vector<std::string> review_flags;

  std::string ab_string() const {
    return "(" + ab_factor.to_string() + ")^" + std::to_string(multiplicity);
  }
};

inline std::vector<IntVec> hnf_rows(const IntMatrix& h) {
  std::vector<IntVec> out;
  for (std::size_t r = 0; r < h.rows(); ++r) out.push_back(h.row(r));
  return out;
}

inline LambdaReport solve_lambda(const DegenerationDiagram& D) {
  EmittedConstraints C = emit_constraints(D);
  LambdaSolution g = solve_system(C.generic);
  LambdaReport R;
  R.tmpl = D.tmpl;
  R.params = D.params();
  R.n = D.n;
  R.lambda = hnf_rows(g.hnf);
  for (const auto& v : R.lambda) R.kernel_forms.push_back(kernel_form(v));
  for (std::size_t k = 0; k < C.generic.unknowns.size(); ++k) {
    const auto& E = D.edges[C.generic.unknowns[k]];
    R.assignment.push_back({E.name(), E.kind, E.i, E.j, E.copy, g.values[k]});
  }
  R.ab_factor = quotient_invariants(2, R.lambda);
  R.multiplicity = D.n - 1;

  try {
    LambdaSolution pr = solve_system(C.printed);
    if (!(pr.hnf == g.hnf)) R.discrepancies.push_back("generic and printed constraint lists give different Lambda");
    else if (pr.values != g.values) R.discrepancies.push_back("generic and printed constraint lists give different assignments");
  } catch (const ConstraintError& e) {
    R.discrepancies.push_back(std::string("printed constraint list failed: ") + e.what());
  }
  R.generic_printed_agree = R.discrepancies.empty();

  R.commutator = commutator_subgroup(R.lambda);
  R.witness_agrees = commutator_witness(R.lambda) == R.commutator;
  if (D.tmpl == Template::doublecover) {
    IntMatrix two = lattice_hnf({{Int(D.p + D.a - 2), Int(D.a - 2)}, {Int(D.q + D.b - 2), Int(D.b - 2)}}, 2);
    R.corner_redundant = lattice_contains(two, {Int(D.a - D.b + D.p - D.q), Int(D.a - D.b)});
  }
  R.twisting_integers_exist = twisting_integers(D).has_value();
  for (const auto& v : R.lambda)
    if ((v[0] - v[1]) % 2 != 0)
      R.review_flags.push_back("Lambda generator " + vec_to_string(v) + " has kappa and lambda of different parity");
  return R;
}

}  // namespace stab
