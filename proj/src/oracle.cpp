#include "feuilletage/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace feuilletage::oracle {

std::uint64_t catalan(std::int64_t n) {
  std::uint64_t c = 1;
  for (std::int64_t i = 0; i < n; ++i) c = c * 2 * static_cast<std::uint64_t>(2 * i + 1) / static_cast<std::uint64_t>(i + 2);
  return c;
}

namespace {

void extend_dyck(std::int64_t n, std::vector<std::int32_t>& prefix, std::int64_t ups, std::vector<ContourPath>& out) {
  const auto len = static_cast<std::int64_t>(prefix.size()) - 1;
  if (len == 2 * n) {
    out.push_back(ContourPath{prefix});
    return;
  }
  const auto h = prefix.back();
  if (ups < n) {
    prefix.push_back(h + 1);
    extend_dyck(n, prefix, ups + 1, out);
    prefix.pop_back();
  }
  if (h > 0) {
    prefix.push_back(h - 1);
    extend_dyck(n, prefix, ups, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<std::int64_t>> adjacency(const ExplicitGraph& g) {
  std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(g.vertices));
  for (auto [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  return adj;
}

std::vector<std::int32_t> single_source(const std::vector<std::vector<std::int64_t>>& adj, std::int64_t s) {
  std::vector<std::int32_t> d(adj.size(), kUnreachable);
  std::vector<std::int64_t> frontier{s};
  d[static_cast<std::size_t>(s)] = 0;
  for (std::int32_t level = 1; !frontier.empty(); ++level) {
    std::vector<std::int64_t> next;
    for (auto u : frontier)
      for (auto w : adj[static_cast<std::size_t>(u)])
        if (d[static_cast<std::size_t>(w)] == kUnreachable) {
          d[static_cast<std::size_t>(w)] = level;
          next.push_back(w);
        }
    frontier = std::move(next);
  }
  return d;
}

struct UnionFind {
  std::vector<std::int64_t> parent;
  explicit UnionFind(std::int64_t n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  std::int64_t find(std::int64_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  void unite(std::int64_t a, std::int64_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

std::string join(std::span<const std::int32_t> v) {
  std::ostringstream s;
  s << '(';
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << ')';
  return s.str();
}

std::string describe(const FoldingTrace& trace) {
  std::ostringstream s;
  for (std::size_t j = 0; j < trace.levels.size(); ++j) {
    s << "\n  level " << j + 1 << " contour=" << join(trace.levels[j].contour.values);
    if (!trace.levels[j].labels.values.empty()) s << " labels=" << join(trace.levels[j].labels.values);
  }
  return s.str();
}

}  // namespace

std::vector<ContourPath> enumerate_dyck(std::int64_t n) {
  if (n < 1 || n > kMaxEnumeratedN) throw std::invalid_argument("enumerate_dyck: n must be in [1, 12]");
  std::vector<ContourPath> out;
  std::vector<std::int32_t> prefix{0};
  extend_dyck(n, prefix, 0, out);
  return out;
}

DistanceMatrix all_pairs_distances(const ExplicitGraph& g) {
  if (g.vertices < 1 || g.vertices > kMaxAllPairsVertices)
    throw std::invalid_argument("all_pairs_distances: vertex count out of range");
  const auto n = static_cast<std::size_t>(g.vertices);
  constexpr std::int32_t inf = 1 << 29;
  std::vector<std::int32_t> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (auto [u, v] : g.edges) {
    if (u == v) continue;
    d[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)] = 1;
    d[static_cast<std::size_t>(v) * n + static_cast<std::size_t>(u)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const auto dik = d[i * n + k];
      if (dik == inf) continue;
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], dik + d[k * n + j]);
    }
  DistanceMatrix m{g.vertices, std::move(d), true};
  for (auto& x : m.d)
    if (x == inf) {
      x = kUnreachable;
      m.connected = false;
    }
  return m;
}

ExplicitTree tree_from_contour(const ContourPath& contour) {
  if (auto bad = validate(contour)) throw std::invalid_argument("tree_from_contour: " + bad->invariant);
  ExplicitTree t;
  t.parent.push_back(-1);
  t.children.emplace_back();
  std::int64_t current = 0;
  const auto& c = contour.values;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    t.corner_owner.push_back(current);
    if (c[k + 1] > c[k]) {
      const auto v = static_cast<std::int64_t>(t.parent.size());
      t.parent.push_back(current);
      t.children.emplace_back();
      t.children[static_cast<std::size_t>(current)].push_back(v);
      current = v;
    } else {
      current = t.parent[static_cast<std::size_t>(current)];
    }
  }
  return t;
}

ExplicitTree tree_from_depths(std::span<const std::int32_t> depths) {
  ExplicitTree t;
  t.parent.assign(depths.size(), -1);
  t.children.resize(depths.size());
  for (std::size_t v = 1; v < depths.size(); ++v) {
    std::int64_t u = static_cast<std::int64_t>(v) - 1;
    while (u >= 0 && depths[static_cast<std::size_t>(u)] != depths[v] - 1) --u;
    if (u < 0) throw std::invalid_argument("tree_from_depths: vertex without parent");
    t.parent[v] = u;
    t.children[static_cast<std::size_t>(u)].push_back(static_cast<std::int64_t>(v));
  }
  return t;
}

ContourPath contour_of(const ExplicitTree& tree) {
  ContourPath out;
  out.values.push_back(0);
  // (vertex, next child index)
  std::vector<std::pair<std::int64_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& kids = tree.children[static_cast<std::size_t>(v)];
    if (next < kids.size()) {
      const auto child = kids[next++];
      stack.emplace_back(child, 0);
      out.values.push_back(static_cast<std::int32_t>(stack.size() - 1));
    } else {
      stack.pop_back();
      if (!stack.empty()) out.values.push_back(static_cast<std::int32_t>(stack.size() - 1));
    }
  }
  return out;
}

ExplicitFeuilletage explicit_feuilletage(const ContourPath& first_tree, std::span<const LabelProcess> labels) {
  ExplicitFeuilletage ex;
  ex.depth = static_cast<int>(labels.size()) + 1;
  ex.n = first_tree.edges();
  const auto n = ex.n;

  std::vector<ExplicitTree> trees{tree_from_contour(first_tree)};
  ex.trees.push_back(first_tree);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const auto& t = trees.back();
    const auto& l = labels[j].values;
    const auto corners = static_cast<std::int64_t>(t.corner_owner.size());
    if (static_cast<std::int64_t>(l.size()) != corners)
      throw std::logic_error("labels of level " + std::to_string(j + 1) + " do not match the tree");
    // labels must be a function of the vertex and move by at most 1 along edges
    std::vector<std::int32_t> vertex_label(t.parent.size(), 0);
    std::vector<bool> seen(t.parent.size(), false);
    for (std::int64_t k = 0; k < corners; ++k) {
      const auto v = static_cast<std::size_t>(t.corner_owner[static_cast<std::size_t>(k)]);
      if (seen[v] && vertex_label[v] != l[static_cast<std::size_t>(k)])
        throw std::logic_error("level " + std::to_string(j + 1) + ": corners of one vertex disagree");
      seen[v] = true;
      vertex_label[v] = l[static_cast<std::size_t>(k)];
    }
    if (vertex_label[0] != 0) throw std::logic_error("root label is not 0");
    for (std::size_t v = 1; v < t.parent.size(); ++v)
      if (std::abs(vertex_label[v] - vertex_label[static_cast<std::size_t>(t.parent[v])]) > 1)
        throw std::logic_error("label increment outside {-1,0,1}");

    // first rotation that keeps the walk at or above its starting value
    std::int64_t a = -1;
    for (std::int64_t r = 0; r < corners && a < 0; ++r) {
      bool ok = true;
      for (std::int64_t k = 0; k < corners && ok; ++k)
        ok = l[static_cast<std::size_t>((r + k) % corners)] >= l[static_cast<std::size_t>(r)];
      if (ok) a = r;
    }
    ex.offsets.push_back(a);
    std::vector<std::int32_t> depths(static_cast<std::size_t>(corners + 1), 0);
    for (std::int64_t i = 1; i <= corners; ++i)
      depths[static_cast<std::size_t>(i)] =
          l[static_cast<std::size_t>((a + i - 1) % corners)] - l[static_cast<std::size_t>(a)] + 1;
    auto contour = contour_of(tree_from_depths(depths));
    trees.push_back(tree_from_contour(contour));
    ex.trees.push_back(std::move(contour));
  }

  std::vector<std::int64_t> base{0};
  for (const auto& t : trees) base.push_back(base.back() + static_cast<std::int64_t>(t.parent.size()));
  UnionFind uf(base.back());
  for (std::size_t j = 0; j + 1 < trees.size(); ++j) {
    const auto& prev = trees[j];
    const auto corners = static_cast<std::int64_t>(prev.corner_owner.size());
    for (std::int64_t i = 1; i <= corners; ++i) {
      const auto corner = (ex.offsets[j] + i - 1) % corners;
      uf.unite(base[j + 1] + i, base[j] + prev.corner_owner[static_cast<std::size_t>(corner)]);
    }
  }

  std::vector<ClassId> canon(static_cast<std::size_t>(base.back()), -1);
  auto claim = [&](std::int64_t vertex, ClassId id) {
    auto& slot = canon[static_cast<std::size_t>(uf.find(vertex))];
    if (slot != -1)
      throw std::logic_error("classes " + std::to_string(slot) + " and " + std::to_string(id) + " were merged");
    slot = id;
  };
  for (std::int64_t v = 0; v <= n; ++v) claim(v, static_cast<ClassId>(v));
  for (std::size_t j = 1; j < trees.size(); ++j) claim(base[j], static_cast<ClassId>(n + static_cast<std::int64_t>(j)));

  const auto& last = trees.back();
  const auto last_base = base[trees.size() - 1];
  for (std::size_t v = 0; v < last.parent.size(); ++v) {
    const auto id = canon[static_cast<std::size_t>(uf.find(last_base + static_cast<std::int64_t>(v)))];
    if (id < 0) throw std::logic_error("vertex " + std::to_string(v) + " of the last tree has no class");
    ex.final_classes.push_back(id);
  }
  auto sorted = ex.final_classes;
  std::sort(sorted.begin(), sorted.end());
  ex.class_count = std::unique(sorted.begin(), sorted.end()) - sorted.begin();

  ex.graph.vertices = n + ex.depth;
  ex.last_tree.vertices = static_cast<std::int64_t>(last.parent.size());
  for (std::size_t v = 1; v < last.parent.size(); ++v) {
    const auto p = last.parent[v];
    ex.graph.edges.emplace_back(ex.final_classes[v], ex.final_classes[static_cast<std::size_t>(p)]);
    ex.last_tree.edges.emplace_back(static_cast<std::int64_t>(v), p);
  }
  return ex;
}

CheckReport check_realization(const FoldingTrace& trace, const FeuilletageRealization& r) {
  CheckReport rep{"realization D=" + std::to_string(r.depth) + " n=" + std::to_string(r.n), true, {}};
  auto fail = [&](const std::string& why) {
    rep.passed = false;
    rep.detail = why + describe(trace);
    return rep;
  };
  if (static_cast<int>(trace.levels.size()) != r.depth) return fail("trace has wrong number of levels");

  std::vector<LabelProcess> labels;
  for (std::size_t j = 0; j + 1 < trace.levels.size(); ++j) labels.push_back(trace.levels[j].labels);
  ExplicitFeuilletage ex;
  try {
    ex = explicit_feuilletage(trace.levels.front().contour, labels);
  } catch (const std::exception& e) {
    return fail(std::string("explicit rebuild failed: ") + e.what());
  }

  for (std::size_t j = 0; j < ex.trees.size(); ++j)
    if (ex.trees[j] != trace.levels[j].contour) return fail("tree of level " + std::to_string(j + 1) + " differs");
  if (ex.offsets != r.offsets) return fail("conjugation offsets differ");
  if (contour_of(tree_from_depths(r.height.values)) != ex.trees.back()) return fail("final height process differs");
  if (ex.final_classes != r.classes.classes) return fail("class map differs");
  const auto expected = r.n + r.depth;
  if (ex.class_count != expected || class_count(r) != expected)
    return fail("class count " + std::to_string(class_count(r)) + " (explicit " + std::to_string(ex.class_count) +
                ") != n + D = " + std::to_string(expected));

  const auto fw = all_pairs_distances(ex.graph);
  if (!fw.connected) return fail("quotient graph is disconnected");
  const auto graph = build_quotient_graph(r);
  for (std::int64_t root = 0; root < fw.vertices; ++root) {
    const auto p = bfs_distances(graph, static_cast<ClassId>(root));
    std::int32_t max_d = 0;
    for (std::int64_t v = 0; v < fw.vertices; ++v) {
      if (p.dist[static_cast<std::size_t>(v)] != fw.at(root, v))
        return fail("BFS from " + std::to_string(root) + " to " + std::to_string(v) + " gives " +
                    std::to_string(p.dist[static_cast<std::size_t>(v)]) + ", Floyd-Warshall " +
                    std::to_string(fw.at(root, v)));
      max_d = std::max(max_d, fw.at(root, v));
    }
    if (p.max_distance != max_d) return fail("max distance mismatch from root " + std::to_string(root));
    for (auto [u, v] : ex.graph.edges)
      if (std::abs(fw.at(root, u) - fw.at(root, v)) > 1) return fail("edge-Lipschitz violated");
  }

  // identification only shortens paths
  const auto tree_adj = adjacency(ex.last_tree);
  for (std::int64_t u = 0; u < ex.last_tree.vertices; ++u) {
    const auto dt = single_source(tree_adj, u);
    for (std::int64_t v = 0; v < ex.last_tree.vertices; ++v)
      if (fw.at(ex.final_classes[static_cast<std::size_t>(u)], ex.final_classes[static_cast<std::size_t>(v)]) >
          dt[static_cast<std::size_t>(v)])
        return fail("quotient distance exceeds tree distance for vertices " + std::to_string(u) + ", " +
                    std::to_string(v));
  }
  return rep;
}

CheckReport cvs_identity_check(const FeuilletageRealization& r, std::span<const std::int32_t> first_level_labels) {
  CheckReport rep{"cvs identity n=" + std::to_string(r.n), true, {}};
  if (r.depth != 2) throw std::invalid_argument("cvs_identity_check: needs D = 2");
  if (static_cast<std::int64_t>(first_level_labels.size()) != r.n + 1)
    throw std::invalid_argument("cvs_identity_check: need one label per level-1 vertex");
  const auto pointed = static_cast<ClassId>(r.n + 1);
  const auto p = distances_from(r, pointed);
  const auto min_label = *std::min_element(first_level_labels.begin(), first_level_labels.end());
  for (std::int64_t v = 0; v <= r.n; ++v) {
    const auto want = first_level_labels[static_cast<std::size_t>(v)] - min_label + 1;
    if (p.dist[static_cast<std::size_t>(v)] != want) {
      rep.passed = false;
      rep.detail = "vertex " + std::to_string(v) + ": distance " + std::to_string(p.dist[static_cast<std::size_t>(v)]) +
                   " != label - min + 1 = " + std::to_string(want) + "; labels=" + join(first_level_labels) +
                   " offsets a1=" + std::to_string(r.offsets.at(0));
      return rep;
    }
  }
  return rep;
}

namespace {

struct Enumerator {
  int depth;
  std::int64_t n;
  ContourPath first;
  std::vector<LabelProcess> chosen;
  ExhaustiveStats stats;

  void record(const CheckReport& c) {
    if (!c.passed) {
      if (stats.failures++ == 0) stats.first_failure = c.name + ": " + c.detail;
    }
  }

  void finish() {
    FoldingTrace trace;
    auto r = fold_trees(depth, first, [&](int level, const ContourPath&) { return chosen[static_cast<std::size_t>(level - 1)]; },
                        &trace);
    ++stats.cases;
    const auto count = class_count(r);
    if (stats.cases == 1) stats.min_class_count = stats.max_class_count = count;
    stats.min_class_count = std::min(stats.min_class_count, count);
    stats.max_class_count = std::max(stats.max_class_count, count);
    record(check_realization(trace, r));
    if (depth == 2) record(cvs_identity_check(r, vertex_labels(trace.levels[0].contour, trace.levels[0].labels)));
  }

  // choose labels for level `level` (1-based) on `contour`, then recurse
  void descend(int level, const ContourPath& contour) {
    if (level == depth) {
      finish();
      return;
    }
    const auto tree = tree_from_contour(contour);
    const auto edges = contour.edges();
    std::vector<std::int8_t> inc(static_cast<std::size_t>(edges), -1);
    while (true) {
      std::vector<std::int32_t> vertex_label(tree.parent.size(), 0);
      for (std::size_t v = 1; v < tree.parent.size(); ++v)
        vertex_label[v] = vertex_label[static_cast<std::size_t>(tree.parent[v])] + inc[v - 1];
      LabelProcess l;
      for (auto owner : tree.corner_owner) l.values.push_back(vertex_label[static_cast<std::size_t>(owner)]);

      // next tree, built the oracle's way
      const auto corners = l.corners();
      const auto a = std::min_element(l.values.begin(), l.values.end()) - l.values.begin();
      std::vector<std::int32_t> depths(static_cast<std::size_t>(corners + 1), 0);
      for (std::int64_t i = 1; i <= corners; ++i)
        depths[static_cast<std::size_t>(i)] = l.values[static_cast<std::size_t>((a + i - 1) % corners)] -
                                               l.values[static_cast<std::size_t>(a)] + 1;
      chosen.push_back(std::move(l));
      descend(level + 1, contour_of(tree_from_depths(depths)));
      chosen.pop_back();

      std::size_t i = 0;
      while (i < inc.size() && inc[i] == 1) inc[i++] = -1;
      if (i == inc.size()) break;
      ++inc[i];
    }
  }
};

}  // namespace

ExhaustiveStats exhaustive_small_feuilletage(int depth, std::int64_t n) {
  if (depth < 1 || n < 1) throw std::invalid_argument("exhaustive_small_feuilletage: need D >= 1, n >= 1");
  const double labelled_edges = static_cast<double>(n) * (std::pow(2.0, depth - 1) - 1.0);
  const double cases = static_cast<double>(catalan(std::min<std::int64_t>(n, kMaxEnumeratedN))) * std::pow(3.0, labelled_edges);
  if (n > kMaxEnumeratedN || cases > static_cast<double>(kExhaustiveBudget))
    throw std::invalid_argument("exhaustive_small_feuilletage: case budget exceeded");
  Enumerator e{depth, n, {}, {}, {}};
  for (const auto& c : enumerate_dyck(n)) {
    e.first = c;
    e.descend(1, c);
  }
  return e.stats;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.passed; });
}

SuiteResult run_suite(const SuiteOptions& opt, std::ostream* log) {
  if (opt.max_n < 1 || opt.seeds < 1 || opt.max_depth < 1) throw std::invalid_argument("run_suite: bad options");
  SuiteResult result;
  auto add = [&](CheckReport c) {
    if (log) {
      *log << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
      if (!c.passed) *log << "  counterexample: " << c.detail << '\n';
    }
    result.checks.push_back(std::move(c));
  };

  {
    CheckReport c{"dyck enumeration matches Catalan numbers (n <= 8)", true, {}};
    for (std::int64_t n = 1; n <= 8 && c.passed; ++n) {
      auto paths = enumerate_dyck(n);
      std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) { return a.values < b.values; });
      const bool distinct = std::adjacent_find(paths.begin(), paths.end()) == paths.end();
      const bool valid = std::all_of(paths.begin(), paths.end(), [](const auto& p) { return !validate(p); });
      if (paths.size() != catalan(n) || !distinct || !valid) {
        c.passed = false;
        c.detail = "n=" + std::to_string(n) + " gives " + std::to_string(paths.size()) + " paths";
      }
    }
    add(c);
  }

  for (int depth = 2; depth <= opt.max_depth; ++depth) {
    for (std::int64_t n = 1; n <= opt.max_n; ++n) {
      const double cases = static_cast<double>(catalan(std::min<std::int64_t>(n, kMaxEnumeratedN))) *
                           std::pow(3.0, static_cast<double>(n) * (std::pow(2.0, depth - 1) - 1.0));
      if (n > kMaxEnumeratedN || cases > 2e5) break;
      const auto s = exhaustive_small_feuilletage(depth, n);
      CheckReport c{"exhaustive D=" + std::to_string(depth) + " n=" + std::to_string(n) + " (" +
                        std::to_string(s.cases) + " cases)",
                    s.failures == 0 && s.min_class_count == n + depth && s.max_class_count == n + depth, s.first_failure};
      add(c);
    }
  }

  for (int depth = 1; depth <= opt.max_depth; ++depth) {
    CheckReport c{"seeded D=" + std::to_string(depth) + " n<=" + std::to_string(opt.max_n) + " x " +
                      std::to_string(opt.seeds) + " seeds: BFS == Floyd-Warshall, n+D classes" +
                      (depth == 2 ? ", CVS identity" : ""),
                  true, {}};
    std::uint64_t instance = 0;
    for (std::int64_t n = 1; n <= opt.max_n && c.passed; ++n) {
      for (std::int64_t s = 0; s < opt.seeds && c.passed; ++s) {
        auto stream = derive_stream(MasterSeed{opt.seed}, instance++, "oracle-D" + std::to_string(depth));
        FoldingTrace trace;
        const auto r = build_feuilletage(depth, n, stream, &trace);
        auto check = check_realization(trace, r);
        if (check.passed && depth == 2)
          check = cvs_identity_check(r, vertex_labels(trace.levels[0].contour, trace.levels[0].labels));
        if (!check.passed) {
          c.passed = false;
          c.detail = check.name + ": " + check.detail;
        }
      }
    }
    add(c);
  }
  return result;
}

}  // namespace feuilletage::oracle
