#include "feuilletage/metrics.hpp"

#include <stdexcept>
#include <string>

namespace feuilletage {

std::string_view to_string(RootSamplingMode mode) {
  return mode == RootSamplingMode::corner_uniform ? "corner" : "class";
}

RootSamplingMode parse_root_mode(std::string_view text) {
  if (text == "corner" || text == "corner-uniform") return RootSamplingMode::corner_uniform;
  if (text == "class" || text == "class-uniform") return RootSamplingMode::class_uniform;
  throw std::invalid_argument("unknown root sampling mode '" + std::string(text) + "'");
}

QuotientGraph build_quotient_graph(const HeightProcess& tree, std::span<const ClassId> classes,
                                   std::int64_t class_ids) {
  const auto& h = tree.values;
  if (classes.size() != h.size()) throw std::invalid_argument("build_quotient_graph: class map size mismatch");

  QuotientGraph g;
  g.vertices = class_ids;
  g.offsets.assign(static_cast<std::size_t>(class_ids + 1), 0);

  // pass 1: degrees; parent of preorder vertex v is the last vertex one level up
  std::vector<std::int64_t> stack(1, 0);
  for (std::size_t v = 1; v < h.size(); ++v) {
    const auto depth = static_cast<std::size_t>(h[v]);
    if (stack.size() <= depth) stack.resize(depth + 1);
    stack[depth] = static_cast<std::int64_t>(v);
    const auto a = classes[v];
    const auto b = classes[static_cast<std::size_t>(stack[depth - 1])];
    if (a < 0 || a >= class_ids || b < 0 || b >= class_ids)
      throw std::logic_error("build_quotient_graph: class id out of range");
    ++g.offsets[static_cast<std::size_t>(a) + 1];
    ++g.offsets[static_cast<std::size_t>(b) + 1];
  }
  for (std::size_t i = 1; i < g.offsets.size(); ++i) g.offsets[i] += g.offsets[i - 1];

  // pass 2: fill
  g.neighbors.resize(static_cast<std::size_t>(g.offsets.back()));
  std::vector<std::int64_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (std::size_t v = 1; v < h.size(); ++v) {
    const auto depth = static_cast<std::size_t>(h[v]);
    stack[depth] = static_cast<std::int64_t>(v);
    const auto a = classes[v];
    const auto b = classes[static_cast<std::size_t>(stack[depth - 1])];
    g.neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(a)]++)] = b;
    g.neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(b)]++)] = a;
  }
  return g;
}

QuotientGraph build_quotient_graph(const FeuilletageRealization& r) {
  return build_quotient_graph(r.height, r.classes.classes, r.class_ids());
}

QuotientGraph build_tree_graph(const HeightProcess& tree) {
  std::vector<ClassId> identity(tree.values.size());
  for (std::size_t v = 0; v < identity.size(); ++v) identity[v] = static_cast<ClassId>(v);
  return build_quotient_graph(tree, identity, tree.vertices());
}

DistanceProfile bfs_distances(const QuotientGraph& graph, ClassId root) {
  if (root < 0 || root >= graph.vertices) throw std::invalid_argument("bfs_distances: root out of range");
  DistanceProfile p;
  p.root = root;
  p.dist.assign(static_cast<std::size_t>(graph.vertices), -1);
  std::vector<ClassId> queue(static_cast<std::size_t>(graph.vertices));
  std::size_t head = 0, tail = 0;
  queue[tail++] = root;
  p.dist[static_cast<std::size_t>(root)] = 0;
  while (head < tail) {
    const auto u = queue[head++];
    const auto du = p.dist[static_cast<std::size_t>(u)];
    const auto end = graph.offsets[static_cast<std::size_t>(u) + 1];
    for (auto i = graph.offsets[static_cast<std::size_t>(u)]; i < end; ++i) {
      const auto w = graph.neighbors[static_cast<std::size_t>(i)];
      if (p.dist[static_cast<std::size_t>(w)] < 0) {
        p.dist[static_cast<std::size_t>(w)] = du + 1;
        queue[tail++] = w;
      }
    }
  }
  if (tail != queue.size())
    throw std::logic_error("bfs_distances: " + std::to_string(queue.size() - tail) + " unreachable vertices");
  p.max_distance = p.dist[static_cast<std::size_t>(queue.back())];
  return p;
}

DistanceProfile distances_from(const FeuilletageRealization& r, ClassId root) {
  return bfs_distances(build_quotient_graph(r), root);
}

DistanceProfile tree_distances(const HeightProcess& tree, std::int64_t root) {
  return bfs_distances(build_tree_graph(tree), static_cast<ClassId>(root));
}

ClassId sample_root(const FeuilletageRealization& r, RngStream& stream, RootSamplingMode mode) {
  if (mode == RootSamplingMode::corner_uniform) {
    const auto k = uniform_int(stream, r.first_level_corners.size());
    return r.first_level_corners[static_cast<std::size_t>(k)];
  }
  return static_cast<ClassId>(uniform_int(stream, static_cast<std::uint64_t>(r.class_ids())));
}

ClassId sample_root(const QuotientGraph& graph, RngStream& stream, RootSamplingMode mode) {
  if (mode == RootSamplingMode::corner_uniform && graph.half_edges() > 0) {
    const auto i = uniform_int(stream, static_cast<std::uint64_t>(graph.half_edges()));
    return graph.neighbors[static_cast<std::size_t>(i)];
  }
  return static_cast<ClassId>(uniform_int(stream, static_cast<std::uint64_t>(graph.vertices)));
}

}  // namespace feuilletage
