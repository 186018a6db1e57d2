#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "feuilletage/folding.hpp"

namespace feuilletage {

enum class RootSamplingMode {
  corner_uniform,  // uniform corner of T^(1) (or of the tree, in tree mode)
  class_uniform,   // uniform vertex / class
};

std::string_view to_string(RootSamplingMode mode);
RootSamplingMode parse_root_mode(std::string_view text);

struct DistanceProfile {
  std::vector<std::int32_t> dist;
  ClassId root = 0;
  std::int32_t max_distance = 0;
};

/// Undirected multigraph in CSR form. Each tree edge appears once in the
/// adjacency of both endpoints, so a vertex occurs in `neighbors` exactly
/// `degree` times.
struct QuotientGraph {
  std::int64_t vertices = 0;
  std::vector<std::int64_t> offsets;
  std::vector<ClassId> neighbors;

  std::int64_t half_edges() const { return static_cast<std::int64_t>(neighbors.size()); }
};

/// Parent-child edges of the tree encoded by `tree`, mapped through `classes`.
QuotientGraph build_quotient_graph(const HeightProcess& tree, std::span<const ClassId> classes, std::int64_t class_ids);
QuotientGraph build_quotient_graph(const FeuilletageRealization& r);
/// The bare tree, vertex ids are preorder ids.
QuotientGraph build_tree_graph(const HeightProcess& tree);

/// Hop distances by breadth-first search; throws std::logic_error if some
/// vertex is unreachable.
DistanceProfile bfs_distances(const QuotientGraph& graph, ClassId root);

DistanceProfile distances_from(const FeuilletageRealization& r, ClassId root);
DistanceProfile tree_distances(const HeightProcess& tree, std::int64_t root);

ClassId sample_root(const FeuilletageRealization& r, RngStream& stream, RootSamplingMode mode);
/// Root of a bare tree (or any graph): corner-uniform picks the endpoint of a
/// uniform half-edge, which weights vertices by degree = number of corners.
ClassId sample_root(const QuotientGraph& graph, RngStream& stream, RootSamplingMode mode);

inline std::int32_t diameter_proxy(const DistanceProfile& profile) { return profile.max_distance; }

}  // namespace feuilletage
