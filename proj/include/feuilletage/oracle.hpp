#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "feuilletage/folding.hpp"
#include "feuilletage/metrics.hpp"

namespace feuilletage::oracle {

/// Undirected multigraph as an edge list.
struct ExplicitGraph {
  std::int64_t vertices = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;
};

inline constexpr std::int64_t kMaxEnumeratedN = 12;
inline constexpr std::int64_t kMaxAllPairsVertices = 4096;
inline constexpr std::int64_t kExhaustiveBudget = 10'000'000;
inline constexpr std::int32_t kUnreachable = -1;

std::uint64_t catalan(std::int64_t n);

/// All Dyck paths with n up-steps in lexicographic order (up before down).
std::vector<ContourPath> enumerate_dyck(std::int64_t n);

struct DistanceMatrix {
  std::int64_t vertices = 0;
  std::vector<std::int32_t> d;  // row-major, kUnreachable if disconnected
  bool connected = true;

  std::int32_t at(std::int64_t i, std::int64_t j) const { return d[static_cast<std::size_t>(i * vertices + j)]; }
};

/// Floyd-Warshall hop distances.
DistanceMatrix all_pairs_distances(const ExplicitGraph& g);

/// Rooted plane tree with explicit parent pointers.
struct ExplicitTree {
  std::vector<std::int64_t> parent;           // parent[0] = -1
  std::vector<std::vector<std::int64_t>> children;
  std::vector<std::int64_t> corner_owner;     // vertex at contour position k, k < 2m
};

ExplicitTree tree_from_contour(const ContourPath& contour);
/// Tree from preorder depths; parent of v is the nearest earlier vertex one level up.
ExplicitTree tree_from_depths(std::span<const std::int32_t> depths);
ContourPath contour_of(const ExplicitTree& tree);

/// Feuilletage rebuilt from scratch out of the first tree and the labels of
/// each folding level, with union-find over the vertices of all levels.
struct ExplicitFeuilletage {
  std::int64_t n = 0;
  int depth = 1;
  std::vector<ContourPath> trees;          // T^(1) .. T^(D)
  std::vector<std::int64_t> offsets;       // a_1 .. a_{D-1}
  std::vector<ClassId> final_classes;      // canonical class of each T^(D) vertex
  std::int64_t class_count = 0;
  ExplicitGraph graph;                     // quotient of T^(D)
  ExplicitGraph last_tree;                 // T^(D) itself
};

ExplicitFeuilletage explicit_feuilletage(const ContourPath& first_tree, std::span<const LabelProcess> labels);

struct CheckReport {
  std::string name;
  bool passed = true;
  std::string detail;  // counterexample when failed
};

/// Cross-checks a production build (with its trace) against the explicit
/// reconstruction: trees, offsets, class map, class count n + D, BFS vs
/// Floyd-Warshall from every class, edge-Lipschitz and shortcut properties.
CheckReport check_realization(const FoldingTrace& trace, const FeuilletageRealization& r);

/// D = 2 only: distance from the level-2 root class to level-1 vertex v
/// equals label(v) - min label + 1.
CheckReport cvs_identity_check(const FeuilletageRealization& r, std::span<const std::int32_t> first_level_labels);

struct ExhaustiveStats {
  std::int64_t cases = 0;
  std::int64_t failures = 0;
  std::int64_t min_class_count = 0;
  std::int64_t max_class_count = 0;
  std::string first_failure;
};

/// Every first tree and every labelling at every level. Throws
/// std::invalid_argument when Catalan(n) * 3^(total labelled edges) exceeds
/// kExhaustiveBudget.
ExhaustiveStats exhaustive_small_feuilletage(int depth, std::int64_t n);

struct SuiteOptions {
  std::int64_t max_n = 16;
  std::int64_t seeds = 20;
  int max_depth = 3;
  std::uint64_t seed = 2024;
};

struct SuiteResult {
  std::vector<CheckReport> checks;
  bool passed() const;
};

SuiteResult run_suite(const SuiteOptions& options, std::ostream* log = nullptr);

}  // namespace feuilletage::oracle
