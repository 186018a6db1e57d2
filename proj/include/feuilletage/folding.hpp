#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "feuilletage/encodings.hpp"
#include "feuilletage/labeling.hpp"
#include "feuilletage/random.hpp"

namespace feuilletage {

using ClassId = std::int32_t;

/// Corner index (0-based) of the first minimum of a label process.
struct ConjugationOffset {
  std::int64_t value = 0;
  friend bool operator==(const ConjugationOffset&, const ConjugationOffset&) = default;
};

/// rep[k] = smallest contour position visiting the same vertex as position k.
struct RepMap {
  std::vector<std::int64_t> rep;
};

/// Class of every vertex of one tree, indexed by preorder id.
struct ClassMap {
  std::vector<ClassId> classes;
};

struct Conjugation {
  HeightProcess height;
  ConjugationOffset offset;
};

/// Rotates the label walk cyclically to start at its first minimum, shifts it
/// to start at 0 and grafts it under a fresh root: H = (0, W(0)+1, ..., W(2m-1)+1).
/// The result encodes a tree with 2m edges.
Conjugation conjugate(const LabelProcess& labels);

RepMap node_representatives(const ContourPath& contour);

/// Preorder id of the vertex first visited at contour position `first_visit`.
inline std::int64_t preorder_at(const ContourPath& contour, std::int64_t first_visit) {
  return (first_visit + contour.values[static_cast<std::size_t>(first_visit)]) / 2;
}

/// Class map of the next tree. Non-root vertex v (preorder, v >= 1) of the
/// next tree sits on corner (offset + v - 1) mod 2m of the previous tree and
/// inherits the class of that corner's vertex; the next root gets `fresh_root`.
ClassMap compose_identifications(const ContourPath& prev_contour, const RepMap& prev_rep,
                                 const ClassMap& prev_classes, ConjugationOffset prev_offset, ClassId fresh_root);

/// One sampled D-feuilletage.
///
/// Class ids: level-1 vertices keep their preorder id (0..n); the root of
/// level j >= 2 gets n + j - 1. Only the last tree T^(D) is kept, together with
/// the class of each of its vertices and the class of each corner of T^(1)
/// (used for corner-uniform root sampling).
struct FeuilletageRealization {
  int depth = 1;
  std::int64_t n = 0;
  HeightProcess height;
  ClassMap classes;
  std::vector<std::int64_t> offsets;  // a_1 .. a_{D-1}
  std::vector<ClassId> first_level_corners;

  std::int64_t class_ids() const { return n + depth; }
  std::int64_t edges() const { return height.edges(); }
};

/// Per-level inputs of a build, retained only when asked for (tests, oracle).
struct FoldingLevel {
  ContourPath contour;
  LabelProcess labels;  // empty on the last level
};

struct FoldingTrace {
  std::vector<FoldingLevel> levels;
};

using LabelSource = std::function<LabelProcess(int level, const ContourPath& contour)>;

/// Iterated folding starting from a given first tree with labels supplied per
/// level. Deterministic given its inputs.
FeuilletageRealization fold_trees(int depth, ContourPath first_tree, const LabelSource& labels,
                                  FoldingTrace* trace = nullptr);

/// Uniform T^(1) with n edges, then D-1 folding steps. The stream is consumed
/// sequentially: Dyck path first, then labels level by level.
FeuilletageRealization build_feuilletage(int depth, std::int64_t n, RngStream& stream, FoldingTrace* trace = nullptr);

/// Number of distinct class ids in the final class map.
std::int64_t class_count(const FeuilletageRealization& r);

/// Debug dump: `# D= n= seed=` header, offsets, then the final class map.
void write_dump(std::ostream& out, const FeuilletageRealization& r, std::uint64_t seed);

}  // namespace feuilletage
