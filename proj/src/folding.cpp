#include "feuilletage/folding.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#ifndef FEUILLETAGE_OFFSET_BIAS
#define FEUILLETAGE_OFFSET_BIAS 0
#endif

namespace feuilletage {

Conjugation conjugate(const LabelProcess& labels) {
  const auto& l = labels.values;
  const auto corners = static_cast<std::int64_t>(l.size());
  if (corners == 0) throw std::invalid_argument("conjugate: empty label process");

  const auto first_min = std::min_element(l.begin(), l.end()) - l.begin();
  const auto base = l[static_cast<std::size_t>(first_min)];

  Conjugation out;
  out.offset.value = first_min;
  out.height.values.resize(static_cast<std::size_t>(corners + 1));
  out.height.values[0] = 0;
  auto* h = out.height.values.data() + 1;
  // two straight runs instead of a modulo per element
  std::int64_t k = 0;
  for (auto i = first_min; i < corners; ++i) h[k++] = l[static_cast<std::size_t>(i)] - base + 1;
  for (std::int64_t i = 0; i < first_min; ++i) h[k++] = l[static_cast<std::size_t>(i)] - base + 1;
  return out;
}

RepMap node_representatives(const ContourPath& contour) {
  const auto& c = contour.values;
  RepMap out;
  out.rep.resize(c.size());
  std::vector<std::int64_t> first(1, 0);  // first visit of the current ancestor at each depth
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto depth = static_cast<std::size_t>(c[k]);
    if (k > 0 && c[k] > c[k - 1]) {
      if (first.size() <= depth) first.resize(depth + 1);
      first[depth] = static_cast<std::int64_t>(k);
    }
    out.rep[k] = first[depth];
  }
  return out;
}

ClassMap compose_identifications(const ContourPath& prev_contour, const RepMap& prev_rep,
                                 const ClassMap& prev_classes, ConjugationOffset prev_offset, ClassId fresh_root) {
  const std::int64_t corners = prev_contour.corners();
  const auto prev_vertices = prev_contour.vertices();
  if (static_cast<std::int64_t>(prev_rep.rep.size()) != corners + 1 ||
      static_cast<std::int64_t>(prev_classes.classes.size()) != prev_vertices)
    throw std::logic_error("compose_identifications: arrays do not match the previous tree");
  if (prev_offset.value < 0 || prev_offset.value >= corners)
    throw std::logic_error("compose_identifications: offset out of range");

  ClassMap out;
  out.classes.resize(static_cast<std::size_t>(corners + 1));
  out.classes[0] = fresh_root;
  // The one place where 1-based corner arithmetic "a + c - 1 mod size" is
  // translated: next-tree vertex v (v >= 1) lies on 0-based corner
  // (a + v - 1) mod 2m of the previous tree.
  std::int64_t corner = (prev_offset.value + FEUILLETAGE_OFFSET_BIAS) % corners;
  for (std::int64_t v = 1; v <= corners; ++v) {
    const auto first_visit = prev_rep.rep[static_cast<std::size_t>(corner)];
    const auto owner = preorder_at(prev_contour, first_visit);
    if (owner < 0 || owner >= prev_vertices)
      throw std::logic_error("compose_identifications: corner owner " + std::to_string(owner) + " out of range");
    out.classes[static_cast<std::size_t>(v)] = prev_classes.classes[static_cast<std::size_t>(owner)];
    if (++corner == corners) corner = 0;
  }
  return out;
}

FeuilletageRealization fold_trees(int depth, ContourPath first_tree, const LabelSource& labels,
                                  FoldingTrace* trace) {
  if (depth < 1) throw std::invalid_argument("fold_trees: depth must be >= 1");
  if (auto bad = validate(first_tree)) throw std::invalid_argument("fold_trees: invalid first tree: " + bad->invariant);
  const auto n = first_tree.edges();
  if (n < 1) throw std::invalid_argument("fold_trees: n must be >= 1");

  FeuilletageRealization r;
  r.depth = depth;
  r.n = n;
  if (trace) trace->levels.clear();

  ContourPath contour = std::move(first_tree);
  ClassMap classes;
  classes.classes.resize(static_cast<std::size_t>(n + 1));
  for (std::int64_t v = 0; v <= n; ++v) classes.classes[static_cast<std::size_t>(v)] = static_cast<ClassId>(v);

  {
    const auto rep = node_representatives(contour);
    r.first_level_corners.resize(static_cast<std::size_t>(2 * n));
    for (std::int64_t k = 0; k < 2 * n; ++k)
      r.first_level_corners[static_cast<std::size_t>(k)] =
          static_cast<ClassId>(preorder_at(contour, rep.rep[static_cast<std::size_t>(k)]));
  }

  HeightProcess height;
  for (int level = 1; level < depth; ++level) {
    auto level_labels = labels(level, contour);
    if (level_labels.corners() != contour.corners())
      throw std::logic_error("fold_trees: label process has wrong length at level " + std::to_string(level));

    auto conj = conjugate(level_labels);
    r.offsets.push_back(conj.offset.value);
    {
      const auto rep = node_representatives(contour);
      classes = compose_identifications(contour, rep, classes, conj.offset, static_cast<ClassId>(n + level));
    }
    if (trace) trace->levels.push_back({std::move(contour), std::move(level_labels)});
    height = std::move(conj.height);
    contour = height_to_contour(height);
  }
  if (depth == 1) height = contour_to_height(contour);
  if (trace) trace->levels.push_back({std::move(contour), {}});

  r.height = std::move(height);
  r.classes = std::move(classes);
  return r;
}

FeuilletageRealization build_feuilletage(int depth, std::int64_t n, RngStream& stream, FoldingTrace* trace) {
  if (depth < 1) throw std::invalid_argument("build_feuilletage: depth must be >= 1");
  auto first = sample_dyck(n, stream);
  return fold_trees(depth, std::move(first),
                    [&stream](int, const ContourPath& c) { return sample_labels(c, stream); }, trace);
}

std::int64_t class_count(const FeuilletageRealization& r) {
  std::vector<bool> seen(static_cast<std::size_t>(r.class_ids()), false);
  std::int64_t count = 0;
  for (auto id : r.classes.classes) {
    if (id < 0 || id >= r.class_ids()) throw std::logic_error("class_count: class id out of range");
    if (!seen[static_cast<std::size_t>(id)]) {
      seen[static_cast<std::size_t>(id)] = true;
      ++count;
    }
  }
  return count;
}

void write_dump(std::ostream& out, const FeuilletageRealization& r, std::uint64_t seed) {
  out << "# D=" << r.depth << " n=" << r.n << " seed=" << seed << '\n';
  for (std::size_t i = 0; i < r.offsets.size(); ++i) out << "# a[" << i + 1 << "]=" << r.offsets[i] << '\n';
  for (auto id : r.classes.classes) out << id << '\n';
}

}  // namespace feuilletage
