#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "feuilletage/encodings.hpp"
#include "feuilletage/random.hpp"

namespace feuilletage {

/// Labels read along the 2m corners of a tree: values[k] is the label of the
/// vertex owning corner k. The root is labelled 0.
struct LabelProcess {
  Walk values;

  std::int64_t corners() const { return static_cast<std::int64_t>(values.size()); }
  friend bool operator==(const LabelProcess&, const LabelProcess&) = default;
};

std::optional<Violation> validate(const LabelProcess& labels);

/// Deterministic labelling: `increments[v-1]` is the increment on the edge
/// into the vertex with preorder index v. Each increment must be in {-1,0,1}.
LabelProcess labels_from_increments(const ContourPath& contour, std::span<const std::int8_t> increments);

/// Branching random walk: i.i.d. uniform {-1,0,+1} increment per edge, drawn
/// in preorder during one contour sweep.
LabelProcess sample_labels(const ContourPath& contour, RngStream& stream);

/// Per-vertex labels in preorder. Throws std::invalid_argument if corners of a
/// vertex disagree or the sizes do not match.
std::vector<std::int32_t> vertex_labels(const ContourPath& contour, const LabelProcess& labels);

void write_dump(std::ostream& out, const LabelProcess& labels);

}  // namespace feuilletage
