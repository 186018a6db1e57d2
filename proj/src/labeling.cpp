#include "feuilletage/labeling.hpp"

#include <cstdlib>
#include <stdexcept>

namespace feuilletage {

namespace {

template <class NextIncrement>
LabelProcess sweep_labels(const ContourPath& contour, NextIncrement&& next_increment) {
  const auto& c = contour.values;
  const auto corners = static_cast<std::size_t>(contour.corners());
  LabelProcess out;
  out.values.resize(corners);
  // label of the current ancestor at each depth
  std::vector<std::int32_t> stack(1, 0);
  for (std::size_t k = 0; k < corners; ++k) {
    if (k > 0 && c[k] > c[k - 1]) {
      const auto depth = static_cast<std::size_t>(c[k]);
      if (stack.size() <= depth) stack.resize(depth + 1);
      stack[depth] = stack[depth - 1] + next_increment();
    }
    out.values[k] = stack[static_cast<std::size_t>(c[k])];
  }
  return out;
}

}  // namespace

std::optional<Violation> validate(const LabelProcess& labels) {
  const auto& v = labels.values;
  if (v.empty() || v.size() % 2 != 0) return Violation{"length must be 2m", static_cast<std::int64_t>(v.size())};
  if (v.front() != 0) return Violation{"root label 0", 0};
  for (std::size_t k = 1; k < v.size(); ++k)
    if (std::abs(v[k] - v[k - 1]) > 1) return Violation{"step in {-1,0,1}", static_cast<std::int64_t>(k)};
  if (std::abs(v.front() - v.back()) > 1)
    return Violation{"cyclic step in {-1,0,1}", static_cast<std::int64_t>(v.size() - 1)};
  return std::nullopt;
}

LabelProcess labels_from_increments(const ContourPath& contour, std::span<const std::int8_t> increments) {
  if (static_cast<std::int64_t>(increments.size()) != contour.edges())
    throw std::invalid_argument("labels_from_increments: need one increment per edge");
  std::size_t next = 0;
  return sweep_labels(contour, [&]() -> std::int32_t {
    const auto inc = increments[next++];
    if (inc < -1 || inc > 1) throw std::invalid_argument("labels_from_increments: increment outside {-1,0,1}");
    return inc;
  });
}

LabelProcess sample_labels(const ContourPath& contour, RngStream& stream) {
  return sweep_labels(contour, [&] { return static_cast<std::int32_t>(uniform_int(stream, 3)) - 1; });
}

std::vector<std::int32_t> vertex_labels(const ContourPath& contour, const LabelProcess& labels) {
  if (labels.corners() != contour.corners() || contour.edges() < 1)
    throw std::invalid_argument("vertex_labels: label process does not match contour");
  const auto& c = contour.values;
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(contour.vertices()));
  std::vector<std::int64_t> stack(1, 0);  // preorder id of ancestor at each depth
  out.push_back(labels.values[0]);
  for (std::size_t k = 1; k < static_cast<std::size_t>(contour.corners()); ++k) {
    const auto depth = static_cast<std::size_t>(c[k]);
    if (c[k] > c[k - 1]) {
      if (stack.size() <= depth) stack.resize(depth + 1);
      stack[depth] = static_cast<std::int64_t>(out.size());
      out.push_back(labels.values[k]);
      if (std::abs(labels.values[k] - out[static_cast<std::size_t>(stack[depth - 1])]) > 1)
        throw std::invalid_argument("vertex_labels: edge increment outside {-1,0,1} (corner " + std::to_string(k) + ")");
    } else if (out[static_cast<std::size_t>(stack[depth])] != labels.values[k]) {
      throw std::invalid_argument("vertex_labels: corners of one vertex carry different labels (corner " +
                                  std::to_string(k) + ")");
    }
  }
  if (out.front() != 0) throw std::invalid_argument("vertex_labels: root label must be 0");
  return out;
}

void write_dump(std::ostream& out, const LabelProcess& labels) {
  write_dump(out, "labels", labels.values, labels.corners() / 2);
}

}  // namespace feuilletage
