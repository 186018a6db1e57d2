#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "feuilletage/random.hpp"

namespace feuilletage {

using Walk = std::vector<std::int32_t>;

/// Contour (Dyck) walk of a rooted plane tree with m edges: 2m+1 values,
/// starting and ending at 0, steps of +-1, never negative.
///
/// Position k in [0, 2m) is also corner k: the corner of the vertex visited at
/// step k. The paper-style 1-based corner c corresponds to position c-1.
struct ContourPath {
  Walk values;

  std::int64_t edges() const { return values.empty() ? 0 : static_cast<std::int64_t>(values.size() - 1) / 2; }
  std::int64_t vertices() const { return edges() + 1; }
  std::int64_t corners() const { return 2 * edges(); }
  friend bool operator==(const ContourPath&, const ContourPath&) = default;
};

/// Depth of each vertex in depth-first (preorder) order: m+1 values.
struct HeightProcess {
  Walk values;

  std::int64_t edges() const { return static_cast<std::int64_t>(values.size()) - 1; }
  std::int64_t vertices() const { return static_cast<std::int64_t>(values.size()); }
  friend bool operator==(const HeightProcess&, const HeightProcess&) = default;
};

/// First violated invariant of a walk.
struct Violation {
  std::string invariant;
  std::int64_t index = 0;
};

std::optional<Violation> validate(const ContourPath& path);
std::optional<Violation> validate(const HeightProcess& path);

/// Uniform Dyck path with n up-steps (cycle lemma on a shuffled bridge).
ContourPath sample_dyck(std::int64_t n, RngStream& stream);

HeightProcess contour_to_height(const ContourPath& contour);
ContourPath height_to_contour(const HeightProcess& height);

/// Debug dump: `# kind=<kind> n=<m>` then one value per line.
void write_dump(std::ostream& out, std::string_view kind, std::span<const std::int32_t> values, std::int64_t m);
void write_dump(std::ostream& out, const ContourPath& path);
void write_dump(std::ostream& out, const HeightProcess& path);

}  // namespace feuilletage
