#include "feuilletage/encodings.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace feuilletage {

std::optional<Violation> validate(const ContourPath& path) {
  const auto& v = path.values;
  if (v.empty() || v.size() % 2 == 0) return Violation{"length must be 2m+1", static_cast<std::int64_t>(v.size())};
  if (v.front() != 0) return Violation{"starts at 0", 0};
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] < 0) return Violation{"nonnegative", static_cast<std::int64_t>(k)};
    const auto step = v[k] - v[k - 1];
    if (step != 1 && step != -1) return Violation{"step is +-1", static_cast<std::int64_t>(k)};
  }
  if (v.back() != 0) return Violation{"ends at 0", static_cast<std::int64_t>(v.size() - 1)};
  return std::nullopt;
}

std::optional<Violation> validate(const HeightProcess& path) {
  const auto& v = path.values;
  if (v.empty()) return Violation{"nonempty", 0};
  if (v.front() != 0) return Violation{"starts at 0", 0};
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] < 1) return Violation{"unique root (depth >= 1 after index 0)", static_cast<std::int64_t>(k)};
    if (v[k] - v[k - 1] > 1) return Violation{"step <= +1", static_cast<std::int64_t>(k)};
  }
  return std::nullopt;
}

ContourPath sample_dyck(std::int64_t n, RngStream& stream) {
  if (n < 1) throw std::invalid_argument("sample_dyck: n must be >= 1");
  // n up-steps and n+1 down-steps; exactly one rotation stays nonnegative
  // until its last step.
  std::vector<std::int8_t> steps(static_cast<std::size_t>(2 * n + 1), -1);
  std::fill_n(steps.begin(), n, std::int8_t{1});
  shuffle(stream, std::span<std::int8_t>(steps));

  std::int64_t sum = 0, min_sum = 0, first_min = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    sum += steps[i];
    if (sum < min_sum) {
      min_sum = sum;
      first_min = static_cast<std::int64_t>(i) + 1;
    }
  }

  ContourPath out;
  out.values.resize(static_cast<std::size_t>(2 * n + 1));
  const auto len = static_cast<std::int64_t>(steps.size());
  std::int32_t h = 0;
  out.values[0] = 0;
  for (std::int64_t k = 0; k < 2 * n; ++k) {
    h += steps[static_cast<std::size_t>((first_min + k) % len)];
    out.values[static_cast<std::size_t>(k + 1)] = h;
  }
  return out;
}

HeightProcess contour_to_height(const ContourPath& contour) {
  if (auto bad = validate(contour)) {
    throw std::invalid_argument("contour_to_height: invalid contour (" + bad->invariant + " at " +
                                std::to_string(bad->index) + ")");
  }
  HeightProcess out;
  out.values.reserve(static_cast<std::size_t>(contour.edges() + 1));
  out.values.push_back(0);
  const auto& c = contour.values;
  for (std::size_t k = 1; k < c.size(); ++k)
    if (c[k] > c[k - 1]) out.values.push_back(c[k]);
  return out;
}

ContourPath height_to_contour(const HeightProcess& height) {
  if (auto bad = validate(height)) {
    throw std::invalid_argument("height_to_contour: invalid height process (" + bad->invariant + " at " +
                                std::to_string(bad->index) + ")");
  }
  const auto& h = height.values;
  ContourPath out;
  out.values.resize(2 * h.size() - 1);
  std::size_t pos = 0;
  std::int32_t cur = 0;
  out.values[pos++] = 0;
  for (std::size_t v = 1; v < h.size(); ++v) {
    while (cur >= h[v]) out.values[pos++] = --cur;
    out.values[pos++] = ++cur;
  }
  while (cur > 0) out.values[pos++] = --cur;
  return out;
}

void write_dump(std::ostream& out, std::string_view kind, std::span<const std::int32_t> values, std::int64_t m) {
  out << "# kind=" << kind << " n=" << m << '\n';
  for (auto x : values) out << x << '\n';
}

void write_dump(std::ostream& out, const ContourPath& path) { write_dump(out, "contour", path.values, path.edges()); }

void write_dump(std::ostream& out, const HeightProcess& path) { write_dump(out, "height", path.values, path.edges()); }

}  // namespace feuilletage
