#pragma once

// JSON model manifests.
//
//   {
//     "name":   "sphere",
//     "n":      1,
//     "metric": [["-1", "0", "0", "0"], [null, "-sinh(u1)^2", "0", "0"], ...],
//     "J1":     [{"i": 1, "j": 2, "expr": "-sinh(u1)"}, ...],
//     "J2":     [...],
//     "J3":     [...],
//     "domain": ["sinh(u1) != 0", "cos(u3) != 0"],
//     "box":    [[0.2, 1.5], [0, 6.283185307179586], ...],
//     "metadata": {"key": "value"}          (optional)
//   }
//
// metric rows have 4n entries; entries below the diagonal may be null and
// are then mirrored from the upper triangle. Structure entries use 1-based
// indices: {"i": a, "j": b} is (J)^a_b, the a-th component of J ∂_b.
// Unlisted structure entries are zero.

#include <filesystem>
#include <string_view>

#include "hyperaudit/manifold.hpp"

namespace hyperaudit {

/// Throws Error on I/O failure, SchemaError (with a field path) on schema
/// violations and ParseError on malformed expressions.
ManifoldSpec load_manifest(const std::filesystem::path& path);
ManifoldSpec parse_manifest(std::string_view json_text);

}  // namespace hyperaudit
