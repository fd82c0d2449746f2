#pragma once

#include <string>

#include "warpmcf/graph_state.hpp"
#include "warpmcf/profile_curve.hpp"

namespace warpmcf {

/// Versioned JSON snapshots. Numeric payloads round-trip bitwise (shortest
/// round-trip decimal serialization) and carry an FNV-1a checksum over the
/// raw little-endian bytes; load rejects version or checksum mismatches.
void save_state(const GraphState& state, const std::string& path);
GraphState load_state(const std::string& path);

void save_curve(const ProfileCurve& curve, const std::string& path);
ProfileCurve load_curve(const std::string& path);

struct SnapshotError : std::runtime_error {
  explicit SnapshotError(const std::string& w) : std::runtime_error(w) {}
};

}  // namespace warpmcf
