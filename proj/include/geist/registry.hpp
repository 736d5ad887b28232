#pragma once

// Permitted relations between axes. A MapRegistry is the only authority on
// which lifts and reindexes are legal within a dataset: each registered map
// adds a parent -> child edge to a DAG, and lifts follow the unique directed
// path through it.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geist/axis.hpp"

namespace geist {

/// Directed graph over axis names. Shared by the run-time registry and the
/// static checker, which registers edges without any map data.
class AxisGraph {
 public:
  enum class Insert { Added, Duplicate, Cycle };

  /// Adds parent -> child unless it duplicates an edge or closes a cycle
  /// (a self-loop counts as a cycle). The graph is unchanged on rejection.
  Insert add_edge(const std::string& parent, const std::string& child);

  bool has_node(const std::string& axis) const;
  bool has_edge(const std::string& parent, const std::string& child) const;
  bool reaches(const std::string& from, const std::string& to) const;

  /// Number of distinct directed paths from -> to, saturated at `cap`.
  std::size_t count_paths(const std::string& from, const std::string& to,
                          std::size_t cap = 2) const;

  /// Node sequence of the unique path, or nullopt when there is none or
  /// more than one.
  std::optional<std::vector<std::string>> unique_path(const std::string& from,
                                                      const std::string& to) const;

  /// Axes reachable from `from` by at least one edge, in insertion order.
  std::vector<std::string> descendants(const std::string& from) const;

  const std::vector<std::pair<std::string, std::string>>& edges() const noexcept {
    return edges_;
  }

 private:
  std::vector<std::string> nodes_;
  std::map<std::string, std::vector<std::string>> children_;
  std::vector<std::pair<std::string, std::string>> edges_;
};

/// A chain of maps parent -> ... -> child. Never empty.
class LiftPath {
 public:
  explicit LiftPath(std::vector<AxisMap> steps);

  const std::vector<AxisMap>& steps() const noexcept { return steps_; }
  const AxisTag& from() const noexcept { return steps_.front().parent_axis(); }
  const AxisTag& to() const noexcept { return steps_.back().child_axis(); }

  /// Single map equivalent to applying every step in order.
  AxisMap compose() const;

 private:
  std::vector<AxisMap> steps_;
};

class MapRegistry {
 public:
  explicit MapRegistry(DatasetTag dataset) : dataset_(std::move(dataset)) {}

  const DatasetTag& dataset() const noexcept { return dataset_; }

  /// Validates and stores Map(parent -> child). Throws BoundsError /
  /// LengthError for bad entries, DuplicateRegistration, CycleError, or
  /// RegistryFrozen after freeze().
  MapRegistry& register_map(const AxisTag& parent, const AxisTag& child,
                            std::vector<Index> entries);

  /// Ends the build phase. A frozen registry is safe for concurrent reads.
  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }

  const AxisMap& lookup_map(const AxisTag& parent, const AxisTag& child) const;
  const AxisMap* find_map(const std::string& parent, const std::string& child) const;

  /// Throws NoPath or AmbiguousPath. from == to has no path: the diagonal
  /// is handled by auto_lift.
  LiftPath resolve_lift_path(const AxisTag& from, const AxisTag& to) const;

  /// Lifts `vec` along the unique registered path to `to`. Lifting to the
  /// vector's own axis returns it unchanged.
  TypedVec auto_lift(const TypedVec& vec, const AxisTag& to) const;

  const AxisGraph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return maps_.size(); }

 private:
  DatasetTag dataset_;
  AxisGraph graph_;
  std::map<std::pair<std::string, std::string>, AxisMap> maps_;
  bool frozen_ = false;
};

}  // namespace geist
