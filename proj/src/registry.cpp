#include "geist/registry.hpp"

#include <algorithm>
#include <functional>

#include "geist/error.hpp"

namespace geist {

AxisGraph::Insert AxisGraph::add_edge(const std::string& parent, const std::string& child) {
  if (has_edge(parent, child)) return Insert::Duplicate;
  if (parent == child || reaches(child, parent)) return Insert::Cycle;
  for (const auto* name : {&parent, &child}) {
    if (!has_node(*name)) nodes_.push_back(*name);
  }
  children_[parent].push_back(child);
  edges_.emplace_back(parent, child);
  return Insert::Added;
}

bool AxisGraph::has_node(const std::string& axis) const {
  return std::find(nodes_.begin(), nodes_.end(), axis) != nodes_.end();
}

bool AxisGraph::has_edge(const std::string& parent, const std::string& child) const {
  auto it = children_.find(parent);
  if (it == children_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), child) != it->second.end();
}

bool AxisGraph::reaches(const std::string& from, const std::string& to) const {
  return count_paths(from, to, 1) > 0 || from == to;
}

std::size_t AxisGraph::count_paths(const std::string& from, const std::string& to,
                                   std::size_t cap) const {
  // Memoised DFS over a DAG; counts saturate at `cap`.
  std::map<std::string, std::size_t> memo;
  std::function<std::size_t(const std::string&)> visit = [&](const std::string& node) {
    if (node == to) return std::size_t{1};
    if (auto it = memo.find(node); it != memo.end()) return it->second;
    std::size_t total = 0;
    if (auto it = children_.find(node); it != children_.end()) {
      for (const auto& child : it->second) {
        total = std::min(cap, total + visit(child));
        if (total == cap) break;
      }
    }
    memo[node] = total;
    return total;
  };
  if (from == to) return 0;
  return visit(from);
}

std::optional<std::vector<std::string>> AxisGraph::unique_path(const std::string& from,
                                                               const std::string& to) const {
  if (from == to || count_paths(from, to) != 1) return std::nullopt;
  std::vector<std::string> path{from};
  std::string node = from;
  while (node != to) {
    const auto& next = children_.at(node);
    auto it = std::find_if(next.begin(), next.end(), [&](const std::string& c) {
      return c == to || count_paths(c, to, 1) > 0;
    });
    node = *it;
    path.push_back(node);
  }
  return path;
}

std::vector<std::string> AxisGraph::descendants(const std::string& from) const {
  std::vector<std::string> out;
  for (const auto& node : nodes_) {
    if (node != from && count_paths(from, node, 1) > 0) out.push_back(node);
  }
  return out;
}

LiftPath::LiftPath(std::vector<AxisMap> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw Error(ErrorKind::NoPath, "lift path must have at least one step");
  for (std::size_t i = 1; i < steps_.size(); ++i) {
    if (steps_[i - 1].child_axis() != steps_[i].parent_axis()) {
      throw Error(ErrorKind::AxisMismatch, "lift path steps do not compose at step " +
                                               std::to_string(i));
    }
  }
}

AxisMap LiftPath::compose() const {
  // The composed child-to-parent array follows each child level back up the
  // chain: composed[x] = step0[step1[...stepN[x]]].
  std::vector<Index> entries(steps_.back().entries().begin(), steps_.back().entries().end());
  for (std::size_t s = steps_.size() - 1; s-- > 0;) {
    std::vector<Index> next(entries.size());
    kernels::parallel::take(steps_[s].entries(), entries, next);
    entries = std::move(next);
  }
  return AxisMap(from(), to(), steps_.front().dataset(), std::move(entries));
}

MapRegistry& MapRegistry::register_map(const AxisTag& parent, const AxisTag& child,
                                       std::vector<Index> entries) {
  if (frozen_) {
    throw Error(ErrorKind::RegistryFrozen,
                "registry for dataset \"" + dataset_.name() + "\" is frozen");
  }
  AxisMap map(parent, child, dataset_, std::move(entries));
  switch (graph_.add_edge(parent.name(), child.name())) {
    case AxisGraph::Insert::Duplicate:
      throw Error(ErrorKind::DuplicateRegistration,
                  "map " + parent.name() + " -> " + child.name() + " is already registered in \"" +
                      dataset_.name() + "\"");
    case AxisGraph::Insert::Cycle:
      throw Error(ErrorKind::CycleError, "registering " + parent.name() + " -> " + child.name() +
                                             " would create a cycle in \"" + dataset_.name() +
                                             "\"");
    case AxisGraph::Insert::Added:
      break;
  }
  maps_.emplace(std::make_pair(parent.name(), child.name()), std::move(map));
  return *this;
}

const AxisMap* MapRegistry::find_map(const std::string& parent, const std::string& child) const {
  auto it = maps_.find({parent, child});
  return it == maps_.end() ? nullptr : &it->second;
}

const AxisMap& MapRegistry::lookup_map(const AxisTag& parent, const AxisTag& child) const {
  const AxisMap* map = find_map(parent.name(), child.name());
  if (map == nullptr || map->parent_axis() != parent || map->child_axis() != child) {
    throw Error(ErrorKind::NotRegistered, "no map " + parent.name() + " -> " + child.name() +
                                              " is registered in \"" + dataset_.name() + "\"");
  }
  return *map;
}

LiftPath MapRegistry::resolve_lift_path(const AxisTag& from, const AxisTag& to) const {
  const std::size_t paths = graph_.count_paths(from.name(), to.name());
  if (paths == 0) {
    throw Error(ErrorKind::NoPath, "no registered lift from " + from.name() + " to " + to.name() +
                                       " in \"" + dataset_.name() + "\"");
  }
  if (paths > 1) {
    throw Error(ErrorKind::AmbiguousPath, "more than one registered lift path from " +
                                              from.name() + " to " + to.name() + " in \"" +
                                              dataset_.name() + "\"");
  }
  const auto nodes = *graph_.unique_path(from.name(), to.name());
  std::vector<AxisMap> steps;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    steps.push_back(*find_map(nodes[i], nodes[i + 1]));
  }
  if (steps.front().parent_axis() != from || steps.back().child_axis() != to) {
    throw Error(ErrorKind::AxisMismatch, "lift endpoints " + from.name() + " -> " + to.name() +
                                             " disagree with the registered axis sizes");
  }
  return LiftPath(std::move(steps));
}

TypedVec MapRegistry::auto_lift(const TypedVec& vec, const AxisTag& to) const {
  if (vec.axis() == to) return vec;
  const LiftPath path = resolve_lift_path(vec.axis(), to);
  TypedVec out = vec;
  for (const auto& step : path.steps()) out = lift(step, out);
  return out;
}

}  // namespace geist
