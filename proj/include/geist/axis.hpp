#pragma once

// Axis-tagged containers and the three index-algebra operations.
//
//   gather : Vec(K) x Idx(K, D)      -> Obs(D)
//   lift   : Map(K, L, D) x Vec(K)   -> Vec(L)
//   reindex: Map(K, L, D) x Idx(L, D) -> Idx(K, D)
//
// A Map(K, L, D) is stored as a dense child-to-parent array of length |L|
// with entries in [0, |K|). All containers validate on construction and are
// immutable afterwards.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "geist/kernels.hpp"

namespace geist {

/// A semantic level of the model (State, County, Home, ...).
class AxisTag {
 public:
  AxisTag(std::string name, std::size_t size);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return size_; }

  friend bool operator==(const AxisTag&, const AxisTag&) = default;

 private:
  std::string name_;
  std::size_t size_;
};

/// A dataset: a named collection of observation rows.
class DatasetTag {
 public:
  DatasetTag(std::string name, std::size_t obs_count);

  const std::string& name() const noexcept { return name_; }
  std::size_t obs_count() const noexcept { return obs_count_; }

  friend bool operator==(const DatasetTag&, const DatasetTag&) = default;

 private:
  std::string name_;
  std::size_t obs_count_;
};

/// Parameter vector over an axis: Vec(K).
class TypedVec {
 public:
  TypedVec(AxisTag axis, std::vector<double> values);

  const AxisTag& axis() const noexcept { return axis_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const TypedVec&, const TypedVec&) = default;

 private:
  AxisTag axis_;
  std::vector<double> values_;
};

/// Per-observation indices into an axis: Idx(K, D).
class IndexArray {
 public:
  IndexArray(AxisTag source_axis, DatasetTag dataset, std::vector<Index> indices);

  const AxisTag& source_axis() const noexcept { return source_axis_; }
  const DatasetTag& dataset() const noexcept { return dataset_; }
  std::span<const Index> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }

  friend bool operator==(const IndexArray&, const IndexArray&) = default;

 private:
  AxisTag source_axis_;
  DatasetTag dataset_;
  std::vector<Index> indices_;
};

/// Dense child-to-parent map: Map(K, L, D), entries[l] = k.
class AxisMap {
 public:
  AxisMap(AxisTag parent_axis, AxisTag child_axis, DatasetTag dataset, std::vector<Index> entries);

  const AxisTag& parent_axis() const noexcept { return parent_axis_; }
  const AxisTag& child_axis() const noexcept { return child_axis_; }
  const DatasetTag& dataset() const noexcept { return dataset_; }
  std::span<const Index> entries() const noexcept { return entries_; }

  friend bool operator==(const AxisMap&, const AxisMap&) = default;

 private:
  AxisTag parent_axis_;
  AxisTag child_axis_;
  DatasetTag dataset_;
  std::vector<Index> entries_;
};

/// Observation-level values. Carries only the dataset: no axis semantics
/// survive a gather, but length and provenance do.
class ObsArray {
 public:
  ObsArray(DatasetTag dataset, std::vector<double> values);

  const DatasetTag& dataset() const noexcept { return dataset_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const ObsArray&, const ObsArray&) = default;

 private:
  DatasetTag dataset_;
  std::vector<double> values_;
};

ObsArray gather(const TypedVec& vec, const IndexArray& idx);
TypedVec lift(const AxisMap& map, const TypedVec& vec);
IndexArray reindex(const AxisMap& map, const IndexArray& idx);

/// Sum of Normal(mu[d], sigma) log-densities of obs[d].
double gaussian_loglik(const ObsArray& obs, const ObsArray& mu, double sigma);
/// Same density for an axis-level vector (the county- and state-level terms).
double gaussian_loglik(const TypedVec& values, const TypedVec& mean, double sigma);

AxisMap make_identity_map(const AxisTag& axis, const DatasetTag& dataset);

/// `Vec[County]`, `Idx[County, Data]`, ... as used in diagnostics.
std::string type_name(const TypedVec& v);
std::string type_name(const IndexArray& i);
std::string type_name(const AxisMap& m);
std::string type_name(const ObsArray& o);

}  // namespace geist
