#pragma once

// Compile-time embedding of the index algebra. Axis and dataset identities
// are phantom type parameters: tag structs with no run-time state beyond a
// name. A mis-indexed gather, lift or reindex does not compile.
//
//   struct County { static constexpr std::string_view name = "County"; };
//   struct Data   { static constexpr std::string_view name = "Data"; };
//
//   Vec<County> a = ...;
//   Idx<County, Data> county_idx = ...;
//   Obs<Data> effects = gather(a, county_idx);   // ok
//   gather(a, home_idx);                         // error: Idx<Home, Data>
//
// Each phantom wrapper holds the corresponding run-time container, so the
// numeric path is exactly the dynamic one.

#include <concepts>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geist/axis.hpp"
#include "geist/error.hpp"

namespace geist::phantom {

template <typename T>
concept Tag = requires {
  { T::name } -> std::convertible_to<std::string_view>;
};

template <Tag K>
AxisTag axis_tag(std::size_t size) {
  return AxisTag(std::string(K::name), size);
}

template <Tag D>
DatasetTag dataset_tag(std::size_t obs_count) {
  return DatasetTag(std::string(D::name), obs_count);
}

template <Tag K>
class Vec {
 public:
  explicit Vec(std::vector<double> values) : inner_(make(std::move(values))) {}
  explicit Vec(TypedVec inner) : inner_(std::move(inner)) {
    if (inner_.axis().name() != K::name) {
      throw Error(ErrorKind::AxisMismatch, "Vec: run-time axis \"" + inner_.axis().name() +
                                               "\" does not match " + std::string(K::name));
    }
  }

  const TypedVec& dynamic() const noexcept { return inner_; }
  std::span<const double> values() const noexcept { return inner_.values(); }
  std::size_t size() const noexcept { return inner_.size(); }

 private:
  static TypedVec make(std::vector<double> values) {
    const std::size_t n = values.size();  // read before the move below
    return TypedVec(axis_tag<K>(n), std::move(values));
  }

  TypedVec inner_;
};

template <Tag K, Tag D>
class Idx {
 public:
  Idx(std::size_t axis_size, std::vector<Index> indices)
      : inner_(make(axis_size, std::move(indices))) {}
  explicit Idx(IndexArray inner) : inner_(std::move(inner)) {
    if (inner_.source_axis().name() != K::name || inner_.dataset().name() != D::name) {
      throw Error(ErrorKind::AxisMismatch,
                  "Idx: run-time type " + type_name(inner_) + " does not match static type");
    }
  }

  const IndexArray& dynamic() const noexcept { return inner_; }
  std::span<const Index> indices() const noexcept { return inner_.indices(); }

 private:
  static IndexArray make(std::size_t axis_size, std::vector<Index> indices) {
    const std::size_t n = indices.size();
    return IndexArray(axis_tag<K>(axis_size), dataset_tag<D>(n), std::move(indices));
  }

  IndexArray inner_;
};

template <Tag K, Tag L, Tag D>
class Map {
 public:
  Map(std::size_t parent_size, std::vector<Index> entries, std::size_t obs_count)
      : inner_(make(parent_size, std::move(entries), obs_count)) {}

  const AxisMap& dynamic() const noexcept { return inner_; }
  std::span<const Index> entries() const noexcept { return inner_.entries(); }

 private:
  static AxisMap make(std::size_t parent_size, std::vector<Index> entries, std::size_t obs_count) {
    const std::size_t n = entries.size();
    return AxisMap(axis_tag<K>(parent_size), axis_tag<L>(n), dataset_tag<D>(obs_count),
                   std::move(entries));
  }

  AxisMap inner_;
};

template <Tag D>
class Obs {
 public:
  explicit Obs(ObsArray inner) : inner_(std::move(inner)) {}

  const ObsArray& dynamic() const noexcept { return inner_; }
  std::span<const double> values() const noexcept { return inner_.values(); }

 private:
  ObsArray inner_;
};

template <Tag K, Tag D>
Obs<D> gather(const Vec<K>& vec, const Idx<K, D>& idx) {
  return Obs<D>(geist::gather(vec.dynamic(), idx.dynamic()));
}

template <Tag K, Tag L, Tag D>
Vec<L> lift(const Map<K, L, D>& map, const Vec<K>& vec) {
  return Vec<L>(geist::lift(map.dynamic(), vec.dynamic()));
}

template <Tag K, Tag L, Tag D>
Idx<K, D> reindex(const Map<K, L, D>& map, const Idx<L, D>& idx) {
  return Idx<K, D>(geist::reindex(map.dynamic(), idx.dynamic()));
}

template <Tag D>
double gaussian_loglik(const Obs<D>& obs, const Obs<D>& mu, double sigma) {
  return geist::gaussian_loglik(obs.dynamic(), mu.dynamic(), sigma);
}

}  // namespace geist::phantom
