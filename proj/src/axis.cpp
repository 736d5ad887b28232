#include "geist/axis.hpp"

#include <cmath>
#include <utility>

#include "geist/error.hpp"

namespace geist {

namespace {

void require_finite(std::span<const double> values, const std::string& what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorKind::NonFinite,
                  what + ": non-finite value at position " + std::to_string(i));
    }
  }
}

void require_length(std::size_t got, std::size_t want, const std::string& what) {
  if (got != want) {
    throw Error(ErrorKind::LengthError, what + ": expected " + std::to_string(want) +
                                            " entries, got " + std::to_string(got));
  }
}

void require_bounds(std::span<const Index> entries, std::size_t bound, const std::string& what) {
  if (kernels::parallel::index_bound(entries) <= bound) return;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] >= bound) {
      throw Error(ErrorKind::BoundsError, what + ": entry " + std::to_string(entries[i]) +
                                              " at position " + std::to_string(i) +
                                              " is out of range [0, " + std::to_string(bound) +
                                              ")");
    }
  }
}

void require_axis(const AxisTag& got, const AxisTag& want, const char* op) {
  if (got != want) {
    throw Error(ErrorKind::AxisMismatch, std::string(op) + ": axis \"" + got.name() +
                                             "\" does not match expected axis \"" + want.name() +
                                             "\"");
  }
}

void require_dataset(const DatasetTag& got, const DatasetTag& want, const char* op) {
  if (got != want) {
    throw Error(ErrorKind::DatasetMismatch, std::string(op) + ": dataset \"" + got.name() +
                                                "\" does not match expected dataset \"" +
                                                want.name() + "\"");
  }
}

}  // namespace

AxisTag::AxisTag(std::string name, std::size_t size) : name_(std::move(name)), size_(size) {
  if (size_ == 0) throw Error(ErrorKind::EmptyLevel, "axis \"" + name_ + "\" has size 0");
}

DatasetTag::DatasetTag(std::string name, std::size_t obs_count)
    : name_(std::move(name)), obs_count_(obs_count) {
  if (obs_count_ == 0) {
    throw Error(ErrorKind::EmptyLevel, "dataset \"" + name_ + "\" has no observations");
  }
}

TypedVec::TypedVec(AxisTag axis, std::vector<double> values)
    : axis_(std::move(axis)), values_(std::move(values)) {
  require_length(values_.size(), axis_.size(), type_name(*this));
  require_finite(values_, type_name(*this));
}

IndexArray::IndexArray(AxisTag source_axis, DatasetTag dataset, std::vector<Index> indices)
    : source_axis_(std::move(source_axis)),
      dataset_(std::move(dataset)),
      indices_(std::move(indices)) {
  require_length(indices_.size(), dataset_.obs_count(), type_name(*this));
  require_bounds(indices_, source_axis_.size(), type_name(*this));
}

AxisMap::AxisMap(AxisTag parent_axis, AxisTag child_axis, DatasetTag dataset,
                 std::vector<Index> entries)
    : parent_axis_(std::move(parent_axis)),
      child_axis_(std::move(child_axis)),
      dataset_(std::move(dataset)),
      entries_(std::move(entries)) {
  require_length(entries_.size(), child_axis_.size(), type_name(*this));
  require_bounds(entries_, parent_axis_.size(), type_name(*this));
}

ObsArray::ObsArray(DatasetTag dataset, std::vector<double> values)
    : dataset_(std::move(dataset)), values_(std::move(values)) {
  require_length(values_.size(), dataset_.obs_count(), type_name(*this));
  require_finite(values_, type_name(*this));
}

ObsArray gather(const TypedVec& vec, const IndexArray& idx) {
  require_axis(idx.source_axis(), vec.axis(), "gather");
  std::vector<double> out(idx.size());
  kernels::parallel::take(vec.values(), idx.indices(), out);
  return ObsArray(idx.dataset(), std::move(out));
}

TypedVec lift(const AxisMap& map, const TypedVec& vec) {
  require_axis(vec.axis(), map.parent_axis(), "lift");
  std::vector<double> out(map.child_axis().size());
  kernels::parallel::take(vec.values(), map.entries(), out);
  return TypedVec(map.child_axis(), std::move(out));
}

IndexArray reindex(const AxisMap& map, const IndexArray& idx) {
  require_axis(idx.source_axis(), map.child_axis(), "reindex");
  require_dataset(idx.dataset(), map.dataset(), "reindex");
  std::vector<Index> out(idx.size());
  kernels::parallel::take(map.entries(), idx.indices(), out);
  return IndexArray(map.parent_axis(), idx.dataset(), std::move(out));
}

double gaussian_loglik(const ObsArray& obs, const ObsArray& mu, double sigma) {
  require_dataset(mu.dataset(), obs.dataset(), "gaussian_loglik");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::DomainError, "gaussian_loglik: sigma must be positive and finite");
  }
  return kernels::parallel::normal_loglik(obs.values(), mu.values(), sigma);
}

double gaussian_loglik(const TypedVec& values, const TypedVec& mean, double sigma) {
  require_axis(mean.axis(), values.axis(), "gaussian_loglik");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::DomainError, "gaussian_loglik: sigma must be positive and finite");
  }
  return kernels::parallel::normal_loglik(values.values(), mean.values(), sigma);
}

AxisMap make_identity_map(const AxisTag& axis, const DatasetTag& dataset) {
  std::vector<Index> entries(axis.size());
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = i;
  return AxisMap(axis, axis, dataset, std::move(entries));
}

std::string type_name(const TypedVec& v) { return "Vec[" + v.axis().name() + "]"; }

std::string type_name(const IndexArray& i) {
  return "Idx[" + i.source_axis().name() + ", " + i.dataset().name() + "]";
}

std::string type_name(const AxisMap& m) {
  return "Map[" + m.parent_axis().name() + ", " + m.child_axis().name() + ", " +
         m.dataset().name() + "]";
}

std::string type_name(const ObsArray& o) { return "Obs[" + o.dataset().name() + "]"; }

}  // namespace geist
