#include <string_view>

#include "doctest.h"

#include "geist/phantom.hpp"

namespace ph = geist::phantom;

namespace {

struct State { static constexpr std::string_view name = "State"; };
struct County { static constexpr std::string_view name = "County"; };
struct Home { static constexpr std::string_view name = "Home"; };
struct Data { static constexpr std::string_view name = "Data"; };
struct Other { static constexpr std::string_view name = "Other"; };

template <typename V, typename I>
concept Gatherable = requires(const V& v, const I& i) { ph::gather(v, i); };

template <typename M, typename V>
concept Liftable = requires(const M& m, const V& v) { ph::lift(m, v); };

template <typename M, typename I>
concept Reindexable = requires(const M& m, const I& i) { ph::reindex(m, i); };

// Well-typed uses compile.
static_assert(Gatherable<ph::Vec<County>, ph::Idx<County, Data>>);
static_assert(Liftable<ph::Map<State, County, Data>, ph::Vec<State>>);
static_assert(Reindexable<ph::Map<State, County, Data>, ph::Idx<County, Data>>);

// Each of these is a type error.
static_assert(!Gatherable<ph::Vec<County>, ph::Idx<Home, Data>>);
static_assert(!Liftable<ph::Map<State, County, Data>, ph::Vec<County>>);
static_assert(!Reindexable<ph::Map<State, County, Data>, ph::Idx<State, Data>>);
static_assert(!Reindexable<ph::Map<State, County, Data>, ph::Idx<County, Other>>);
static_assert(!std::is_convertible_v<ph::Vec<County>, ph::Vec<Home>>);
static_assert(!ph::Tag<int>);

}  // namespace

TEST_CASE("typed gather, lift and reindex compute the dynamic results") {
  const ph::Vec<State> gamma({5.0, 7.0});
  const ph::Map<State, County, Data> state_of_county(2, {0, 0, 1}, 5);
  const ph::Idx<County, Data> county_idx(3, {0, 1, 1, 2, 2});

  const ph::Vec<County> gamma_county = ph::lift(state_of_county, gamma);
  CHECK(std::vector<double>(gamma_county.values().begin(), gamma_county.values().end()) ==
        std::vector<double>{5, 5, 7});

  const ph::Idx<State, Data> state_idx = ph::reindex(state_of_county, county_idx);
  const ph::Obs<Data> via_lift = ph::gather(gamma_county, county_idx);
  const ph::Obs<Data> via_reindex = ph::gather(gamma, state_idx);
  CHECK(via_lift.dynamic() == via_reindex.dynamic());
  CHECK(ph::gaussian_loglik(via_lift, via_reindex, 1.0) ==
        doctest::Approx(5 * -0.918938533204673));
}

TEST_CASE("wrapping a dynamic value checks its run-time tag") {
  const geist::TypedVec v(geist::AxisTag("County", 2), {1.0, 2.0});
  CHECK_NOTHROW(ph::Vec<County>{v});
  CHECK_THROWS_AS(ph::Vec<Home>{v}, geist::Error);
}
