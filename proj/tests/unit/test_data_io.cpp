#include "doctest.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <random>

#include "geist/runtime/data_io.hpp"
#include "support.hpp"

using namespace geist::runtime;

TEST_CASE("read_column skips blank lines and records line numbers") {
  testsupport::ScratchDir dir("data_io");
  const auto path = dir.path() / "c.csv";
  testsupport::write_file(path, "a\n1\n\n2.5\r\n  3 \n");
  const auto col = read_column(path);
  CHECK(col.header == "a");
  CHECK(col.cells == std::vector<std::string>{"1", "2.5", "3"});
  CHECK(col.lines == std::vector<std::size_t>{2, 4, 5});
}

TEST_CASE("read_column errors") {
  testsupport::ScratchDir dir("data_io_err");
  CHECK_THROWS_AS(read_column(dir.path() / "missing.csv"), DataFileError);
  testsupport::write_file(dir.path() / "empty.csv", "");
  CHECK_THROWS_AS(read_column(dir.path() / "empty.csv"), DataFileError);
}

TEST_CASE("write_column round-trips doubles and indices exactly") {
  testsupport::ScratchDir dir("data_io_rt");
  std::mt19937_64 gen(7);
  std::vector<double> values;
  for (int i = 0; i < 500; ++i) {
    values.push_back(std::ldexp(static_cast<double>(gen() >> 11), -30 - static_cast<int>(gen() % 40)) *
                     ((gen() & 1) ? -1.0 : 1.0));
  }
  values.push_back(0.1);
  values.push_back(std::numeric_limits<double>::max());
  values.push_back(std::numeric_limits<double>::denorm_min());
  write_column(dir.path() / "v.csv", "v", values);
  const auto col = read_column(dir.path() / "v.csv");
  REQUIRE(col.cells.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double back = 0.0;
    const auto& cell = col.cells[i];
    std::from_chars(cell.data(), cell.data() + cell.size(), back);
    CHECK(back == values[i]);
  }

  const std::vector<std::size_t> idx{0, 3, 17, 2};
  write_column(dir.path() / "i.csv", "i", idx);
  CHECK(testsupport::read_file(dir.path() / "i.csv") == "i\n0\n3\n17\n2\n");
}

TEST_CASE("format_double is the shortest round-trip spelling") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(1e21) == "1e+21");
}
