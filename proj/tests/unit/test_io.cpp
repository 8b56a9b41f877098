#include "fem_accuracy/io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>

using namespace fem_accuracy;

TEST_CASE("doubles round-trip through their text form") {
  for (double v : {0.1, 1.0 / 3.0, 2.220446049250313e-16, 123456789.123, -7.5e-300}) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_optional(std::nullopt).empty());
}

TEST_CASE("basis JSON carries exact nodes and coefficients") {
  const auto j = to_json(build_basis(1, 2));
  CHECK(j["size"] == 3);
  CHECK(j["functions"][1]["multi_index"] == Json::array({1, 1}));
  CHECK(j["functions"][1]["node"] == Json::array({"1/2", "1/2"}));
  CHECK(j["functions"][1]["terms"][0]["coefficient"] == "4");
}

TEST_CASE("report JSON field names") {
  BoundReport r{"b", "x <= y", 1.0, 2.0, true, {}};
  const auto j = to_json(r);
  for (const char* key : {"bound_name", "paper_eq", "measured", "bound", "pass"}) CHECK(j.contains(key));
  NormResult n;
  n.value = std::numeric_limits<double>::infinity();
  CHECK(to_json(n)["value"] == "inf");
  const auto mj = to_json(uniform_mesh_1d(0.0, 1.0, 2));
  CHECK(mj["cells"].size() == 2);
  CHECK(mj["vertices"][2][0] == 1.0);
}
