#include <cmath>
#include <sstream>

#include "doctest.h"
#include "patternfront/io.hpp"

using namespace patternfront;

TEST_CASE("doubles round-trip through 17 significant digits") {
  for (const double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e-5}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(format_double(-0.0) == "0");
}

TEST_CASE("csv layout") {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({1.0, 0.5});
  t.add_row({-2.0, NAN});
  std::ostringstream out;
  write_csv(out, t, "abc123");
  CHECK(out.str() == "# manifest_digest=abc123\na,b\n1,0.5\n-2,nan\n");
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("digests are content hashes") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  const ModelParams p = ModelParams::make(3.0, 7.0, 0.0, 0.1);
  const RunManifest a = RunManifest::make("front", p, "x=1\n");
  const RunManifest b = RunManifest::make("front", p, "x=1\n");
  const RunManifest c = RunManifest::make("front", p.with_gamma(1.0), "x=1\n");
  const RunManifest d = RunManifest::make("front", p, "x=2\n");
  CHECK(a.digest == b.digest);
  CHECK(a.digest != c.digest);
  CHECK(a.digest != d.digest);
  const nlohmann::json j = a.to_json("2000-01-01T00:00:00Z");
  CHECK(j["digest"] == a.digest);
  CHECK(j["timestamp"] == "2000-01-01T00:00:00Z");
  CHECK(params_json(p)["c0"] == 7.0);
}
