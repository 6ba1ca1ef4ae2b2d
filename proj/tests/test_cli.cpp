#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using patternfront::cli::run;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("patternfront_cli_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int call(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int rc = run(args, out, err);
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("spectrum output is deterministic and carries the digest") {
  const fs::path a = fresh_dir("spec_a"), b = fresh_dir("spec_b");
  for (const fs::path& d : {a, b})
    REQUIRE(call({"spectrum", "--out", d.string(), "--eps-list", "0.01,0", "--extended"}) == 0);
  for (const char* f : {"spectrum_eps_0.01.csv", "spectrum_eps_0.csv", "extended_spectrum.csv",
                        "gap_summary.json", "extended_gap.json"})
    CHECK(slurp(a / f) == slurp(b / f));
  const auto manifest = nlohmann::json::parse(slurp(a / "spectrum_manifest.json"));
  const std::string digest = manifest["digest"];
  CHECK(slurp(a / "spectrum_eps_0.01.csv").rfind("# manifest_digest=" + digest + "\n", 0) == 0);
  CHECK(manifest.contains("timestamp"));

  const auto gap = nlohmann::json::parse(slurp(a / "gap_summary.json"));
  CHECK(gap["entries"][0]["central_count"] == 6);
  CHECK(gap["entries"][1]["all_imaginary"] == true);
  CHECK(gap["manifest_digest"] == digest);
  const auto ext = nlohmann::json::parse(slurp(a / "extended_gap.json"));
  CHECK(ext["central_count"] == 5);
}

TEST_CASE("different options change the digest") {
  const fs::path a = fresh_dir("dig_a"), b = fresh_dir("dig_b");
  REQUIRE(call({"spectrum", "--out", a.string(), "--n-max", "10"}) == 0);
  REQUIRE(call({"spectrum", "--out", b.string(), "--n-max", "11"}) == 0);
  CHECK(nlohmann::json::parse(slurp(a / "spectrum_manifest.json"))["digest"] !=
        nlohmann::json::parse(slurp(b / "spectrum_manifest.json"))["digest"]);
}

TEST_CASE("front precondition violation exits with code 2") {
  std::string err;
  CHECK(call({"front", "--out", fresh_dir("bad_front").string(), "--c0", "4"}, &err) == 2);
  CHECK(err.find("c0^2 > 16 alpha0") != std::string::npos);
  CHECK(std::count(err.begin(), err.end(), '\n') == 1);
}

TEST_CASE("config errors report line numbers and exit with code 2") {
  const fs::path d = fresh_dir("cfg");
  fs::create_directories(d);
  std::ofstream(d / "bad.cfg") << "alpha0 = 3\nc0 = 7\ngamma = zero\neps = 0.1\n";
  std::string err;
  CHECK(call({"periodic", "--config", (d / "bad.cfg").string(), "--out", d.string()}, &err) == 2);
  CHECK(err.find("line 3") != std::string::npos);
  std::ofstream(d / "ok.cfg") << "alpha0 = 3\nc0 = 7\ngamma = 1\neps = 0.05\n";
  CHECK(call({"periodic", "--config", (d / "ok.cfg").string(), "--out", d.string()}) == 0);
  const auto j = nlohmann::json::parse(slurp(d / "periodic.json"));
  CHECK(j["params"]["gamma"] == 1.0);
  CHECK(j["residual_norm"].get<double>() < 1e-11);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(call({}) == 2);
  CHECK(call({"nonsense"}) == 2);
  CHECK(call({"spectrum", "--no-such-flag"}) == 2);
  CHECK(call({"--help"}) == 0);
}

TEST_CASE("numerical failures exit with code 3") {
  CHECK(call({"simulate", "--out", fresh_dir("blowup").string(), "--initial", "flat", "--perturb",
              "0.5", "--eps", "1", "--alpha0", "100", "--scheme", "imex1", "--dt", "0.1",
              "--t-end", "100", "--n-grid", "64", "--n-periods", "4"}) == 3);
}

TEST_CASE("reduced sweep writes one trajectory per gamma") {
  const fs::path d = fresh_dir("sweep");
  REQUIRE(call({"reduced", "--out", d.string(), "--gammas", "0,0.5,1,2,5"}) == 0);
  for (const char* g : {"0", "0.5", "1", "2", "5"})
    CHECK(fs::exists(d / ("trajectory_gamma_" + std::string(g) + ".csv")));
  const auto s = nlohmann::json::parse(slurp(d / "reduced_summary.json"));
  CHECK(s["sweep"].size() == 5);
  for (const auto& e : s["sweep"]) CHECK(e["outcome"] == "success");
  CHECK(s["sweep"][0]["fixed_points"][1]["signature"] == "+0---");
}

TEST_CASE("front artifacts and the output directory override") {
  const fs::path d = fresh_dir("front_env");
  ::setenv("PATTERNFRONT_OUT", d.string().c_str(), 1);
  const int rc = call({"front", "--out", "ignored_dir", "--n-grid", "1024", "--n-periods", "48"});
  ::unsetenv("PATTERNFRONT_OUT");
  REQUIRE(rc == 0);
  CHECK_FALSE(fs::exists("ignored_dir"));
  CHECK(fs::exists(d / "front_field.csv"));
  const auto h = nlohmann::json::parse(slurp(d / "front_field.json"));
  CHECK(h["grid"]["n"] == 1024);
  CHECK(h["time"] == 0.0);
}

TEST_CASE("seeded perturbations are reproducible") {
  const fs::path a = fresh_dir("seed_a"), b = fresh_dir("seed_b"), c = fresh_dir("seed_c");
  const std::vector<std::string> base = {"simulate", "--perturb", "0.01", "--t-end", "1",
                                         "--n-grid", "256", "--n-periods", "16"};
  auto with = [&](const fs::path& d, const char* seed) {
    std::vector<std::string> args = base;
    args.insert(args.end(), {"--out", d.string(), "--seed", seed});
    return call(args);
  };
  REQUIRE(with(a, "5") == 0);
  REQUIRE(with(b, "5") == 0);
  REQUIRE(with(c, "6") == 0);
  CHECK(slurp(a / "simulate_field.csv") == slurp(b / "simulate_field.csv"));
  CHECK(slurp(a / "simulate_field.csv") != slurp(c / "simulate_field.csv"));
}

TEST_CASE("thread count does not change results") {
  const fs::path a = fresh_dir("thr_a"), b = fresh_dir("thr_b");
  REQUIRE(call({"simulate", "--out", a.string(), "--threads", "1", "--t-end", "2"}) == 0);
  REQUIRE(call({"simulate", "--out", b.string(), "--threads", "3", "--t-end", "2"}) == 0);
  CHECK(slurp(a / "simulate_field.csv") == slurp(b / "simulate_field.csv"));
}

TEST_CASE("validate runs selected checks") {
  const fs::path d = fresh_dir("validate");
  std::ostringstream out, err;
  CHECK(run({"validate", "--out", d.string(), "--only", "2,5"}, out, err) == 0);
  CHECK(out.str().find("PASS [2]") != std::string::npos);
  CHECK(out.str().find("PASS [5]") != std::string::npos);
}
