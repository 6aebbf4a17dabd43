#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <rotorchan/config.hpp>
#include <rotorchan/storage.hpp>

using namespace rotorchan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rotorchan-test-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("content hash matches published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64(std::string("foobar")) == 0x85944171f73967e8ull);
  CHECK(hash_hex(0xcbf29ce484222325ull) == "cbf29ce484222325");
  CHECK(hash_hex(0x1ull) == "0000000000000001");
}

TEST_CASE("atomic text write replaces content without partial states") {
  TempDir dir;
  const std::string target = dir.file("note.txt");
  atomic_write_text(target, "first\n");
  CHECK(slurp(target) == "first\n");
  atomic_write_text(target, "second\n");
  CHECK(slurp(target) == "second\n");
  // No temp litter is left next to the target.
  int entries = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("operator container round-trips bit-exactly") {
  TempDir dir;
  OperatorRecord rec;
  rec.kind = "test-operator";
  rec.params = {{"alpha", 2.0}, {"b", 0.1}};
  rec.data = Matrix(2, 3);
  rec.data << cxd(1.0, -2.0), cxd(0.0, 0.5), cxd(-3.25, 0.0), cxd(1e-300, 0.0),
      cxd(0.0, 0.0), cxd(7.0, 7.0);

  const std::string path = dir.file("op.rcop");
  save_operator(rec, path);
  OperatorRecord back = load_operator(path);
  CHECK(back.kind == rec.kind);
  REQUIRE(back.params.size() == 2);
  CHECK(back.params[0].first == "alpha");
  CHECK(back.params[0].second == 2.0);
  REQUIRE(back.data.rows() == 2);
  REQUIRE(back.data.cols() == 3);
  CHECK((back.data - rec.data).cwiseAbs().maxCoeff() == 0.0);

  CHECK(slurp(path).substr(0, 4) == "RCOP");
  CHECK_THROWS_AS(load_operator(dir.file("missing.rcop")), ConfigError);
}

TEST_CASE("sparse channel container round-trips exactly") {
  TempDir dir;
  KoopmanChannel chan = build_koopman_channel(4, MapParams{1.9, 1.9, 0.35},
                                              Axis::R1);
  const std::string path = dir.file("koopman.txt");
  save_koopman_sparse(chan, path);
  KoopmanChannel back = load_koopman_sparse(path);
  CHECK(back.cutoff == chan.cutoff);
  CHECK(back.alpha == chan.alpha);
  CHECK(back.b == chan.b);
  CHECK(back.axis == chan.axis);
  CHECK((RealMatrix(back.matrix) - RealMatrix(chan.matrix)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("csv writers emit stable parseable tables") {
  TempDir dir;

  SpectralDecomposition sd;
  sd.values = {cxd(1.0, 0.0), cxd(0.3, 0.4), cxd(0.3, -0.4)};
  sort_and_pair(sd);
  const std::string eig = dir.file("eig.csv");
  write_eigenvalue_csv(eig, "cafe", sd);
  const std::string text = slurp(eig);
  CHECK(text.rfind("run_id,index,re,im,modulus,real_flag,pair_index\n", 0) == 0);
  CHECK(text.find("cafe,0,1,0,1,1,-1\n") != std::string::npos);

  write_eigenvalue_csv(eig, "cafe", sd);
  CHECK(slurp(eig) == text);  // rewrite is byte-stable

  CHECK(format_sweep_row({0.5, 0.25, "dense", 0.0}) == "0.5,0.25,dense,0");

  const std::string sweep = dir.file("sweep.csv");
  write_sweep_csv(sweep, {{0.5, 0.25, "dense", 0.0}});
  CHECK(slurp(sweep) ==
        "alpha,lambda1_abs,backend,residual\n0.5,0.25,dense,0\n");

  const std::string radii = dir.file("radii.csv");
  write_radii_csv(radii, {{60, 0.1, 0.25, 0.5, 0.75, 0.75}});
  // %.17g keeps the round-trip contract; 0.1 carries its full mantissa.
  CHECK(slurp(radii) ==
        "N,b,r_in,r_out,ep,ep_bessel\n60,0.10000000000000001,0.25,0.5,0.75,0.75\n");

  const std::string corr = dir.file("corr.csv");
  write_correlation_csv(corr, {{0, cxd(1.0, 0.0)}, {1, cxd(0.0, -0.5)}});
  CHECK(slurp(corr) == "t,re,im,abs\n0,1,0,1\n1,0,-0.5,0.5\n");
}

TEST_CASE("sweep progress sidecar honours config hash and row hashes") {
  TempDir dir;
  const std::string path = dir.file("progress.json");
  CHECK(load_sweep_progress(path, "h1").empty());

  append_sweep_progress(path, "h1", {0.0, 0.9975, "iterative", 1e-12});
  append_sweep_progress(path, "h1", {0.25, 0.99, "iterative", 1e-12});
  auto rows = load_sweep_progress(path, "h1");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].alpha == 0.0);
  CHECK(rows[1].alpha == 0.25);
  CHECK(rows[1].lambda1_abs == 0.99);

  // A different config hash invalidates the sidecar.
  CHECK(load_sweep_progress(path, "h2").empty());

  // Tampering with any stored row discards everything.
  std::string text = slurp(path);
  const auto pos = text.find("0.9975");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "0.9976");
  atomic_write_text(path, text);
  CHECK(load_sweep_progress(path, "h1").empty());
}

TEST_CASE("manifest appends entries and rejects corrupt files") {
  TempDir dir;
  const std::string manifest = dir.file("manifest.json");
  const std::string artifact = dir.file("data.csv");
  atomic_write_text(artifact, "x,y\n1,2\n");

  ManifestEntry entry;
  entry.run_id = "0123456789abcdef";
  entry.command = "spectrum";
  entry.started = "2026-01-01T00:00:00Z";
  entry.finished = "2026-01-01T00:00:01Z";
  entry.tool_version = "test 0.0.0";
  entry.seed = 7;
  entry.config = {{"system.kind", "quantum"}};
  entry.outputs = {artifact};

  append_manifest(manifest, entry);
  entry.command = "radii";
  append_manifest(manifest, entry);

  const std::string text = slurp(manifest);
  CHECK(text.find("\"spectrum\"") != std::string::npos);
  CHECK(text.find("\"radii\"") != std::string::npos);
  CHECK(text.find(hash_hex(fnv1a64("x,y\n1,2\n"))) != std::string::npos);

  atomic_write_text(manifest, "not json at all");
  CHECK_THROWS_AS(append_manifest(manifest, entry), ConfigError);
}

TEST_CASE("config dump and parse are inverse maps") {
  Config cfg;
  const std::string dump = serialize_config(cfg);
  Config back = parse_config_text(dump);
  CHECK(serialize_config(back) == dump);

  cfg.system.kind = "classical";
  cfg.system.cutoff = 33;
  cfg.system.alpha1 = 3.75;
  cfg.modes.indices = {0, 2, 7};
  cfg.radii.n_list = {10, 12};
  cfg.run.seed = 123456789012345ull;
  cfg.solver.tol = 2.5e-9;
  const std::string dump2 = serialize_config(cfg);
  Config back2 = parse_config_text(dump2);
  CHECK(serialize_config(back2) == dump2);
  CHECK(back2.modes.indices == std::vector<int>{0, 2, 7});
  CHECK(back2.run.seed == 123456789012345ull);
}

TEST_CASE("overrides are typed and reject unknown paths") {
  Config cfg;
  apply_override(cfg, "system.n=80");
  CHECK(cfg.system.n == 80);
  apply_override(cfg, "system.alpha1=2.5");
  CHECK(cfg.system.alpha1 == 2.5);
  apply_override(cfg, "solver.backend=dense");
  CHECK(cfg.solver.backend == "dense");
  apply_override(cfg, "modes.left=true");
  CHECK(cfg.modes.left);
  apply_override(cfg, "modes.indices=1,3,5");
  CHECK(cfg.modes.indices == std::vector<int>{1, 3, 5});

  CHECK_THROWS_AS(apply_override(cfg, "system.bogus=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "system.n=abc"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "no_equals_sign"), ConfigError);
}

TEST_CASE("validation names the offending field") {
  auto expect_reject = [](const std::string& override_text) {
    Config cfg;
    apply_override(cfg, override_text);
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  };
  expect_reject("system.kind=banana");
  expect_reject("system.n=61");
  expect_reject("system.n=0");
  expect_reject("system.cutoff=0");
  expect_reject("solver.backend=banana");
  expect_reject("solver.k=0");
  expect_reject("solver.tol=0");
  expect_reject("grid.size=1");
  expect_reject("grid.colormap=sepia");
  expect_reject("ftse.t=0");
  expect_reject("sweep.steps=0");
  expect_reject("monte_carlo.samples=0");
  expect_reject("radii.n_list=1");
  expect_reject("run.jobs=0");

  Config good;
  validate_config(good);  // defaults must pass

  // Sweep bounds must be ordered.
  Config cfg;
  apply_override(cfg, "sweep.alpha_min=5");
  apply_override(cfg, "sweep.alpha_max=1");
  CHECK_THROWS_AS(validate_config(cfg), ConfigError);
}

TEST_CASE("manifest timestamps are iso utc shaped") {
  const std::string ts = timestamp_utc();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts[16] == ':');
  CHECK(ts[19] == 'Z');
}
