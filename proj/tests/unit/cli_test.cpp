#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fusionqa/cli.hpp"
#include "fusionqa/error.hpp"
#include "fusionqa/image_io.hpp"

using namespace fusionqa;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run fusionqa_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fusionqa");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  fs::path dir = fs::temp_directory_path() / "fusionqa_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string p(const fs::path& path) { return path.string(); }

}  // namespace

TEST_CASE("usage errors exit 64") {
  CHECK(fusionqa_cli({}).code == cli::kUsage);
  CHECK(fusionqa_cli({"bogus"}).code == cli::kUsage);
  CHECK(fusionqa_cli({"evaluate", "--pan", "x.pgm"}).code == cli::kUsage);
  CHECK(fusionqa_cli({"edges", "--image", "x.pgm", "--nope"}).code == cli::kUsage);
  CHECK(fusionqa_cli({"hist", "--fused", "a", "--ms", "b", "--threshold", "x"}).code == cli::kUsage);
  CHECK(fusionqa_cli({"--help"}).code == 0);
}

TEST_CASE("fixtures then evaluate") {
  const fs::path dir = workdir() / "eval";
  fs::remove_all(dir);
  auto fx = fusionqa_cli({"fixtures", "--out", p(dir), "--width", "100", "--height", "80"});
  REQUIRE(fx.code == 0);
  for (const char* f : {"pan.pgm", "ms.ppm", "fused_hf0.ppm", "fused_hf1.ppm", "fused_shift.ppm"})
    CHECK(fs::exists(dir / f));
  CHECK(io::read_rgb(dir / "ms.ppm", "MS").width() == 20);

  const std::vector<std::string> base = {"evaluate", "--pan", p(dir / "pan.pgm"), "--ms", p(dir / "ms.ppm"),
                                         "--fused", "HF1=" + p(dir / "fused_hf1.ppm")};
  SUBCASE("writes report files") {
    auto args = base;
    args.insert(args.end(), {"--out", p(dir / "out")});
    auto r = fusionqa_cli(args);
    CHECK_MESSAGE(r.code == 0, r.err);
    CHECK(fs::exists(dir / "out" / "report.json"));
    CHECK(fs::exists(dir / "out" / "report.csv"));
    CHECK(fs::exists(dir / "out" / "csa_edges.svg"));
  }
  SUBCASE("missing image exits 2") {
    auto args = base;
    args[2] = p(dir / "nope.pgm");
    CHECK(fusionqa_cli(args).code == cli::kUnreadable);
  }
  SUBCASE("mismatched fused image exits 3") {
    const fs::path other = workdir() / "other";
    REQUIRE(fusionqa_cli({"fixtures", "--out", p(other), "--width", "50", "--height", "50"}).code == 0);
    auto args = base;
    args.back() = "X=" + p(other / "fused_hf1.ppm");
    CHECK(fusionqa_cli(args).code == cli::kDimensionMismatch);
  }
  SUBCASE("MS that is not an integer fraction of PAN exits 3") {
    io::write_ppm(dir / "odd.ppm", MultibandImage(Band(30, 30), Band(30, 30), Band(30, 30), "odd"));
    auto args = base;
    args[4] = p(dir / "odd.ppm");
    CHECK(fusionqa_cli(args).code == cli::kDimensionMismatch);
  }
  SUBCASE("bad region config exits 4") {
    std::ofstream(dir / "bad.json") << R"({"regions":[{"name":"r","x0":-1,"y0":0,"w":5,"h":5}]})";
    auto args = base;
    args.insert(args.end(), {"--config", p(dir / "bad.json")});
    CHECK(fusionqa_cli(args).code == cli::kBadConfig);
    std::ofstream(dir / "broken.json") << "{ not json";
    args.back() = p(dir / "broken.json");
    CHECK(fusionqa_cli(args).code == cli::kBadConfig);
  }
  SUBCASE("bad thresholds exit 4") {
    auto args = base;
    args.insert(args.end(), {"--thresholds", "40,20"});
    CHECK(fusionqa_cli(args).code == cli::kBadConfig);
  }
}

TEST_CASE("metric subcommands") {
  const fs::path dir = workdir() / "metrics";
  fs::create_directories(dir);

  SUBCASE("edges on a constant image") {
    io::write_pgm(dir / "flat.pgm", Band(20, 20, 60));
    auto r = fusionqa_cli({"edges", "--image", p(dir / "flat.pgm"), "--out", p(dir / "masks")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("edge_rate,PAN,edges@20,20,0,400") != std::string::npos);
    CHECK(fs::exists(dir / "masks" / "flat_PAN_t100.pgm"));
  }
  SUBCASE("mtf over a configured region") {
    std::vector<Intensity> px(20 * 20, 100);
    px[0] = 50;
    px[1] = 150;
    io::write_pgm(dir / "mtf.pgm", Band(20, 20, px));
    auto r = fusionqa_cli({"mtf", "--image", p(dir / "mtf.pgm"), "--region", "corner=0,0,4,4"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("michelson,PAN,corner,,0.5,16") != std::string::npos);
    CHECK(r.out.find("michelson,PAN,whole,,0.5,400") != std::string::npos);
    CHECK(fusionqa_cli({"mtf", "--image", p(dir / "mtf.pgm"), "--region", "corner=18,0,4,4"}).code ==
          cli::kBadConfig);
  }
  SUBCASE("snr --whole on an identical pair") {
    MultibandImage img(Band(10, 10, 4), Band(10, 10, 5), Band(10, 10, 6), "same");
    io::write_ppm(dir / "same.ppm", img);
    auto r = fusionqa_cli({"snr", "--whole", "--fused", p(dir / "same.ppm"), "--ms", p(dir / "same.ppm")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find(marker::kIdenticalImages) != std::string::npos);
  }
  SUBCASE("csa and hist") {
    REQUIRE(fusionqa_cli({"fixtures", "--out", p(dir / "fx"), "--width", "100", "--height", "80"}).code == 0);
    auto c = fusionqa_cli({"csa", "--image", p(dir / "fx" / "fused_hf1.ppm")});
    REQUIRE(c.code == 0);
    CHECK(c.out.find("homogeneous@60") != std::string::npos);
    auto h = fusionqa_cli({"hist", "--fused", "S=" + p(dir / "fx" / "fused_shift.ppm"), "--ms",
                           p(dir / "fx" / "ms.ppm"), "--out", p(dir / "hist")});
    REQUIRE(h.code == 0);
    CHECK(h.out.find("S,hist_delta,B,whole") != std::string::npos);
    CHECK(fs::exists(dir / "hist" / "overlay_whole_B.svg"));
  }
}
