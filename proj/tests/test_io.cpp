#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "splace/config.hpp"
#include "splace/errors.hpp"
#include "splace/image.hpp"
#include "splace/matrix_io.hpp"
#include "splace/placement_io.hpp"
#include "test_support.hpp"

using namespace splace;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("splace_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("binary matrix round trip is bit-exact") {
  TempDir tmp;
  DataMatrix x{test::random_matrix(7, 5, 201), {}};
  x.values(3, 2) = 1.0 / 3.0;  // not exactly representable in decimal
  const std::string path = tmp.file("m.spmx");
  write_matrix(x, path);
  const DataMatrix y = read_matrix(path);
  CHECK(y.values == x.values);
  CHECK_FALSE(y.grid.has_value());

  // write-read-write produces identical bytes
  const std::string path2 = tmp.file("m2.spmx");
  write_matrix(y, path2);
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("grid shape survives the round trip") {
  TempDir tmp;
  DataMatrix x{test::random_matrix(12, 3, 202), GridShape{3, 4}};
  write_matrix(x, tmp.file("g.spmx"));
  const DataMatrix y = read_matrix(tmp.file("g.spmx"));
  REQUIRE(y.grid.has_value());
  CHECK(y.grid->n_v == 3);
  CHECK(y.grid->n_h == 4);
  CHECK(y.values == x.values);
}

TEST_CASE("csv path round-trips to full precision") {
  TempDir tmp;
  DataMatrix x{test::random_matrix(6, 4, 203), GridShape{2, 3}};
  write_matrix(x, tmp.file("m.csv"));
  const DataMatrix y = read_matrix(tmp.file("m.csv"));
  CHECK(y.values == x.values);  // %.17g round trip is exact for doubles
  REQUIRE(y.grid.has_value());
  CHECK(y.grid->n_v == 2);

  // and the csv agrees with the binary path bit for bit
  write_matrix(x, tmp.file("m.spmx"));
  CHECK(read_matrix(tmp.file("m.spmx")).values == y.values);
}

TEST_CASE("malformed matrix files raise structured errors") {
  TempDir tmp;

  SUBCASE("empty file") {
    std::ofstream(tmp.file("empty.spmx")).close();
    CHECK_THROWS_AS(read_matrix(tmp.file("empty.spmx")), DataError);
  }

  SUBCASE("bad magic") {
    std::ofstream out(tmp.file("bad.spmx"), std::ios::binary);
    out << "XXXXjunkjunkjunk";
    out.close();
    CHECK_THROWS_WITH_AS(read_matrix(tmp.file("bad.spmx")),
                         doctest::Contains("magic"), DataError);
  }

  SUBCASE("truncated payload") {
    DataMatrix x{test::random_matrix(8, 8, 204), {}};
    write_matrix(x, tmp.file("t.spmx"));
    std::string bytes = slurp(tmp.file("t.spmx"));
    bytes.resize(bytes.size() - 11);
    std::ofstream out(tmp.file("t.spmx"), std::ios::binary | std::ios::trunc);
    out << bytes;
    out.close();
    CHECK_THROWS_WITH_AS(read_matrix(tmp.file("t.spmx")),
                         doctest::Contains("truncated"), DataError);
  }

  SUBCASE("dimension overflow") {
    std::string bytes = "SPMX";
    bytes += '\x01';
    bytes += '\x00';
    for (int i = 0; i < 4; ++i) bytes += '\xff';  // rows
    for (int i = 0; i < 4; ++i) bytes += '\xff';  // cols
    bytes += '\x00';
    bytes += '\x00';
    std::ofstream out(tmp.file("o.spmx"), std::ios::binary);
    out << bytes;
    out.close();
    CHECK_THROWS_WITH_AS(read_matrix(tmp.file("o.spmx")),
                         doctest::Contains("overflow"), DataError);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_matrix(tmp.file("nope.spmx")), DataError);
  }

  SUBCASE("non-finite values rejected") {
    std::ofstream out(tmp.file("nan.csv"));
    out << "2,1\nnan,1.0\n";
    out.close();
    CHECK_THROWS_AS(read_matrix(tmp.file("nan.csv")), DataError);
  }
}

TEST_CASE("field image export") {
  TempDir tmp;
  const GridShape grid{2, 3};

  SUBCASE("midpoint of a symmetric range is gray 128") {
    Eigen::VectorXd field = Eigen::VectorXd::Zero(6);
    export_field_image(field, grid, tmp.file("mid.pgm"), -1.0, 1.0);
    const std::string bytes = slurp(tmp.file("mid.pgm"));
    const std::string header = "P5\n3 2\n255\n";
    REQUIRE(bytes.size() == header.size() + 6);
    CHECK(bytes.substr(0, header.size()) == header);
    for (std::size_t i = header.size(); i < bytes.size(); ++i) {
      CHECK(static_cast<unsigned char>(bytes[i]) == 128);
    }
  }

  SUBCASE("endpoints map to 0 and 255, outliers clamp") {
    Eigen::VectorXd field(6);
    field << 0.0, 1.0, -5.0, 7.0, 0.5, 0.25;
    export_field_image(field, grid, tmp.file("r.pgm"), 0.0, 1.0);
    const std::string bytes = slurp(tmp.file("r.pgm"));
    REQUIRE(bytes.size() == 11 + 6);  // header "P5\n3 2\n255\n"
    const auto* pix = reinterpret_cast<const unsigned char*>(bytes.data() + 11);
    CHECK(pix[0] == 0);
    CHECK(pix[1] == 255);
    CHECK(pix[2] == 0);    // clamped below
    CHECK(pix[3] == 255);  // clamped above
    CHECK(pix[4] == 128);
    CHECK(pix[5] == 64);
  }

  SUBCASE("markers paint white") {
    Eigen::VectorXd field = Eigen::VectorXd::Zero(6);
    export_field_image(field, grid, tmp.file("m.pgm"), -1.0, 1.0, {5});
    const std::string bytes = slurp(tmp.file("m.pgm"));
    const auto* pix = reinterpret_cast<const unsigned char*>(bytes.data() + 11);
    CHECK(pix[5] == 255);
    CHECK(pix[0] == 128);
  }

  SUBCASE("degenerate range is rejected") {
    Eigen::VectorXd field = Eigen::VectorXd::Zero(6);
    CHECK_THROWS_AS(export_field_image(field, grid, tmp.file("x.pgm"), 1.0, 1.0),
                    ConfigError);
  }
}

TEST_CASE("placement json round trip") {
  TempDir tmp;
  Placement p;
  p.method = PlacementMethod::clique;
  p.indices = {4, 9, 44};
  p.params.c = 0.125;
  p.params.lambda1 = 1.0;
  p.params.lambda2 = 2.0;
  p.params.seed = 987654321;
  p.params.rank = 16;
  save_placement(p, tmp.file("p.json"));
  const Placement q = load_placement(tmp.file("p.json"));
  CHECK(q.method == PlacementMethod::clique);
  CHECK(q.indices == p.indices);
  CHECK(q.params.c == p.params.c);
  CHECK(q.params.seed == p.params.seed);
  CHECK(q.params.rank == p.params.rank);
}

TEST_CASE("config parsing") {
  SUBCASE("defaults and overrides") {
    const ExperimentConfig cfg = parse_config_text(
        "# comment\n"
        "nv = 32\n"
        "nh = 48\n"
        "snapshots = 64\n"
        "modes = 4\n"
        "q = 8, 16\n"
        "methods = clique, random\n"
        "candidates = 100\n"
        "seed = 42\n"
        "reconstruction = lasso\n");
    CHECK(cfg.synthetic.grid.n_v == 32);
    CHECK(cfg.synthetic.grid.n_h == 48);
    CHECK(cfg.q_list == std::vector<std::size_t>{8, 16});
    REQUIRE(cfg.methods.size() == 2);
    CHECK(cfg.methods[0] == PlacementMethod::clique);
    CHECK(cfg.methods[1] == PlacementMethod::random);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.reconstruction == ReconstructionMethod::lasso);
    CHECK(cfg.use_synthetic());
    CHECK(cfg.lambda1 == 1.0);
    CHECK(cfg.lambda2 == 2.0);
    CHECK(cfg.trials == 32);
    CHECK(cfg.candidates == 100);
  }

  SUBCASE("unknown keys are errors, not silent typos") {
    CHECK_THROWS_WITH_AS(parse_config_text("sweeeps = 100\n"),
                         doctest::Contains("sweeeps"), ConfigError);
  }

  SUBCASE("bad values are reported with the key") {
    CHECK_THROWS_WITH_AS(parse_config_text("trials = many\n"),
                         doctest::Contains("trials"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("methods = psychic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("q = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("lambda1 = 3\nlambda2 = 2\n"), ConfigError);
  }

  SUBCASE("missing separator") {
    CHECK_THROWS_WITH_AS(parse_config_text("just a line\n"),
                         doctest::Contains("key = value"), ConfigError);
  }
}
