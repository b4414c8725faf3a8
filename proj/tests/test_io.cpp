#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "disi/vec.hpp"
#include "disi/errors.hpp"
#include "disi/io.hpp"

using namespace disi;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("disi_io_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path operator/(const std::string& name) const { return path / name; }
};

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_CASE("doubles round-trip through text") {
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("CSV round trip") {
    TempDir tmp;
    const std::vector<std::vector<double>> rows{{0.1, -2.5}, {1.0 / 7.0, 3e-9}};
    write_csv(tmp / "a.csv", {"u", "v"}, rows);
    const CsvTable t = read_csv(tmp / "a.csv");
    CHECK(t.header == std::vector<std::string>{"u", "v"});
    CHECK(t.rows == rows);

    const Cloud c = make_scurve(50, 0.05, 111);
    write_cloud(tmp / "c.csv", c);
    CHECK(read_cloud(tmp / "c.csv") == c);
    CHECK(slurp(tmp / "c.csv").rfind("x_1,x_2\n", 0) == 0);
}

TEST_CASE("dataset files keep pairs and metadata") {
    TempDir tmp;
    const ToyDataset d = make_scurve_dataset(40, 0.05, 0.5, 0.1, 112);
    write_dataset(tmp / "d.csv", d);
    CHECK(fs::exists(sidecar_path(tmp / "d.csv")));
    CHECK(slurp(tmp / "d.csv").rfind("x0_1,x0_2,x1_1,x1_2\n", 0) == 0);
    const ToyDataset e = read_dataset(tmp / "d.csv");
    REQUIRE(e.pairs.size() == d.pairs.size());
    for (std::size_t k = 0; k < d.pairs.size(); ++k) {
        CHECK(e.pairs[k].x0 == d.pairs[k].x0);
        CHECK(e.pairs[k].x1 == d.pairs[k].x1);
    }
    CHECK(e.rho_hat == d.rho_hat);
    CHECK(e.sigma_d == d.sigma_d);
    CHECK(e.provenance["seed"] == 112);
    CHECK(e.provenance["params"]["strength"] == 0.5);
}

TEST_CASE("checkpoints are byte-stable") {
    TempDir tmp;
    Rng rng = make_rng(113, 0);
    MlpConfig cfg;
    cfg.hidden = 8;
    cfg.emb_dim = 4;
    MlpDenoiser m(cfg, 1.0, 0.4, rng);
    m.net().params().setRandom();
    Eigen::VectorXd ema = m.net().params() * 0.5;
    save_checkpoint(tmp / "m.json", Checkpoint::from(m, ema));
    const Checkpoint back = load_checkpoint(tmp / "m.json");
    save_checkpoint(tmp / "m2.json", back);
    CHECK(slurp(tmp / "m.json") == slurp(tmp / "m2.json"));
    CHECK(back.weights == m.net().params());
    CHECK(back.rho == 0.4);
    const Vec x{0.2, -0.1}, x1{0.5, 0.3};
    CHECK(back.model(false).predict(x, x1, 0.1, 0.2) == m.predict(x, x1, 0.1, 0.2));
    CHECK(back.model(true).net().params() == ema);
}

TEST_CASE("bad inputs raise IoError") {
    TempDir tmp;
    CHECK_THROWS_AS(read_csv(tmp / "missing.csv"), IoError);
    spit(tmp / "empty.csv", "");
    CHECK_THROWS_AS(read_csv(tmp / "empty.csv"), IoError);
    spit(tmp / "ragged.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(read_csv(tmp / "ragged.csv"), IoError);
    spit(tmp / "text.csv", "a,b\n1,zz\n");
    CHECK_THROWS_AS(read_csv(tmp / "text.csv"), IoError);
    spit(tmp / "bad.json", "{not json");
    CHECK_THROWS_AS(read_json(tmp / "bad.json"), IoError);

    Rng rng = make_rng(114, 0);
    MlpConfig cfg;
    cfg.hidden = 4;
    cfg.emb_dim = 4;
    nlohmann::json j = checkpoint_to_json(Checkpoint::from(MlpDenoiser(cfg, 1.0, 0.4, rng)));
    nlohmann::json wrong_version = j;
    wrong_version["version"] = 99;
    CHECK_THROWS_AS(checkpoint_from_json(wrong_version), IoError);
    nlohmann::json short_bias = j;
    short_bias["weights"][0]["b"].erase(0);
    CHECK_THROWS_AS(checkpoint_from_json(short_bias), IoError);
    nlohmann::json bad_widths = j;
    bad_widths["widths"][0] = 3;
    CHECK_THROWS_AS(checkpoint_from_json(bad_widths), IoError);
}
