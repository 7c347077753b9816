#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "nbcc/sim.hpp"

using nbcc::ExperimentConfig;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path(name) {}
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".json").c_str());
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.ms = 4;
    cfg.p = 2;
    cfg.N = 16;
    cfg.Z = 4;
    cfg.ebn0_grid = {2.0, 4.0};
    cfg.max_iter = 10;
    cfg.min_error_events = 3;
    cfg.max_frames = 30;
    cfg.noise_seed = 555;
    return cfg;
}

bool records_equal(const std::vector<nbcc::BerRecord>& a, const std::vector<nbcc::BerRecord>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].frames != b[i].frames || a[i].bit_errors != b[i].bit_errors ||
            a[i].symbol_errors != b[i].symbol_errors || a[i].frame_errors != b[i].frame_errors ||
            a[i].ber != b[i].ber || a[i].fer != b[i].fer || a[i].mean_iters != b[i].mean_iters ||
            a[i].censored != b[i].censored)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("transmitted symbol accounting per rate mode") {
    ExperimentConfig cfg = tiny_config(); // W = 20 time units
    CHECK(nbcc::transmitted_symbols(cfg) == 40);
    CHECK(nbcc::transmitted_rate(cfg) == doctest::Approx(0.4).epsilon(1e-12));

    cfg.rate = nbcc::RateMode::puncture34;
    CHECK(nbcc::transmitted_symbols(cfg) == 26); // 20 info + 6 surviving parity
    CHECK(nbcc::transmitted_rate(cfg) == doctest::Approx(16.0 / 26.0).epsilon(1e-12));

    cfg.rate = nbcc::RateMode::puncture56;
    CHECK(nbcc::transmitted_symbols(cfg) == 24);

    cfg.rate = nbcc::RateMode::puncture78;
    CHECK(nbcc::transmitted_symbols(cfg) == 22);

    cfg.rate = nbcc::RateMode::repeat14;
    CHECK(nbcc::transmitted_symbols(cfg) == 80);
    CHECK(nbcc::transmitted_rate(cfg) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("config validation rejects degenerate settings") {
    ExperimentConfig cfg = tiny_config();
    cfg.ebn0_grid.clear();
    CHECK_THROWS_AS(nbcc::run_ber_sweep(cfg), std::invalid_argument);

    cfg = tiny_config();
    cfg.N = 0;
    CHECK_THROWS_AS(nbcc::run_ber_sweep(cfg), std::invalid_argument);

    cfg = tiny_config();
    cfg.p = 1;
    cfg.rate = nbcc::RateMode::repeat14;
    CHECK_THROWS_AS(nbcc::run_ber_sweep(cfg), std::invalid_argument);

    cfg = tiny_config();
    cfg.min_error_events = 0;
    CHECK_THROWS_AS(nbcc::run_ber_sweep(cfg), std::invalid_argument);

    cfg = tiny_config();
    CHECK_THROWS_AS(nbcc::run_instance_study(cfg), std::invalid_argument);
}

TEST_CASE("sweeps are byte-identical across worker counts") {
    TempFile a("sim_det_a.csv"), b("sim_det_b.csv");

    ExperimentConfig cfg = tiny_config();
    cfg.output_path = a.path;
    setenv("NBCC_WORKERS", "1", 1);
    const auto ra = nbcc::run_ber_sweep(cfg);

    cfg.output_path = b.path;
    setenv("NBCC_WORKERS", "3", 1);
    const auto rb = nbcc::run_ber_sweep(cfg);
    unsetenv("NBCC_WORKERS");

    CHECK(records_equal(ra, rb));
    CHECK(slurp(a.path) == slurp(b.path));
    CHECK(!slurp(a.path).empty());

    // repeated run with identical settings also matches
    cfg.output_path.clear();
    const auto rc = nbcc::run_ber_sweep(cfg);
    CHECK(records_equal(rb, rc));
}

TEST_CASE("csv files carry the expected header and one row per grid point") {
    TempFile f("sim_csv.csv");
    ExperimentConfig cfg = tiny_config();
    cfg.output_path = f.path;
    const auto records = nbcc::run_ber_sweep(cfg);
    std::istringstream in(slurp(f.path));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "ebn0_db,frames,bit_errors,frame_errors,ber,fer,mean_iters");
    int rows = 0;
    while (std::getline(in, line)) rows += !line.empty();
    CHECK(rows == int(records.size()));
    CHECK(records.size() == cfg.ebn0_grid.size());
    CHECK(!slurp(f.path + ".json").empty());
}

TEST_CASE("high snr points decode everything within the frame budget") {
    ExperimentConfig cfg = tiny_config();
    cfg.ebn0_grid = {12.0};
    cfg.min_error_events = 5;
    cfg.max_frames = 15;
    const auto records = nbcc::run_ber_sweep(cfg);
    REQUIRE(records.size() == 1);
    CHECK(records[0].frames == 15);
    CHECK(records[0].bit_errors == 0);
    CHECK(records[0].ber == 0.0);
    CHECK(records[0].censored); // budget exhausted before enough error events
    CHECK(records[0].mean_iters > 0.0);
}

TEST_CASE("instance studies average the per-seed curves") {
    ExperimentConfig cfg = tiny_config();
    cfg.code_seeds = {1, 2};
    cfg.ebn0_grid = {1.0};
    cfg.min_error_events = 4;
    cfg.max_frames = 20;
    const nbcc::InstanceStudy study = nbcc::run_instance_study(cfg);
    REQUIRE(study.per_seed.size() == 2);
    REQUIRE(study.average.size() == 1);
    CHECK(study.average[0].ber ==
          doctest::Approx(0.5 * (study.per_seed[0][0].ber + study.per_seed[1][0].ber))
              .epsilon(1e-12));
    CHECK(study.average[0].frames == study.per_seed[0][0].frames + study.per_seed[1][0].frames);
    CHECK(study.average[0].bit_errors ==
          study.per_seed[0][0].bit_errors + study.per_seed[1][0].bit_errors);
}

TEST_CASE("memory sweeps run one curve per configured memory") {
    ExperimentConfig cfg = tiny_config();
    cfg.ebn0_grid = {3.0};
    cfg.max_frames = 10;
    cfg.min_error_events = 2;
    const auto sweep = nbcc::run_ms_sweep({4, 6}, cfg);
    REQUIRE(sweep.size() == 2);
    CHECK(sweep[0].ms == 4);
    CHECK(sweep[1].ms == 6);
    CHECK(sweep[0].records.size() == 1);
    CHECK(sweep[1].records.size() == 1);
    CHECK_THROWS_AS(nbcc::run_ms_sweep({}, cfg), std::invalid_argument);
}

TEST_CASE("window-mode sweeps are deterministic too") {
    ExperimentConfig cfg = tiny_config();
    cfg.decoder = nbcc::DecoderMode::window;
    cfg.window_stages = 3;
    cfg.ebn0_grid = {3.0};
    cfg.max_frames = 12;
    cfg.min_error_events = 2;

    setenv("NBCC_WORKERS", "2", 1);
    const auto ra = nbcc::run_ber_sweep(cfg);
    setenv("NBCC_WORKERS", "5", 1);
    const auto rb = nbcc::run_ber_sweep(cfg);
    unsetenv("NBCC_WORKERS");
    CHECK(records_equal(ra, rb));
    REQUIRE(ra.size() == 1);
    CHECK(ra[0].mean_iters == doctest::Approx(3.0)); // stages x iters_per_stage
}
