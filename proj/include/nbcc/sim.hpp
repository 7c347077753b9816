#ifndef NBCC_SIM_HPP
#define NBCC_SIM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nbcc/code.hpp"
#include "nbcc/decoder.hpp"
#include "nbcc/rate_adapt.hpp"

namespace nbcc {

enum class RateMode { mother, puncture34, puncture56, puncture78, repeat14 };
enum class DecoderMode { block, window };

const char* rate_mode_name(RateMode m);
const char* decoder_mode_name(DecoderMode m);

struct ExperimentConfig {
    int ms = 52;
    int J = 2;
    int K = 4;
    int p = 8;
    std::vector<std::uint64_t> code_seeds{1};
    int N = 100;
    int Z = -1; // negative = m_s
    RateMode rate = RateMode::mother;
    std::uint64_t plan_seed = 7;
    std::vector<double> ebn0_grid;
    int max_iter = 50;
    DecoderMode decoder = DecoderMode::block;
    int window_stages = 6;
    int iters_per_stage = 1;
    int min_error_events = 100;
    long long max_frames = 0; // 0 = budget of 1e7 information bits
    std::uint64_t noise_seed = 12345;
    std::string output_path; // empty = no files written

    int termination_units() const { return Z < 0 ? ms : Z; }
};

struct BerRecord {
    double ebn0_db = 0.0;
    long long frames = 0;
    long long bit_errors = 0;
    long long symbol_errors = 0;
    long long frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double mean_iters = 0.0;
    bool censored = false; // stop rule hit the frame budget before enough error events
};

void validate_config(const ExperimentConfig& cfg);

// Number of transmitted symbols per frame and the resulting rate bN/tx.
long long transmitted_symbols(const ExperimentConfig& cfg);
double transmitted_rate(const ExperimentConfig& cfg);

// Monte-Carlo sweep over the Eb/N0 grid with the first code seed.  When
// output_path is set, writes the CSV there plus a JSON metadata sidecar at
// output_path + ".json".
std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& cfg);

struct InstanceStudy {
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<BerRecord>> per_seed;
    std::vector<BerRecord> average;
};

// Independent code instances from each seed (>= 2 required) plus the
// pointwise average curve.
InstanceStudy run_instance_study(const ExperimentConfig& cfg);

struct MsSweepEntry {
    int ms = 0;
    std::vector<BerRecord> records;
};

std::vector<MsSweepEntry> run_ms_sweep(const std::vector<int>& ms_list,
                                       const ExperimentConfig& base);

void emit_csv(const std::vector<BerRecord>& records, const std::string& path);
void write_metadata(const ExperimentConfig& cfg, const std::string& path);

// NBCC_WORKERS environment variable, falling back to hardware concurrency.
int worker_count();

} // namespace nbcc

#endif
