#include "nbcc/sim.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "nbcc/channel.hpp"
#include "nbcc/encoder.hpp"
#include "nbcc/errors.hpp"
#include "nbcc/rng.hpp"

namespace nbcc {

const char* rate_mode_name(RateMode m) {
    switch (m) {
        case RateMode::mother: return "mother";
        case RateMode::puncture34: return "puncture34";
        case RateMode::puncture56: return "puncture56";
        case RateMode::puncture78: return "puncture78";
        case RateMode::repeat14: return "repeat14";
    }
    return "unknown";
}

const char* decoder_mode_name(DecoderMode m) {
    return m == DecoderMode::block ? "block" : "window";
}

namespace {

PuncturePattern pattern_for(RateMode m, int c) {
    switch (m) {
        case RateMode::puncture34: return pattern_three_quarters();
        case RateMode::puncture56: return pattern_five_sixths();
        case RateMode::puncture78: return pattern_seven_eighths();
        default: return pattern_identity(c);
    }
}

struct FrameSetup {
    const ExperimentConfig* cfg = nullptr;
    const ConvCode* code = nullptr;
    const DecoderGraph* graph = nullptr;
    PuncturePattern pattern;
    RepetitionPlan plan;
    bool repeat = false;
    int W = 0;
    long long tx_symbols = 0;
    double rate_tx = 0.0;
};

struct FrameOutcome {
    long long bit_errors = 0;
    long long symbol_errors = 0;
    bool frame_error = false;
    int iters = 0;
};

FrameSetup make_setup(const ExperimentConfig& cfg, const ConvCode& code,
                      const DecoderGraph& graph) {
    FrameSetup fs;
    fs.cfg = &cfg;
    fs.code = &code;
    fs.graph = &graph;
    fs.W = cfg.N + cfg.termination_units();
    fs.repeat = cfg.rate == RateMode::repeat14;
    if (fs.repeat) {
        fs.plan = make_repetition_plan(code.field, code.c, fs.W, cfg.plan_seed);
        fs.tx_symbols = 2LL * code.c * fs.W;
    } else {
        fs.pattern = pattern_for(cfg.rate, code.c);
        fs.tx_symbols = 0;
        for (int t = 0; t < fs.W; ++t)
            for (int j = 0; j < code.c; ++j)
                if (fs.pattern.keeps(t, j)) ++fs.tx_symbols;
    }
    fs.rate_tx = static_cast<double>(code.b) * cfg.N / static_cast<double>(fs.tx_symbols);
    return fs;
}

FrameOutcome simulate_frame(const FrameSetup& fs, double ebn0_db, int grid_idx,
                            long long frame_idx) {
    const ExperimentConfig& cfg = *fs.cfg;
    const ConvCode& code = *fs.code;
    const int q = code.field.q();
    const int N = cfg.N;
    Rng rng(derive_seed(cfg.noise_seed, static_cast<std::uint64_t>(grid_idx),
                        static_cast<std::uint64_t>(frame_idx)));

    SymbolSequence info;
    info.p = code.p;
    info.width = code.b;
    info.symbols.resize(static_cast<size_t>(N) * code.b);
    const std::uint64_t mask = static_cast<std::uint64_t>(q - 1);
    for (auto& s : info.symbols) s = static_cast<FieldElement>(rng() & mask);

    const SymbolSequence coded = encode(code, info, N, cfg.termination_units());

    std::vector<FieldElement> tx;
    if (fs.repeat)
        tx = multiplicative_repeat(coded, fs.plan, code.field);
    else
        tx = puncture(coded, fs.pattern);

    const ChannelObservation obs = bpsk_awgn(tx, code.p, ebn0_db, fs.rate_tx, rng);
    const std::vector<MessageVector> tx_like = symbol_likelihoods(obs);

    std::vector<MessageVector> like;
    if (fs.repeat) {
        like.reserve(static_cast<size_t>(fs.W) * code.c);
        for (int t = 0; t < fs.W; ++t) {
            const size_t base = static_cast<size_t>(t) * 2 * code.c;
            for (int j = 0; j < code.c; ++j) like.push_back(tx_like[base + j]);
            for (int j = 0; j < code.c; ++j) {
                const FieldElement a = fs.plan.alpha[static_cast<size_t>(t) * code.c + j];
                auto& dst = like[static_cast<size_t>(t) * code.c + j];
                dst = merge_repeat_likelihoods(dst, tx_like[base + code.c + j], a, code.field);
            }
        }
    } else {
        like = depuncture_init(tx_like, fs.pattern, fs.W, q);
    }
    // terminated information symbols are known zeros
    for (int t = N; t < fs.W; ++t)
        for (int j = 0; j < code.b; ++j)
            like[static_cast<size_t>(t) * code.c + j] = delta_message(q, 0);

    FrameOutcome out;
    SymbolSequence decoded;
    if (cfg.decoder == DecoderMode::block) {
        DecodeOptions opts;
        opts.max_iter = cfg.max_iter;
        DecodeResult res = decode_block(code, *fs.graph, like, opts);
        out.iters = res.iters;
        decoded = std::move(res.symbols);
    } else {
        WindowResult res =
            decode_sliding_window(code, *fs.graph, like, cfg.window_stages, cfg.iters_per_stage);
        out.iters = cfg.window_stages * cfg.iters_per_stage;
        decoded = std::move(res.symbols);
    }

    for (int t = 0; t < N; ++t)
        for (int j = 0; j < code.b; ++j) {
            const unsigned diff = static_cast<unsigned>(decoded.at(t, j) ^ info.at(t, j));
            if (diff) {
                ++out.symbol_errors;
                out.bit_errors += std::popcount(diff);
            }
        }
    out.frame_error = out.symbol_errors > 0;
    return out;
}

void run_batch(const FrameSetup& fs, double ebn0_db, int grid_idx, long long first,
               std::vector<FrameOutcome>& outs, int workers) {
    const long long n = static_cast<long long>(outs.size());
    const int use = static_cast<int>(std::min<long long>(workers, n));
    if (use <= 1) {
        for (long long f = 0; f < n; ++f) outs[f] = simulate_frame(fs, ebn0_db, grid_idx, first + f);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(use));
    for (int w = 0; w < use; ++w)
        pool.emplace_back([&, w]() {
            for (long long f = w; f < n; f += use)
                outs[f] = simulate_frame(fs, ebn0_db, grid_idx, first + f);
        });
    for (auto& th : pool) th.join();
}

std::vector<BerRecord> sweep_with_code(const ExperimentConfig& cfg, const ConvCode& code) {
    const DecoderGraph graph = build_decoder_graph(code, cfg.N, cfg.termination_units());
    const FrameSetup fs = make_setup(cfg, code, graph);
    const long long info_bits_per_frame =
        static_cast<long long>(cfg.N) * code.b * code.p;
    const long long max_frames =
        cfg.max_frames > 0
            ? cfg.max_frames
            : std::max<long long>(1, (10000000 + info_bits_per_frame - 1) / info_bits_per_frame);
    const int workers = worker_count();

    std::vector<BerRecord> records;
    records.reserve(cfg.ebn0_grid.size());
    for (size_t gi = 0; gi < cfg.ebn0_grid.size(); ++gi) {
        BerRecord rec;
        rec.ebn0_db = cfg.ebn0_grid[gi];
        long long next = 0;
        long long iters_total = 0;
        bool done = false;
        while (!done && next < max_frames) {
            const long long batch = std::min<long long>(max_frames - next, 4LL * workers);
            std::vector<FrameOutcome> outs(static_cast<size_t>(batch));
            run_batch(fs, rec.ebn0_db, static_cast<int>(gi), next, outs, workers);
            for (long long f = 0; f < batch; ++f) {
                const FrameOutcome& o = outs[static_cast<size_t>(f)];
                ++rec.frames;
                rec.bit_errors += o.bit_errors;
                rec.symbol_errors += o.symbol_errors;
                rec.frame_errors += o.frame_error ? 1 : 0;
                iters_total += o.iters;
                if (rec.frame_errors >= cfg.min_error_events) {
                    done = true;
                    break;
                }
            }
            next += batch;
        }
        rec.censored = rec.frame_errors < cfg.min_error_events;
        rec.ber = static_cast<double>(rec.bit_errors) /
                  (static_cast<double>(rec.frames) * static_cast<double>(info_bits_per_frame));
        rec.fer = static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames);
        rec.mean_iters = static_cast<double>(iters_total) / static_cast<double>(rec.frames);
        records.push_back(rec);
    }
    return records;
}

std::string with_suffix(const std::string& path, const std::string& tag) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

} // namespace

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.N < 1) throw std::invalid_argument("N must be at least 1");
    if (cfg.termination_units() < 0) throw std::invalid_argument("Z must be nonnegative");
    if (cfg.ms < 1) throw std::invalid_argument("m_s must be at least 1");
    if (cfg.p < 1 || cfg.p > 16) throw std::invalid_argument("p must be in 1..16");
    if (cfg.code_seeds.empty()) throw std::invalid_argument("at least one code seed required");
    if (cfg.ebn0_grid.empty()) throw std::invalid_argument("Eb/N0 grid must be nonempty");
    if (cfg.min_error_events < 1) throw std::invalid_argument("min_error_events must be >= 1");
    if (cfg.max_frames < 0) throw std::invalid_argument("max_frames must be nonnegative");
    if (cfg.decoder == DecoderMode::block) {
        if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    } else {
        if (cfg.window_stages < 1 || cfg.iters_per_stage < 1)
            throw std::invalid_argument("window decoding needs stages >= 1 and iters >= 1");
    }
    if (cfg.rate == RateMode::repeat14 && cfg.p < 2)
        throw std::invalid_argument("multiplicative repetition needs a field with q >= 4");
}

long long transmitted_symbols(const ExperimentConfig& cfg) {
    const int W = cfg.N + cfg.termination_units();
    if (cfg.rate == RateMode::repeat14) return 4LL * W;
    const PuncturePattern pat = pattern_for(cfg.rate, 2);
    long long n = 0;
    for (int t = 0; t < W; ++t)
        for (int j = 0; j < 2; ++j)
            if (pat.keeps(t, j)) ++n;
    return n;
}

double transmitted_rate(const ExperimentConfig& cfg) {
    return static_cast<double>(cfg.N) / static_cast<double>(transmitted_symbols(cfg));
}

std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const ConvCode code = build_code(cfg.ms, cfg.J, cfg.K, cfg.p, cfg.code_seeds.front());
    auto records = sweep_with_code(cfg, code);
    if (!cfg.output_path.empty()) {
        emit_csv(records, cfg.output_path);
        write_metadata(cfg, cfg.output_path + ".json");
    }
    return records;
}

InstanceStudy run_instance_study(const ExperimentConfig& cfg) {
    validate_config(cfg);
    if (cfg.code_seeds.size() < 2)
        throw std::invalid_argument("instance study needs at least 2 code seeds");
    InstanceStudy study;
    study.seeds = cfg.code_seeds;
    for (const auto seed : cfg.code_seeds) {
        const ConvCode code = build_code(cfg.ms, cfg.J, cfg.K, cfg.p, seed);
        study.per_seed.push_back(sweep_with_code(cfg, code));
    }
    const size_t points = cfg.ebn0_grid.size();
    const auto n = static_cast<double>(study.per_seed.size());
    study.average.resize(points);
    for (size_t gi = 0; gi < points; ++gi) {
        BerRecord& avg = study.average[gi];
        avg.ebn0_db = cfg.ebn0_grid[gi];
        for (const auto& curve : study.per_seed) {
            const BerRecord& r = curve[gi];
            avg.frames += r.frames;
            avg.bit_errors += r.bit_errors;
            avg.symbol_errors += r.symbol_errors;
            avg.frame_errors += r.frame_errors;
            avg.ber += r.ber;
            avg.fer += r.fer;
            avg.mean_iters += r.mean_iters;
            avg.censored = avg.censored || r.censored;
        }
        avg.ber /= n;
        avg.fer /= n;
        avg.mean_iters /= n;
    }
    if (!cfg.output_path.empty()) {
        emit_csv(study.average, cfg.output_path);
        for (size_t k = 0; k < study.seeds.size(); ++k)
            emit_csv(study.per_seed[k],
                     with_suffix(cfg.output_path, ".seed" + std::to_string(study.seeds[k])));
        write_metadata(cfg, cfg.output_path + ".json");
    }
    return study;
}

std::vector<MsSweepEntry> run_ms_sweep(const std::vector<int>& ms_list,
                                       const ExperimentConfig& base) {
    if (ms_list.empty()) throw std::invalid_argument("m_s grid must be nonempty");
    std::vector<MsSweepEntry> entries;
    entries.reserve(ms_list.size());
    for (const int ms : ms_list) {
        ExperimentConfig cfg = base;
        cfg.ms = ms;
        cfg.output_path.clear();
        validate_config(cfg);
        const ConvCode code = build_code(cfg.ms, cfg.J, cfg.K, cfg.p, cfg.code_seeds.front());
        MsSweepEntry entry;
        entry.ms = ms;
        entry.records = sweep_with_code(cfg, code);
        if (!base.output_path.empty())
            emit_csv(entry.records, with_suffix(base.output_path, ".ms" + std::to_string(ms)));
        entries.push_back(std::move(entry));
    }
    if (!base.output_path.empty()) write_metadata(base, base.output_path + ".json");
    return entries;
}

void emit_csv(const std::vector<BerRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "ebn0_db,frames,bit_errors,frame_errors,ber,fer,mean_iters\n";
    for (const auto& r : records) {
        std::ostringstream line;
        line << std::setprecision(12) << r.ebn0_db << ',' << r.frames << ',' << r.bit_errors << ','
             << r.frame_errors << ',' << r.ber << ',' << r.fer << ',' << r.mean_iters << '\n';
        out << line.str();
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_metadata(const ExperimentConfig& cfg, const std::string& path) {
    nlohmann::json meta;
    meta["ms"] = cfg.ms;
    meta["J"] = cfg.J;
    meta["K"] = cfg.K;
    meta["p"] = cfg.p;
    meta["code_seeds"] = cfg.code_seeds;
    meta["N"] = cfg.N;
    meta["Z"] = cfg.termination_units();
    meta["rate_mode"] = rate_mode_name(cfg.rate);
    meta["plan_seed"] = cfg.plan_seed;
    meta["ebn0_grid"] = cfg.ebn0_grid;
    meta["max_iter"] = cfg.max_iter;
    meta["decoder"] = decoder_mode_name(cfg.decoder);
    meta["window_stages"] = cfg.window_stages;
    meta["iters_per_stage"] = cfg.iters_per_stage;
    meta["min_error_events"] = cfg.min_error_events;
    meta["max_frames"] = cfg.max_frames;
    meta["noise_seed"] = cfg.noise_seed;
    meta["info_bits_per_frame"] = static_cast<long long>(cfg.N) * cfg.p;
    meta["transmitted_symbols"] = transmitted_symbols(cfg);
    meta["rate_transmitted"] = transmitted_rate(cfg);
    meta["constraint_length_symbols"] = (cfg.ms + 1) * 2;
    meta["constraint_length_bits"] = (cfg.ms + 1) * 2 * cfg.p;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << meta.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

int worker_count() {
    if (const char* env = std::getenv("NBCC_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

} // namespace nbcc
