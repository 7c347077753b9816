#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nbcc/channel.hpp"
#include "nbcc/code.hpp"
#include "nbcc/decoder.hpp"
#include "nbcc/density_evolution.hpp"
#include "nbcc/encoder.hpp"
#include "nbcc/errors.hpp"
#include "nbcc/io.hpp"
#include "nbcc/rng.hpp"
#include "nbcc/sim.hpp"

namespace {

nbcc::RateMode parse_rate_mode(const std::string& s) {
    if (s == "mother" || s == "1/2") return nbcc::RateMode::mother;
    if (s == "3/4" || s == "puncture34") return nbcc::RateMode::puncture34;
    if (s == "5/6" || s == "puncture56") return nbcc::RateMode::puncture56;
    if (s == "7/8" || s == "puncture78") return nbcc::RateMode::puncture78;
    if (s == "1/4" || s == "repeat14") return nbcc::RateMode::repeat14;
    throw CLI::ValidationError("rate", "unknown rate mode: " + s);
}

void print_records(const std::vector<nbcc::BerRecord>& records) {
    std::cout << "ebn0_db,frames,bit_errors,frame_errors,ber,fer,mean_iters\n";
    for (const auto& r : records) {
        std::cout << std::setprecision(12) << r.ebn0_db << ',' << r.frames << ',' << r.bit_errors
                  << ',' << r.frame_errors << ',' << r.ber << ',' << r.fer << ',' << r.mean_iters;
        if (r.censored) std::cout << "  # censored";
        std::cout << '\n';
    }
}

struct SimOptions {
    nbcc::ExperimentConfig cfg;
    std::string rate = "mother";
    std::string decoder = "block";
    std::vector<int> ms_list;
};

void add_sim_options(CLI::App* cmd, SimOptions& o) {
    cmd->add_option("--ms", o.cfg.ms, "syndrome former memory");
    cmd->add_option("--J", o.cfg.J, "column weight");
    cmd->add_option("--K", o.cfg.K, "row weight");
    cmd->add_option("--p", o.cfg.p, "field exponent, q = 2^p");
    cmd->add_option("--seed", o.cfg.code_seeds, "code construction seed(s)")->expected(-1);
    cmd->add_option("--N", o.cfg.N, "information time units per frame");
    cmd->add_option("--Z", o.cfg.Z, "termination time units (default m_s)");
    cmd->add_option("--rate", o.rate, "mother, 3/4, 5/6, 7/8, or 1/4");
    cmd->add_option("--plan-seed", o.cfg.plan_seed, "repetition coefficient seed");
    cmd->add_option("--ebn0", o.cfg.ebn0_grid, "Eb/N0 grid in dB")->required()->expected(-1);
    cmd->add_option("--max-iter", o.cfg.max_iter, "decoder iterations (block mode)");
    cmd->add_option("--decoder", o.decoder, "block or window");
    cmd->add_option("--stages", o.cfg.window_stages, "pipeline stages (window mode)");
    cmd->add_option("--stage-iters", o.cfg.iters_per_stage, "iterations per stage");
    cmd->add_option("--min-errors", o.cfg.min_error_events, "frame error events per point");
    cmd->add_option("--max-frames", o.cfg.max_frames, "frame cap per point (0 = bit budget)");
    cmd->add_option("--noise-seed", o.cfg.noise_seed, "master seed for noise/info streams");
    cmd->add_option("-o,--out", o.cfg.output_path, "CSV output path");
}

void finish_sim_options(SimOptions& o) {
    o.cfg.rate = parse_rate_mode(o.rate);
    if (o.decoder == "block")
        o.cfg.decoder = nbcc::DecoderMode::block;
    else if (o.decoder == "window")
        o.cfg.decoder = nbcc::DecoderMode::window;
    else
        throw CLI::ValidationError("decoder", "unknown decoder mode: " + o.decoder);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-binary LDPC convolutional codes over GF(2^p)"};
    app.require_subcommand(1);
    int rc = 0;

    // build
    auto* build = app.add_subcommand("build", "construct a code and save it");
    struct {
        int ms = 52, J = 2, K = 4, p = 8;
        std::uint64_t seed = 1;
        std::string out;
    } b;
    build->add_option("--ms", b.ms, "syndrome former memory");
    build->add_option("--J", b.J, "column weight");
    build->add_option("--K", b.K, "row weight");
    build->add_option("--p", b.p, "field exponent");
    build->add_option("--seed", b.seed, "construction seed");
    build->add_option("-o,--out", b.out, "code file path");
    build->callback([&]() {
        const auto code = nbcc::build_code(b.ms, b.J, b.K, b.p, b.seed);
        std::cout << "built (" << code.ms << "," << code.J << "," << code.K << ") code over GF(2^"
                  << code.p << "), period " << code.T << ", poly 0x" << std::hex
                  << code.primitive_poly << std::dec << ", seed " << code.seed << "\n";
        std::cout << "constraint length: " << code.nu_s() << " symbols, " << code.nu_b()
                  << " bits\n";
        if (code.ms <= 19)
            std::cout << "placement candidates: " << nbcc::nominal_placements(code.ms) << "\n";
        std::cout << "ensemble size: 2^" << std::setprecision(6)
                  << nbcc::ensemble_size_log2(code.ms, code.p) << "\n";
        if (!b.out.empty()) {
            nbcc::save_code(code, b.out);
            std::cout << "saved to " << b.out << "\n";
        }
    });

    // validate
    auto* val = app.add_subcommand("validate", "structural checks on a saved code");
    struct {
        std::string code;
        int N = 100, Z = -1;
    } v;
    val->add_option("--code", v.code, "code file")->required();
    val->add_option("--N", v.N, "information time units");
    val->add_option("--Z", v.Z, "termination time units (default m_s)");
    val->callback([&]() {
        const auto code = nbcc::load_code(v.code);
        const int Z = v.Z < 0 ? code.ms : v.Z;
        const auto report = nbcc::validate(code, v.N, Z);
        std::cout << "girth_gt4: " << report.girth_gt4_ok << "\n"
                  << "row_weights: " << report.row_weights_ok << "\n"
                  << "col_weights: " << report.col_weights_ok << "\n"
                  << "h0_systematic: " << report.h0_systematic_ok << "\n"
                  << "hms_nonzero: " << report.hms_nonzero_ok << "\n"
                  << "coeff_distinct: " << report.coeff_distinct_ok << "\n";
        if (!report.details.empty()) std::cout << report.details << "\n";
        std::cout << (report.all_ok() ? "OK" : "FAILED") << "\n";
        if (!report.all_ok()) rc = 1;
    });

    // encode
    auto* enc = app.add_subcommand("encode", "systematically encode information symbols");
    struct {
        std::string code, in, out;
        int random = 0, Z = -1;
        std::uint64_t info_seed = 99;
    } e;
    enc->add_option("--code", e.code, "code file")->required();
    enc->add_option("--in", e.in, "information symbol file");
    enc->add_option("--random", e.random, "generate this many random information time units");
    enc->add_option("--info-seed", e.info_seed, "seed for --random");
    enc->add_option("--Z", e.Z, "termination time units (default m_s)");
    enc->add_option("-o,--out", e.out, "coded symbol file")->required();
    enc->callback([&]() {
        const auto code = nbcc::load_code(e.code);
        nbcc::SymbolSequence info;
        if (!e.in.empty()) {
            info = nbcc::load_symbols(e.in, code.b);
            if (info.p != code.p) throw nbcc::LengthMismatch("field mismatch between files");
        } else if (e.random > 0) {
            info.p = code.p;
            info.width = code.b;
            info.symbols.resize(static_cast<size_t>(e.random) * code.b);
            nbcc::Rng rng(e.info_seed);
            const std::uint64_t mask = static_cast<std::uint64_t>(code.field.q() - 1);
            for (auto& s : info.symbols) s = static_cast<nbcc::FieldElement>(rng() & mask);
        } else {
            throw CLI::ValidationError("encode", "need --in or --random");
        }
        const int N = info.time_units();
        const int Z = e.Z < 0 ? code.ms : e.Z;
        nbcc::EncodeStats stats;
        const auto coded = nbcc::encode(code, info, N, Z, &stats);
        nbcc::save_symbols(coded, e.out);
        std::cout << "encoded N=" << N << " Z=" << Z << " -> " << coded.symbols.size()
                  << " symbols, rate " << std::setprecision(6) << nbcc::rate(code, N, Z)
                  << ", field multiplies " << stats.field_mults << "\n";
        std::cout << "syndrome: " << (nbcc::syndrome_check(code, coded) ? "ok" : "VIOLATED")
                  << "\n";
    });

    // decode
    auto* dec = app.add_subcommand("decode", "decode a coded symbol file");
    struct {
        std::string code, in, out, decoder = "block";
        int Z = -1, max_iter = 50, stages = 6, stage_iters = 1;
        double ebn0 = -1.0;
        bool noisy = false;
        std::uint64_t noise_seed = 12345;
    } d;
    dec->add_option("--code", d.code, "code file")->required();
    dec->add_option("--in", d.in, "coded symbol file")->required();
    dec->add_option("--Z", d.Z, "termination time units (default m_s)");
    dec->add_option("--ebn0", d.ebn0, "simulate BPSK-AWGN at this Eb/N0 (dB)")
        ->each([&](const std::string&) { d.noisy = true; });
    dec->add_option("--noise-seed", d.noise_seed, "channel noise seed");
    dec->add_option("--decoder", d.decoder, "block or window");
    dec->add_option("--max-iter", d.max_iter, "iterations (block mode)");
    dec->add_option("--stages", d.stages, "pipeline stages (window mode)");
    dec->add_option("--stage-iters", d.stage_iters, "iterations per stage");
    dec->add_option("-o,--out", d.out, "decoded symbol file");
    dec->callback([&]() {
        const auto code = nbcc::load_code(d.code);
        const auto coded = nbcc::load_symbols(d.in, code.c);
        const int W = coded.time_units();
        const int Z = d.Z < 0 ? code.ms : d.Z;
        if (W <= Z) throw nbcc::BadLength("sequence shorter than termination tail");
        const int N = W - Z;
        const int q = code.field.q();

        std::vector<nbcc::MessageVector> like;
        if (d.noisy) {
            const double rate_tx = nbcc::rate(code, N, Z);
            nbcc::Rng rng(d.noise_seed);
            const auto obs = nbcc::bpsk_awgn(coded.symbols, code.p, d.ebn0, rate_tx, rng);
            like = nbcc::symbol_likelihoods(obs);
        } else {
            like.reserve(coded.symbols.size());
            for (const auto s : coded.symbols) like.push_back(nbcc::delta_message(q, s));
        }
        for (int t = N; t < W; ++t)
            for (int j = 0; j < code.b; ++j)
                like[static_cast<size_t>(t) * code.c + j] = nbcc::delta_message(q, 0);

        const auto graph = nbcc::build_decoder_graph(code, N, Z);
        nbcc::SymbolSequence decoded;
        if (d.decoder == "window") {
            const auto res = nbcc::decode_sliding_window(code, graph, like, d.stages,
                                                         d.stage_iters);
            decoded = res.symbols;
            std::cout << "window decode: stages " << d.stages << ", span " << res.window_span
                      << " time units, syndrome " << (res.syndrome_ok ? "ok" : "VIOLATED")
                      << "\n";
        } else {
            nbcc::DecodeOptions opts;
            opts.max_iter = d.max_iter;
            const auto res = nbcc::decode_block(code, graph, like, opts);
            decoded = res.symbols;
            std::cout << "block decode: converged " << res.converged << " after " << res.iters
                      << " iterations\n";
        }
        long long diff = 0;
        for (size_t i = 0; i < coded.symbols.size(); ++i)
            diff += decoded.symbols[i] != coded.symbols[i];
        std::cout << "symbols differing from input file: " << diff << "\n";
        if (!d.out.empty()) nbcc::save_symbols(decoded, d.out);
    });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo BER/FER sweep");
    SimOptions s;
    add_sim_options(sim, s);
    sim->add_option("--ms-list", s.ms_list, "sweep these m_s values instead of --ms")
        ->expected(-1);
    sim->callback([&]() {
        finish_sim_options(s);
        if (!s.ms_list.empty()) {
            const auto entries = nbcc::run_ms_sweep(s.ms_list, s.cfg);
            for (const auto& entry : entries) {
                std::cout << "# m_s = " << entry.ms << "\n";
                print_records(entry.records);
            }
        } else {
            print_records(nbcc::run_ber_sweep(s.cfg));
        }
    });

    // instances
    auto* inst = app.add_subcommand("instances", "per-seed curves plus average");
    SimOptions si;
    add_sim_options(inst, si);
    inst->callback([&]() {
        finish_sim_options(si);
        const auto study = nbcc::run_instance_study(si.cfg);
        for (size_t k = 0; k < study.seeds.size(); ++k) {
            std::cout << "# seed " << study.seeds[k] << "\n";
            print_records(study.per_seed[k]);
        }
        std::cout << "# average over " << study.seeds.size() << " instances\n";
        print_records(study.average);
    });

    // threshold
    auto* thr = app.add_subcommand("threshold", "BEC decoding thresholds");
    struct {
        std::string ensemble = "block";
        int J = 2, K = 4, L = 64;
        std::vector<int> p{1};
        double tol = 1e-6;
        int max_iters = 100000;
        std::string out;
    } t;
    thr->add_option("--ensemble", t.ensemble, "block or coupled");
    thr->add_option("--J", t.J, "column weight");
    thr->add_option("--K", t.K, "row weight");
    thr->add_option("--p", t.p, "field exponent(s)")->expected(-1);
    thr->add_option("--L", t.L, "coupling length (coupled only)");
    thr->add_option("--tol", t.tol, "bisection tolerance");
    thr->add_option("--max-iters", t.max_iters, "iteration cap per trajectory");
    thr->add_option("-o,--out", t.out, "CSV output path");
    thr->callback([&]() {
        if (t.ensemble != "block" && t.ensemble != "coupled")
            throw CLI::ValidationError("ensemble", "unknown ensemble: " + t.ensemble);
        std::ostringstream csv;
        csv << "ensemble,J,K,p,L,threshold\n";
        nbcc::ThresholdOptions opts;
        opts.tol = t.tol;
        opts.max_iters = t.max_iters;
        for (const int p : t.p) {
            const bool coupled = t.ensemble == "coupled";
            const double eps = coupled ? nbcc::threshold_coupled(t.J, t.K, p, t.L, opts)
                                       : nbcc::threshold_uncoupled(t.J, t.K, p, opts);
            csv << t.ensemble << ',' << t.J << ',' << t.K << ',' << p << ','
                << (coupled ? t.L : 0) << ',' << std::setprecision(8) << eps << "\n";
        }
        std::cout << csv.str();
        if (!t.out.empty()) {
            std::ofstream out(t.out);
            if (!out) throw std::runtime_error("cannot open for writing: " + t.out);
            out << csv.str();
        }
    });

    // shannon
    auto* sh = app.add_subcommand("shannon", "binary-input AWGN Eb/N0 limits");
    struct {
        std::vector<double> rates{0.5};
        double tol = 1e-4;
    } sl;
    sh->add_option("--rate", sl.rates, "code rate(s) in (0,1)")->expected(-1);
    sh->add_option("--tol", sl.tol, "bisection tolerance in dB");
    sh->callback([&]() {
        std::cout << "rate,ebn0_db_limit\n";
        for (const double r : sl.rates)
            std::cout << std::setprecision(8) << r << ','
                      << nbcc::shannon_limit_biawgn(r, sl.tol) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return rc;
}
