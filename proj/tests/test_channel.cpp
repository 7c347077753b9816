#include "doctest.h"

#include <cmath>

#include "nbcc/channel.hpp"

using nbcc::ChannelObservation;
using nbcc::FieldElement;
using nbcc::MessageVector;

TEST_CASE("noise variance follows the Eb/N0 definition") {
    CHECK(nbcc::awgn_sigma2(0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nbcc::awgn_sigma2(10.0, 0.5) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(nbcc::awgn_sigma2(3.0, 0.25) ==
          doctest::Approx(1.0 / (0.5 * std::pow(10.0, 0.3))).epsilon(1e-12));
    CHECK_THROWS_AS(nbcc::awgn_sigma2(0.0, 0.0), nbcc::ZeroLength);
}

TEST_CASE("bpsk maps bits lsb-first with 0 to +1") {
    nbcc::Rng rng(1);
    // symbol 5 = bits (1,0,1) lsb-first over p=3
    const auto obs = nbcc::bpsk_awgn({FieldElement(5)}, 3, 60.0, 0.5, rng);
    REQUIRE(obs.values.size() == 3);
    CHECK(obs.values[0] < 0.0);
    CHECK(obs.values[1] > 0.0);
    CHECK(obs.values[2] < 0.0);
    CHECK(obs.num_symbols() == 1);
}

TEST_CASE("awgn sample mean and variance match the configured channel") {
    nbcc::Rng rng(7);
    const int n = 200000;
    std::vector<FieldElement> zeros(n, 0);
    const double ebn0_db = 2.0;
    const auto obs = nbcc::bpsk_awgn(zeros, 1, ebn0_db, 0.5, rng);
    double mean = 0.0;
    for (double v : obs.values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : obs.values) var += (v - mean) * (v - mean);
    var /= n - 1;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
    CHECK(var == doctest::Approx(nbcc::awgn_sigma2(ebn0_db, 0.5)).epsilon(0.02));
}

TEST_CASE("awgn likelihoods reproduce the per-bit sigmoid") {
    nbcc::Rng rng(3);
    const auto obs = nbcc::bpsk_awgn({FieldElement(0), FieldElement(1)}, 1, 1.5, 0.5, rng);
    const auto like = nbcc::symbol_likelihoods(obs);
    REQUIRE(like.size() == 2);
    for (int sym = 0; sym < 2; ++sym) {
        const double y = obs.values[sym];
        const double expect0 = 1.0 / (1.0 + std::exp(-2.0 * y / obs.sigma2));
        CHECK(like[sym][0] == doctest::Approx(expect0).epsilon(1e-9));
        CHECK(like[sym][0] + like[sym][1] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("likelihoods factor over bits for q > 2") {
    nbcc::Rng rng(9);
    const auto obs = nbcc::bpsk_awgn({FieldElement(6)}, 3, 0.0, 0.5, rng);
    const auto like = nbcc::symbol_likelihoods(obs);
    REQUIRE(like[0].size() == 8);
    // product of per-bit posteriors, renormalized, must equal the symbol value
    double bit1[3];
    for (int j = 0; j < 3; ++j)
        bit1[j] = 1.0 / (1.0 + std::exp(2.0 * obs.values[j] / obs.sigma2));
    double total = 0.0;
    std::vector<double> expect(8);
    for (int s = 0; s < 8; ++s) {
        double prod = 1.0;
        for (int j = 0; j < 3; ++j) prod *= ((s >> j) & 1) ? bit1[j] : 1.0 - bit1[j];
        expect[s] = prod;
        total += prod;
    }
    for (int s = 0; s < 8; ++s) CHECK(like[0][s] == doctest::Approx(expect[s] / total).epsilon(1e-9));
}

TEST_CASE("erasure channel zeroes only conflicting values") {
    nbcc::Rng rng(4);
    const int n = 4000;
    std::vector<FieldElement> syms(n);
    for (auto& s : syms) s = static_cast<FieldElement>(rng() & 3);
    const double eps = 0.35;
    const auto obs = nbcc::bec(syms, 2, eps, rng);
    const auto like = nbcc::symbol_likelihoods(obs);

    long erased = 0;
    for (auto e : obs.erased) erased += e;
    CHECK(double(erased) / obs.erased.size() == doctest::Approx(eps).epsilon(0.05));

    for (int sym = 0; sym < n; ++sym) {
        // the true symbol always keeps positive mass
        CHECK(like[sym][syms[sym]] > 0.0);
        int support = 0;
        for (double v : like[sym]) support += v > 0.0;
        int free_bits = obs.erased[2 * sym] + obs.erased[2 * sym + 1];
        CHECK(support == (1 << free_bits));
    }
}

TEST_CASE("binary-input awgn limits match published values") {
    CHECK(std::abs(nbcc::shannon_limit_biawgn(0.5) - 0.187) < 0.01);
    CHECK(std::abs(nbcc::shannon_limit_biawgn(0.25) - (-0.794)) < 0.01);
    CHECK_THROWS_AS(nbcc::shannon_limit_biawgn(1.5), nbcc::NonConvergence);
}
