// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "../oracles.hpp"
#include "otfs/channel.hpp"
#include "otfs/sampling.hpp"
#include "otfs/symbols.hpp"

using namespace otfs;

namespace {

std::vector<Target> random_targets(int p, const FrameGrid& g, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dl(0.0, g.m_delay() - 1.0);
    std::uniform_real_distribution<double> dk(-0.5 * g.n_doppler(), 0.5 * g.n_doppler());
    std::vector<Target> out;
    for (int i = 0; i < p; ++i) out.push_back({oracle::random_unit(gen), dl(gen), dk(gen)});
    return out;
}

}  // namespace

TEST_CASE("identity and integer targets") {
    const FrameGrid g = FrameGrid::desk();
    const std::vector<Target> id{{{1, 0}, 0.0, 0.0}};
    const EffectiveChannel c = build_effective_channel(id, g);
    for (int k = 0; k < 32; ++k)
        for (int l = 0; l < 32; ++l) CHECK(std::abs(c.h_omega(k, l) - cplx((k == 0 && l == 0) ? 1.0 : 0.0)) < 1e-12);

    const std::vector<Target> shifted{{{1, 0}, 5.0, 2.0}};
    const EffectiveChannel s = build_effective_channel(shifted, g);
    const cplx want = std::polar(1.0, -2.0 * kPi * 10.0 / 1024.0);
    for (int k = 0; k < 32; ++k)
        for (int l = 0; l < 32; ++l) CHECK(std::abs(s.h_omega(k, l) - ((k == 2 && l == 5) ? want : cplx{})) < 1e-12);

    const DDMatrix x = generate_qpsk_frame(g, 3);
    CHECK(max_abs_difference(apply_channel(x, c, g), x) < 1e-12);
    const DDMatrix y = apply_channel(x, s, g);
    double worst = 0.0;
    for (int k = 0; k < 32; ++k)
        for (int l = 0; l < 32; ++l) worst = std::max(worst, std::abs(y(k, l) - want * x.at_wrapped(k - 2, l - 5)));
    CHECK(worst < 1e-12);
}

TEST_CASE("fractional Doppler leaks into neighbouring rows") {
    const FrameGrid g = FrameGrid::desk();
    const std::vector<Target> t{{{1, 0}, 5.0, 2.3}};
    const EffectiveChannel c = build_effective_channel(t, g);
    CHECK(std::abs(c.h_omega(2, 5)) == doctest::Approx(std::abs(sampling_g(-0.3, 32))).epsilon(1e-12));
    CHECK(std::abs(c.h_omega(3, 5)) == doctest::Approx(std::abs(sampling_g(0.7, 32))).epsilon(1e-12));
    const double ratio = std::abs(c.h_omega(2, 5)) / std::abs(c.h_omega(3, 5));
    CHECK(ratio == doctest::Approx(0.7 / 0.3).epsilon(0.05));
    for (int k = 0; k < 32; ++k)
        for (int l = 0; l < 32; ++l)
            if (l != 5) CHECK(std::abs(c.h_omega(k, l)) < 1e-12);
}

TEST_CASE("effective channel matches the literal definition") {
    std::mt19937_64 gen(21);
    for (int n : {8, 16}) {
        const FrameGrid g(n, n + 4, 39063.0, 24e9);
        const auto targets = random_targets(3, g, gen);
        const EffectiveChannel c = build_effective_channel(targets, g);
        CHECK(max_abs_difference(c.h_omega, oracle::channel(targets, g)) < 1e-12);
        CHECK(c.source_targets == targets);
    }
    // Overridden slot duration changes only the coupling phase.
    const FrameGrid g(8, 8, 39063.0, 24e9, 2.0 / 39063.0);
    const auto targets = random_targets(2, g, gen);
    CHECK(max_abs_difference(build_effective_channel(targets, g).h_omega, oracle::channel(targets, g)) < 1e-12);
}

TEST_CASE("channel energy is bounded by the target gains") {
    std::mt19937_64 gen(8);
    const FrameGrid g = FrameGrid::desk();
    for (int i = 0; i < 20; ++i) {
        const auto targets = random_targets(1, g, gen);
        CHECK(energy(build_effective_channel(targets, g).h_omega) <= 1.0 + 1e-12);
    }
}

TEST_CASE("superposition over targets and linearity in the frame") {
    std::mt19937_64 gen(13);
    const FrameGrid g(16, 16, 39063.0, 24e9);
    const auto targets = random_targets(2, g, gen);
    const DDMatrix both = build_effective_channel(targets, g).h_omega;
    const DDMatrix sum = build_effective_channel({&targets[0], 1}, g).h_omega +
                         build_effective_channel({&targets[1], 1}, g).h_omega;
    CHECK(max_abs_difference(both, sum) < 1e-12);
    CHECK(max_abs_difference(target_kernel(targets[0], g) + target_kernel(targets[1], g), both) < 1e-12);

    const EffectiveChannel c = build_effective_channel(targets, g);
    const DDMatrix x1 = oracle::random_matrix(16, 16, gen);
    const DDMatrix x2 = oracle::random_matrix(16, 16, gen);
    const cplx a(0.7, -1.3), b(-0.2, 0.4);
    const DDMatrix lhs = apply_channel(a * x1 + b * x2, c, g);
    const DDMatrix rhs = a * apply_channel(x1, c, g) + b * apply_channel(x2, c, g);
    CHECK(max_abs_difference(lhs, rhs) < 1e-10);
}

TEST_CASE("FFT and direct convolution agree") {
    std::mt19937_64 gen(17);
    for (int n : {8, 16, 32}) {
        for (int m : {8, 16, 32}) {
            const FrameGrid g(n, m, 39063.0, 24e9);
            const EffectiveChannel c = build_effective_channel(random_targets(3, g, gen), g);
            const DDMatrix x = oracle::random_matrix(n, m, gen);
            const DDMatrix fast = apply_channel(x, c, g);
            CHECK(relative_error(fast, apply_channel_direct(x, c, g)) < 1e-9);
            if (n * m <= 256) CHECK(relative_error(fast, oracle::convolve(x, c.h_omega)) < 1e-9);
        }
    }
}

TEST_CASE("shape and range errors") {
    const FrameGrid g = FrameGrid::desk();
    const FrameGrid small(16, 16, 39063.0, 24e9);
    const EffectiveChannel c = build_effective_channel(std::vector<Target>{{{1, 0}, 1.0, 1.0}}, g);
    try {
        apply_channel(DDMatrix(small), c, g);
        FAIL("shape mismatch accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DimensionMismatch);
    }
    CHECK_THROWS_AS(build_effective_channel(std::vector<Target>{{{1, 0}, 31.5, 0.0}}, g), Error);
}

TEST_CASE("additive noise") {
    const FrameGrid g(256, 400, 39063.0, 24e9);
    const DDMatrix y(g);
    CHECK(add_noise(y, kNoiseless, 1) == y);
    const DDMatrix z = add_noise(y, 0.0, 99);
    double total = 0, re = 0, im = 0;
    for (const auto& v : z.values()) {
        total += std::norm(v);
        re += v.real() * v.real();
        im += v.imag() * v.imag();
    }
    const double n = static_cast<double>(z.size());
    CHECK(total / n >= 0.99);
    CHECK(total / n <= 1.01);
    CHECK(re / n == doctest::Approx(0.5).epsilon(0.02));
    CHECK(im / n == doctest::Approx(0.5).epsilon(0.02));
    const DDMatrix z10 = add_noise(y, 10.0, 99);
    CHECK(energy(z10) / n == doctest::Approx(0.1).epsilon(0.01));
    CHECK(add_noise(y, 0.0, 99) == z);
    CHECK(noise_variance(20.0) == doctest::Approx(0.01));
    CHECK(noise_variance(kNoiseless) == 0.0);
}
