// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "../oracles.hpp"
#include "otfs/channel.hpp"
#include "otfs/correlator.hpp"
#include "otfs/symbols.hpp"

using namespace otfs;

TEST_CASE("autocorrelation peak at zero lag") {
    const FrameGrid g = FrameGrid::desk();
    const DDMatrix x = generate_qpsk_frame(g, 4);
    const CorrelationMap v = correlate(x, x, g);
    CHECK(std::abs(v.v(0, 0) - cplx(1024.0, 0.0)) < 1e-9);
    double side = 0.0;
    for (std::size_t i = 1; i < v.v.size(); ++i) side = std::max(side, std::abs(v.v.data()[i]));
    CHECK(side < 0.25 * 1024.0);
}

TEST_CASE("FFT correlation matches the literal double sum") {
    std::mt19937_64 gen(31);
    for (auto [n, m] : {std::pair{8, 8}, std::pair{8, 12}, std::pair{16, 16}}) {
        const FrameGrid g(n, m, 39063.0, 24e9);
        for (int i = 0; i < 5; ++i) {
            const DDMatrix x = oracle::random_matrix(n, m, gen);
            std::vector<Target> t{{oracle::random_unit(gen), 2.4, 1.7}, {oracle::random_unit(gen), 5.1, -3.2}};
            const DDMatrix y = apply_channel(x, build_effective_channel(t, g), g) + oracle::random_matrix(n, m, gen);
            const CorrelationMap fast = correlate(y, x, g);
            CHECK(relative_error(fast.v, oracle::correlate(y, x)) < 1e-9);
            CHECK(relative_error(correlate_direct(y, x, g).v, oracle::correlate(y, x)) < 1e-12);
        }
    }
}

TEST_CASE("conjugate linearity and shift covariance") {
    std::mt19937_64 gen(37);
    const FrameGrid g(8, 16, 39063.0, 24e9);
    const DDMatrix x = oracle::random_matrix(8, 16, gen);
    const DDMatrix y = oracle::random_matrix(8, 16, gen);
    const cplx a(1.5, -0.25);
    const DDMatrix lhs = correlate(y * a, x, g).v;
    const DDMatrix rhs = correlate(y, x, g).v * std::conj(a);
    CHECK(max_abs_difference(lhs, rhs) < 1e-12 * frobenius(rhs));

    // Shifting x by (dk, dl) moves the map by (dk, dl) in the lag variables.
    const int dk = 3, dl = 5;
    DDMatrix xs(g);
    for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 16; ++l) xs(k, l) = x.at_wrapped(k - dk, l - dl);
    const DDMatrix v0 = correlate(y, x, g).v;
    const DDMatrix v1 = correlate(y, xs, g).v;
    double worst = 0.0;
    for (int k = 0; k < 8; ++k)
        for (int l = 0; l < 16; ++l) worst = std::max(worst, std::abs(v1(k, l) - v0.at_wrapped(k + dk, l + dl)));
    CHECK(worst < 1e-10);
}

TEST_CASE("one-pilot frame gives the conjugate channel without self-interference") {
    const FrameGrid g = FrameGrid::desk();
    const std::vector<Target> t{{std::polar(0.8, 0.4), 7.3, -4.2}};
    const EffectiveChannel c = build_effective_channel(t, g);
    const DDMatrix x = generate_one_pilot_frame(g);
    const CorrelationMap v = correlate(apply_channel(x, c, g), x, g);
    double worst = 0.0;
    for (std::size_t i = 0; i < v.v.size(); ++i)
        worst = std::max(worst, std::abs(v.v.data()[i] - 1024.0 * std::conj(c.h_omega.data()[i])));
    CHECK(worst < 1e-9);

    // Integer target: a single nonzero entry.
    const std::vector<Target> ti{{{1, 0}, 4.0, 3.0}};
    const CorrelationMap vi = correlate(apply_channel(x, build_effective_channel(ti, g), g), x, g);
    int nonzero = 0;
    for (const auto& e : vi.v.values()) nonzero += std::abs(e) > 1e-9;
    CHECK(nonzero == 1);
}

TEST_CASE("four-target scene localizes at the nearest bins") {
    const FrameGrid g = FrameGrid::desk();
    const std::vector<Target> t{{{1, 0}, 14.29, 11.72}, {{1, 0}, 7.0, 2.0}, {{1, 0}, 3.37, 5.06}, {{1, 0}, 11.12, 22.65}};
    const DDMatrix x = generate_qpsk_frame(g, 2024);
    const CorrelationMap v = correlate(apply_channel(x, build_effective_channel(t, g), g), x, g);
    const PowerMap p = v.power();
    std::vector<std::size_t> order(p.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + 4, order.end(),
                      [&](std::size_t a, std::size_t b) { return p.data()[a] > p.data()[b]; });
    std::set<std::pair<int, int>> top;
    for (int i = 0; i < 4; ++i) top.insert({static_cast<int>(order[i] / 32), static_cast<int>(order[i] % 32)});
    CHECK(top == std::set<std::pair<int, int>>{{12, 14}, {2, 7}, {5, 3}, {23, 11}});
}

TEST_CASE("mean of the correlation map") {
    Scenario s;
    s.targets = {{{1, 0}, 5.0, 2.0}};
    s.rng_seed = 5;
    const CorrelationMeanReport r = correlation_mean_check(s, 200);
    const cplx aligned = r.mean(2, 5);
    CHECK(std::abs(aligned - std::polar(1.0, 2.0 * kPi * 10.0 / 1024.0)) < 1e-12);
    CHECK(r.max_z_score < 5.0);

    s.targets = {{{1, 0}, 9.4, 3.3}};
    const CorrelationMeanReport f = correlation_mean_check(s, 400);
    CHECK(f.max_z_score < 5.0);
    CHECK(f.mean_noise_variance == 0.0);

    s.targets.clear();
    s.snr_db = 0.0;
    const CorrelationMeanReport n = correlation_mean_check(s, 400);
    CHECK(n.expected_noise_variance == doctest::Approx(1.0 / 1024));
    CHECK(n.mean_total_variance == doctest::Approx(n.mean_noise_variance).epsilon(1e-9));
    CHECK(n.mean_noise_variance / n.expected_noise_variance > 0.9);
    CHECK(n.mean_noise_variance / n.expected_noise_variance < 1.1);
    CHECK_THROWS_AS(correlation_mean_check(s, 50), Error);
}

TEST_CASE("magnitude CSV layout") {
    const FrameGrid g(4, 6, 39063.0, 24e9);
    DDMatrix v(g);
    v(1, 2) = {3.0, 4.0};
    std::ostringstream os;
    write_magnitude_csv({v, g}, os);
    const std::string s = os.str();
    CHECK(std::count(s.begin(), s.end(), '\n') == 4);
    CHECK(s.substr(0, s.find('\n')) == "0,0,0,0,0,0");
    CHECK(s.find("0,0,5,0,0,0") != std::string::npos);
}
