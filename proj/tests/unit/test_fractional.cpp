// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <sstream>

#include "otfs/channel.hpp"
#include "otfs/fractional.hpp"
#include "otfs/symbols.hpp"

using namespace otfs;

namespace {

CorrelationMap pilot_map(const FrameGrid& g, const std::vector<Target>& t) {
    const DDMatrix x = generate_one_pilot_frame(g);
    return correlate(apply_channel(x, build_effective_channel(t, g), g), x, g);
}

CorrelationMap column_map(const FrameGrid& g, int l, std::initializer_list<std::pair<int, double>> cells) {
    DDMatrix v(g);
    for (auto [k, mag] : cells) v(k, l) = mag;
    return {v, g};
}

}  // namespace

TEST_CASE("neighbour selection") {
    const FrameGrid g(16, 16, 39063.0, 24e9);
    CHECK(pick_neighbor(column_map(g, 3, {{4, 9.0}, {5, 5.0}, {3, 2.0}}), 4, 3, Axis::Doppler) == 5);
    CHECK(pick_neighbor(column_map(g, 3, {{4, 9.0}, {5, 2.0}, {3, 5.0}}), 4, 3, Axis::Doppler) == 3);
    CHECK(pick_neighbor(column_map(g, 3, {{4, 9.0}, {5, 2.0}, {3, 2.0}}), 4, 3, Axis::Doppler) == 5);
    // Across the wrap.
    CHECK(pick_neighbor(column_map(g, 3, {{0, 9.0}, {15, 5.0}, {1, 2.0}}), 0, 3, Axis::Doppler) == 15);
    CHECK(pick_neighbor(column_map(g, 3, {{15, 9.0}, {0, 5.0}}), 15, 3, Axis::Doppler) == 0);

    DDMatrix row(g);
    row(2, 0) = 9.0;
    row(2, 15) = 4.0;
    CHECK(pick_neighbor({row, g}, 2, 0, Axis::Delay) == 15);

    const FrameGrid d = FrameGrid::desk();
    const CorrelationMap v = pilot_map(d, {{{1, 0}, 4.0, 9.7}});
    CHECK(pick_neighbor(v, 10, 4, Axis::Doppler) == 9);
}

TEST_CASE("fraction from two magnitudes") {
    const FrameGrid g(16, 16, 39063.0, 24e9);
    CHECK(estimate_kappa(column_map(g, 0, {{5, 3.0}, {6, 1.0}}), 5, 6, 0) == 0.25);
    CHECK(estimate_kappa(column_map(g, 0, {{5, 3.0}}), 5, 6, 0) == 0.0);
    CHECK(estimate_kappa(column_map(g, 0, {{5, 2.0}, {4, 2.0}}), 5, 4, 0) == -0.5);
    CHECK(estimate_kappa(column_map(g, 0, {{0, 2.0}, {15, 1.0}}), 0, 15, 0) == doctest::Approx(-1.0 / 3));

    DDMatrix r(g);
    r(1, 7) = 1.0;
    r(1, 8) = 1.0;
    CHECK(estimate_iota({r, g}, 1, 7, 8) == 0.5);
    CHECK(estimate_iota({r, g}, 1, 8, 9) == 0.0);

    try {
        estimate_kappa({DDMatrix(g), g}, 3, 4, 0);
        FAIL("zero magnitudes accepted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroDenominator);
    }
    CHECK_THROWS_AS(estimate_kappa(column_map(g, 0, {{5, 1.0}}), 5, 7, 0), Error);

    bool clamped = false;
    CHECK(fraction_from_magnitudes(1.0, 3.0, +1, &clamped) == 0.5);
    CHECK(clamped);
    CHECK(fraction_from_magnitudes(1.0, 3.0, -1, &clamped) == -0.5);
    CHECK(fraction_from_magnitudes(3.0, 1.0, -1, &clamped) == -0.25);
    CHECK_FALSE(clamped);
}

TEST_CASE("bounded output on arbitrary maps") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const FrameGrid g(8, 8, 39063.0, 24e9);
    for (int i = 0; i < 200; ++i) {
        DDMatrix v(g);
        for (auto& e : v.values()) e = {u(gen), u(gen)};
        const FractionalEstimate e = refine_at({v, g}, i % 8, (i / 8) % 8);
        CHECK(e.kappa >= -0.5);
        CHECK(e.kappa <= 0.5);
        CHECK(e.iota >= -0.5);
        CHECK(e.iota <= 0.5);
    }
}

TEST_CASE("sign and ratio law on noiseless single-target maps") {
    for (int n : {32, 64, 128}) {
        const FrameGrid g(n, 32, 39063.0, 24e9);
        for (double kappa : {-0.4, -0.25, -0.1, 0.1, 0.25, 0.4}) {
            const int k0 = n / 4;
            const CorrelationMap v = pilot_map(g, {{{1, 0}, 6.0, k0 + kappa}});
            const int k2 = pick_neighbor(v, k0, 6, Axis::Doppler);
            const int step = kappa > 0 ? 1 : -1;
            CHECK(k2 == k0 + step);
            const double measured = std::abs(v.v(k0, 6)) / std::abs(v.v(k2, 6));
            const double law = std::abs(step - kappa) / std::abs(kappa);
            CHECK(std::abs(measured / law - 1.0) <= 2.0 / n);
            const FractionalEstimate e = refine_at(v, k0, 6);
            CHECK((e.kappa > 0) == (kappa > 0));
            if (n == 64) CHECK(std::abs(e.kappa - kappa) <= 0.02);
        }
    }
    const FrameGrid g(64, 64, 39063.0, 24e9);
    for (double iota : {-0.4, -0.25, -0.1, 0.1, 0.2, 0.25, 0.4}) {
        const CorrelationMap v = pilot_map(g, {{{1, 0}, 20.0 + iota, 5.0}});
        const FractionalEstimate e = refine_at(v, 5, 20);
        CHECK((e.iota > 0) == (iota > 0));
        CHECK(std::abs(e.iota - iota) <= 0.02);
    }
}

TEST_CASE("integer target refines to zero fractions") {
    const FrameGrid g = FrameGrid::desk();
    const CorrelationMap v0 = pilot_map(g, {{{1, 0}, 9.0, 4.0}});
    const FractionalEstimate e = refine_at(v0, 4, 9);
    // Neighbours are zero up to FFT round-off.
    CHECK(std::abs(e.kappa) < 1e-12);
    CHECK(std::abs(e.iota) < 1e-12);
    CHECK(e.doppler_index == doctest::Approx(4.0));
    CHECK(e.delay_index == doctest::Approx(9.0));
    CHECK_FALSE(e.degenerate);

    const FractionalEstimate z = refine_at({DDMatrix(g), g}, 1, 1);
    CHECK(z.degenerate);
    CHECK(z.kappa == 0.0);
}

TEST_CASE("scaling the map leaves estimates unchanged") {
    const FrameGrid g = FrameGrid::desk();
    const DDMatrix x = generate_qpsk_frame(g, 12);
    const std::vector<Target> t{{{1, 0}, 7.2, 3.35}};
    const CorrelationMap v = correlate(add_noise(apply_channel(x, build_effective_channel(t, g), g), 10.0, 4), x, g);
    const FractionalEstimate a = refine_at(v, 3, 7);
    for (cplx s : {cplx(2.0, 0.0), cplx(0.0, 0.5), cplx(-8.0, 8.0)}) {
        const FractionalEstimate b = refine_at({v.v * s, g}, 3, 7);
        CHECK(b.kappa == doctest::Approx(a.kappa).epsilon(1e-14));
        CHECK(b.iota == doctest::Approx(a.iota).epsilon(1e-14));
    }
}

TEST_CASE("signed Doppler reconstruction and strongest peaks") {
    const FrameGrid g = FrameGrid::desk();
    const CorrelationMap v = pilot_map(g, {{{1, 0}, 11.12, 22.65}, {{1, 0}, 3.0, 2.2}});
    const auto est = refine_strongest_peaks(v, 2);
    REQUIRE(est.size() == 2);
    bool saw_alias = false;
    for (const auto& e : est) {
        if (e.k_int == 23) {
            saw_alias = true;
            CHECK(e.doppler_index == doctest::Approx(-9.35).epsilon(0.01));
            CHECK(e.delay_index == doctest::Approx(11.12).epsilon(0.01));
            CHECK(e.velocity_mps(g) < 0.0);
        }
    }
    CHECK(saw_alias);
    CHECK(refine_strongest_peaks(v, 0).empty());

    DetectionList d;
    d.detections.push_back({2, 3, 1.0, 0.5});
    CHECK(refine_detections(v, d).size() == 1);
}

TEST_CASE("estimate CSV header") {
    std::ostringstream os;
    FractionalEstimate e;
    e.k_int = 1;
    e.l_int = 2;
    e.kappa = 0.25;
    e.doppler_index = 1.25;
    e.delay_index = 2.0;
    write_estimates_csv({e}, FrameGrid::desk(), os);
    const std::string s = os.str();
    CHECK(s.rfind("k_int,l_int,kappa,iota,doppler_index,delay_index,range_m,velocity_mps\n", 0) == 0);
    CHECK(s.find("1,2,0.25,0,1.25,2,") != std::string::npos);
}
