// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "otfs/sampling.hpp"

using namespace otfs;

TEST_CASE("sampling kernels at anchor points") {
    CHECK(std::abs(sampling_g(0.0, 32) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(sampling_f(0.0, 32) - cplx(1.0, 0.0)) < 1e-15);
    for (int d = 1; d < 32; ++d) CHECK(std::abs(sampling_g(d, 32)) < 1e-12);
    CHECK(std::abs(sampling_f(16.0, 32)) < 1e-12);
    CHECK(std::abs(std::abs(sampling_g(0.5, 32)) - 0.63688) < 1e-4);
    CHECK(std::abs(std::abs(sampling_f(-0.25, 64)) - 0.9003) < 1e-3);

    const FrameGrid g(32, 32, 39063.0, 24e9);
    CHECK(std::abs(sampling_omega(0.0, 0.0, g) - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(sampling_omega(3.0, 0.0, g)) < 1e-12);
    CHECK(std::abs(std::abs(sampling_omega(0.5, 0.5, g)) - 0.4056) < 1e-3);
    CHECK(std::abs(std::abs(sampling_omega(0.5, 0.5, g)) -
                   std::abs(oracle::g_sum(0.5, 32)) * std::abs(oracle::f_sum(0.5, 32))) < 1e-12);
}

TEST_CASE("sampling kernel is N-periodic at integer shifts") {
    const int n = 16;
    for (int d = -n; d <= n; ++d) {
        for (int q = -3; q <= 3; ++q) {
            CHECK(std::abs(sampling_g(d + n * q, n) - sampling_g(d, n)) < 1e-12);
            CHECK(std::abs(sampling_f(d + n * q, n) - sampling_f(d, n)) < 1e-12);
        }
    }
}

TEST_CASE("sampling kernel magnitudes never exceed one") {
    for (int i = 0; i < 1000; ++i) {
        const double x = -40.0 + 80.0 * i / 999.0;
        CHECK(std::abs(sampling_g(x, 32)) <= 1.0 + 1e-15);
        CHECK(std::abs(sampling_f(x, 64)) <= 1.0 + 1e-15);
    }
}

TEST_CASE("closed form agrees with the literal sum") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int n : {2, 7, 16, 32, 64, 128}) {
        for (int i = 0; i < 100; ++i) {
            const double x = u(gen);
            CHECK(std::abs(sampling_g(x, n) - oracle::g_sum(x, n)) < 1e-12);
            CHECK(std::abs(sampling_f(x, n) - oracle::f_sum(x, n)) < 1e-12);
        }
        // Near the removable singularity and near integers.
        for (double x : {1e-9, -3e-7, 2e-4, -9.99e-4 / kPi, 1e-3 / kPi, 1.0 + 1e-8, 3.0 - 1e-6, n - 1e-7}) {
            CHECK(std::abs(sampling_g(x, n) - oracle::g_sum(x, n)) < 1e-12);
            CHECK(std::abs(sampling_f(x, n) - oracle::f_sum(x, n)) < 1e-12);
        }
    }
}

TEST_CASE("kernel derivatives match central differences") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    const double h = 1e-6;
    for (int n : {8, 16, 32}) {
        std::vector<double> xs{0.0, 1e-5, -2e-4, 1.0, -3.0, 0.5};
        for (int i = 0; i < 50; ++i) xs.push_back(u(gen));
        for (double x : xs) {
            const cplx fd_g = (oracle::g_sum(x + h, n) - oracle::g_sum(x - h, n)) / (2 * h);
            const cplx fd_f = (oracle::f_sum(x + h, n) - oracle::f_sum(x - h, n)) / (2 * h);
            CHECK(std::abs(sampling_g_derivative(x, n) - fd_g) < 1e-7);
            CHECK(std::abs(sampling_f_derivative(x, n) - fd_f) < 1e-7);
        }
    }
}
