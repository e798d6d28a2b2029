// SPDX-License-Identifier: Apache-2.0
#include "otfs/correlator.hpp"

#include "otfs/channel.hpp"
#include "otfs/csv.hpp"
#include "otfs/fft.hpp"
#include "otfs/rng.hpp"
#include "otfs/simd/kernels.hpp"
#include "otfs/symbols.hpp"

namespace otfs {
namespace {

constexpr std::uint64_t kFrameStream = 0x46524d;
constexpr std::uint64_t kNoiseStream = 0x4e4f53;

}  // namespace

PowerMap CorrelationMap::power() const {
    PowerMap p(v.rows(), v.cols());
    simd::norm_sq(v.values(), p.values());
    return p;
}

CorrelationMap correlate(const DDMatrix& y, const DDMatrix& x, const FrameGrid& grid) {
    y.require_grid(grid);
    x.require_grid(grid);
    const Fft2d& plan = Fft2d::get(grid.n_doppler(), grid.m_delay());
    DDMatrix fy = y;
    DDMatrix fx = x;
    plan.forward(fy.data());
    plan.forward(fx.data());
    // conj(V) = IDFT(FY * conj(FX))
    simd::cmul_conj(fx.values(), fy.values(), fy.values());
    plan.backward(fy.data());
    const double inv = 1.0 / static_cast<double>(grid.cells());
    for (auto& e : fy.values()) e = std::conj(e) * inv;
    return {std::move(fy), grid};
}

CorrelationMap correlate_direct(const DDMatrix& y, const DDMatrix& x, const FrameGrid& grid) {
    y.require_grid(grid);
    x.require_grid(grid);
    const int n = grid.n_doppler();
    const int m = grid.m_delay();
    DDMatrix v(grid);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
            cplx acc{};
            for (int a = 0; a < n; ++a) {
                for (int b = 0; b < m; ++b) acc += std::conj(y(a, b)) * x.at_wrapped(a - k, b - l);
            }
            v(k, l) = acc;
        }
    }
    return {std::move(v), grid};
}

CorrelationMeanReport correlation_mean_check(const Scenario& scenario, int trials) {
    if (trials < 100) throw Error(Errc::InvalidArgument, "correlation mean check needs at least 100 trials");
    const FrameGrid& grid = scenario.grid;
    const EffectiveChannel chan = build_effective_channel(scenario.targets, grid);
    const double sigma2 = noise_variance(scenario.snr_db);
    const double sigma = std::sqrt(sigma2);
    const double inv_mn = 1.0 / static_cast<double>(grid.cells());
    const std::size_t cells = grid.cells();

    // Welford accumulators per cell for the full statistic and the noise part.
    DDMatrix mean(grid), noise_mean(grid);
    std::vector<double> m2(cells, 0.0), noise_m2(cells, 0.0);
    for (int t = 0; t < trials; ++t) {
        const DDMatrix x = generate_qpsk_frame(grid, derive_seed(scenario.rng_seed, kFrameStream, t));
        DDMatrix y = apply_channel(x, chan, grid);
        DDMatrix vz(grid);
        if (sigma2 > 0.0) {
            DDMatrix z = unit_noise(grid, derive_seed(scenario.rng_seed, kNoiseStream, t));
            z *= cplx(sigma);
            y += z;
            vz = correlate(z, x, grid).v;
        }
        const DDMatrix v = correlate(y, x, grid).v;
        const double w = 1.0 / (t + 1);
        for (std::size_t i = 0; i < cells; ++i) {
            const cplx s = v.data()[i] * inv_mn;
            const cplx d = s - mean.data()[i];
            mean.data()[i] += d * w;
            m2[i] += std::real(std::conj(d) * (s - mean.data()[i]));
            const cplx sn = vz.data()[i] * inv_mn;
            const cplx dn = sn - noise_mean.data()[i];
            noise_mean.data()[i] += dn * w;
            noise_m2[i] += std::real(std::conj(dn) * (sn - noise_mean.data()[i]));
        }
    }

    CorrelationMeanReport rep;
    rep.trials = trials;
    rep.expected = DDMatrix(grid);
    for (std::size_t i = 0; i < cells; ++i) rep.expected.data()[i] = std::conj(chan.h_omega.data()[i]);
    double total = 0.0, noise_total = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double var = m2[i] / (trials - 1);
        const double dev = std::abs(mean.data()[i] - rep.expected.data()[i]);
        rep.max_abs_deviation = std::max(rep.max_abs_deviation, dev);
        // Deterministic cells carry round-off variance only; skip them.
        double z = 0.0;
        if (dev > 1e-12) z = var > 0.0 ? dev / std::sqrt(var / trials) : std::numeric_limits<double>::infinity();
        rep.max_z_score = std::max(rep.max_z_score, z);
        total += var;
        noise_total += noise_m2[i] / (trials - 1);
    }
    rep.mean = std::move(mean);
    rep.mean_total_variance = total / cells;
    rep.mean_noise_variance = noise_total / cells;
    rep.expected_noise_variance = sigma2 * inv_mn;
    return rep;
}

void write_magnitude_csv(const CorrelationMap& map, std::ostream& os) {
    for (int k = 0; k < map.v.rows(); ++k) {
        for (int l = 0; l < map.v.cols(); ++l) {
            if (l) os << ',';
            os << fmt9(std::abs(map.v(k, l)));
        }
        os << '\n';
    }
}

}  // namespace otfs
