// Copyright 2026 The vqgs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>
#include <numeric>
#include <vector>

#include <catch_amalgamated.hpp>

#include "TestHelpers.hpp"
#include "vqgs/error.hpp"
#include "vqgs/parallel.hpp"
#include "vqgs/strategies.hpp"

using namespace vqgs;
using namespace vqgs::testing;
using Catch::Approx;

namespace {

PureState tensor(const PureState &a, const PureState &b) {
    PureState out(a.n_qubits() + b.n_qubits());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

} // namespace

TEST_CASE("standard normal initialization", "[strategies]") {
    Rng rng(42);
    const auto v = init_random(1'000'000, rng);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v)
        var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    CHECK(std::abs(mean) < 0.01);
    CHECK(var > 0.99);
    CHECK(var < 1.01);
    Rng a(7), b(7);
    CHECK(init_random(50, a) == init_random(50, b));
}

TEST_CASE("seed derivation", "[strategies]") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("qubit recursive seeding", "[strategies]") {
    for (bool tied : {true, false}) {
        for (std::size_t m_full : {2, 4}) {
            AnsatzSpec hs = AnsatzSpec::for_model(HamiltonianSpec::heisenberg(4), 2);
            hs.mirror_tied = tied;
            AnsatzSpec fs = AnsatzSpec::for_model(HamiltonianSpec::heisenberg(8), m_full);
            fs.mirror_tied = tied;
            const Ansatz half(hs), full(fs);
            Rng rng(3);
            const auto th = init_random(half.param_count(), rng);
            Rng r1(9);
            auto theta = init_qubit_recursive(half, th, full, r1);
            REQUIRE(theta.size() == full.param_count());
            if (tied)
                CHECK(theta.size() == (3 * 8 / 2 - 1) * m_full);

            // Only the junction angles are new, one per half-system layer.
            std::size_t fresh = 0;
            for (std::size_t m = 0; m < half.layers(); ++m) {
                for (std::size_t b = 0; b < 7; ++b) {
                    const double t = theta[full.entangler_param(m, b)];
                    if (b == 3) {
                        ++fresh;
                    } else {
                        CHECK(t == th[half.entangler_param(m, b % 4)]);
                    }
                }
            }
            CHECK(fresh == half.layers());

            // Extra layers repeat the last assembled one.
            const std::size_t per = full.params_per_layer();
            for (std::size_t m = half.layers(); m < full.layers(); ++m)
                for (std::size_t i = 0; i < per; ++i)
                    CHECK(theta[m * per + i] == theta[(half.layers() - 1) * per + i]);

            // Zero junctions factorize the output into two half outputs.
            for (std::size_t m = 0; m < full.layers(); ++m)
                theta[full.entangler_param(m, 3)] = 0.0;
            if (m_full == 2) {
                const PureState h_out = half.prepare(th);
                const PureState f_out = full.prepare(theta);
                CHECK(max_abs_diff(f_out.amplitudes(), tensor(h_out, h_out).amplitudes()) < 1e-12);
            }
        }
    }
    const Ansatz h4(AnsatzSpec::for_model(HamiltonianSpec::heisenberg(4), 2));
    const Ansatz f6(AnsatzSpec::for_model(HamiltonianSpec::heisenberg(6), 2));
    const Ansatz f8(AnsatzSpec::for_model(HamiltonianSpec::heisenberg(8), 1));
    Rng rng(1);
    const std::vector<double> th(h4.param_count(), 0.1);
    CHECK_THROWS_AS(init_qubit_recursive(h4, th, f6, rng), Error);
    CHECK_THROWS_AS(init_qubit_recursive(h4, th, f8, rng), Error);
}

TEST_CASE("layer recursive growth", "[strategies]") {
    SECTION("two sites reach the singlet energy") {
        const auto spec = AnsatzSpec::for_model(HamiltonianSpec::heisenberg(2), 1);
        Rng rng(5);
        const auto r = run_layer_recursive(spec, {3000}, rng, nullptr);
        CHECK(r.trace.final_energy() == Approx(-3.0).margin(1e-6));
    }
    SECTION("stages and parameter counts") {
        const auto model = HamiltonianSpec::heisenberg(6);
        const auto spec = AnsatzSpec::for_model(model, 3);
        const GroundStateResult gs = ground_state(model);
        Rng rng(5);
        const auto r = run_layer_recursive(spec, {10, 20, 30}, rng, &gs);
        CHECK(r.stage_ends == std::vector<std::size_t>{10, 30, 60});
        CHECK(r.trace.energy.size() == 61);
        CHECK(r.trace.theta.size() == (3 * 6 / 2 - 1) * 3);
        CHECK_THROWS_AS(run_layer_recursive(spec, {10, 20}, rng, &gs), Error);
    }
    SECTION("copied layer keeps the previous parameters") {
        const std::vector<double> t{1, 2, 3, 4, 5, 6};
        CHECK(append_copied_layer(t, 3) == std::vector<double>{1, 2, 3, 4, 5, 6, 4, 5, 6});
        CHECK_THROWS_AS(append_copied_layer(t, 4), Error);
    }
}

TEST_CASE("layer recursive stages lower the mean energy", "[strategies][regression]") {
    const auto model = HamiltonianSpec::heisenberg(8);
    const auto spec = AnsatzSpec::for_model(model, 3);
    const GroundStateResult gs = ground_state(model);
    std::vector<double> mean(3, 0.0);
    for (std::uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(77, s));
        const auto r = run_layer_recursive(spec, {150, 150, 150}, rng, &gs);
        for (std::size_t k = 0; k < 3; ++k)
            mean[k] += r.stage_final_energy[k] / 20.0;
    }
    CHECK(mean[1] <= mean[0]);
    CHECK(mean[2] <= mean[1]);
}

TEST_CASE("ensembles", "[strategies]") {
    const auto model = HamiltonianSpec::heisenberg(4);
    const auto spec = AnsatzSpec::for_model(model, 2);
    const GroundStateResult gs = ground_state(model);
    StrategyConfig cfg;
    cfg.iterations = 40;
    cfg.seed = 123;

    SECTION("one sample has zero spread") {
        cfg.samples = 1;
        const auto st = run_ensemble(spec, cfg, gs);
        CHECK(st.std_fidelity.back() == 0.0);
        CHECK(st.std_energy.back() == 0.0);
    }
    SECTION("reruns and worker counts give identical statistics") {
        for (auto kind : {StrategyKind::Random, StrategyKind::QubitRecursive,
                          StrategyKind::LayerRecursive}) {
            cfg.kind = kind;
            cfg.samples = 6;
            cfg.workers = 1;
            const auto a = run_ensemble(spec, cfg, gs);
            cfg.workers = 3;
            const auto b = run_ensemble(spec, cfg, gs);
            CHECK(a.mean_fidelity == b.mean_fidelity);
            CHECK(a.std_energy == b.std_energy);
            CHECK(a.final_fidelity == b.final_fidelity);
            CHECK(a.mean_fidelity.size() == 41);
            for (std::size_t i = 0; i < a.mean_fidelity.size(); ++i) {
                CHECK(a.std_fidelity[i] >= 0.0);
                CHECK(a.mean_fidelity[i] >= 0.0);
                CHECK(a.mean_fidelity[i] <= 1.0 + 1e-12);
            }
        }
    }
    SECTION("invalid configurations") {
        cfg.samples = 0;
        CHECK_THROWS_AS(run_ensemble(spec, cfg, gs), Error);
        cfg.samples = 2;
        cfg.kind = StrategyKind::LayerRecursive;
        cfg.iterations = 1;
        CHECK_THROWS_AS(run_ensemble(spec, cfg, gs), Error);
        cfg.kind = StrategyKind::QubitRecursive;
        cfg.iterations = 10;
        const auto six = AnsatzSpec::for_model(HamiltonianSpec::heisenberg(6), 2);
        CHECK_THROWS_AS(run_ensemble(six, cfg, ground_state(six.model)), Error);
    }
    CHECK(strategy_from_string("layer") == StrategyKind::LayerRecursive);
    CHECK_THROWS_AS(strategy_from_string("annealed"), Error);
}

TEST_CASE("qubit recursive starts closer than random", "[strategies][property]") {
    const auto model = HamiltonianSpec::heisenberg(8);
    const auto spec = AnsatzSpec::for_model(model, 3);
    const GroundStateResult gs = ground_state(model);
    StrategyConfig cfg;
    cfg.samples = 20;
    cfg.iterations = 1;
    cfg.seed = 99;
    cfg.kind = StrategyKind::Random;
    const auto random = run_ensemble(spec, cfg, gs);
    cfg.kind = StrategyKind::QubitRecursive;
    const auto qubit = run_ensemble(spec, cfg, gs);
    CHECK(qubit.mean_fidelity[0] > random.mean_fidelity[0]);
}

TEST_CASE("depth search at four sites", "[strategies][slow]") {
    VqeDepthOptions opt;
    opt.samples = 20;
    const auto r = min_layers_vqe(HamiltonianSpec::heisenberg(4), 0.99, opt);
    CHECK(r.m_star == 2);
    CHECK(r.cnots == 18);
    CHECK(r.levels.front().passed < 20);
    opt.layer_cap = 1;
    CHECK_THROWS_AS(min_layers_vqe(HamiltonianSpec::heisenberg(4), 0.99, opt), Error);
}

TEST_CASE("worker pool", "[parallel]") {
    std::vector<int> hit(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { hit[i] += 1; });
    CHECK(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 4)
                                         fail(ErrorKind::InvalidArgument, "boom");
                                 }),
                    Error);
    CHECK(default_workers() >= 1);
}
