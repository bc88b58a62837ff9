// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "hosq/integrator.hpp"
#include "hosq/mesh.hpp"
#include "hosq/quadrature.hpp"
#include "hosq/spectral.hpp"
#include "hosq/surfaces.hpp"

namespace {

const hosq::Sphere& sphere() {
    static const hosq::Sphere s(1.0);
    return s;
}

const hosq::TriangleMesh& sphere_mesh() {
    static const hosq::TriangleMesh mesh = hosq::gen_icosphere(2, sphere());
    return mesh;
}

void BM_ClosestPointSphere(benchmark::State& state) {
    const Eigen::Vector3d x(0.9, 0.4, 0.6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hosq::closest_point(sphere(), x));
    }
}
BENCHMARK(BM_ClosestPointSphere);

void BM_ClosestPointDziuk(benchmark::State& state) {
    static const hosq::DziukSurface dziuk;
    const Eigen::Vector3d x(0.7, 0.3, -0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hosq::closest_point(dziuk, x));
    }
}
BENCHMARK(BM_ClosestPointDziuk);

void BM_DiffOpsBuild(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hosq::tensor_diff(order));
    }
}
BENCHMARK(BM_DiffOpsBuild)->Arg(8)->Arg(16);

void BM_ElementIntegral(benchmark::State& state) {
    const int order = static_cast<int>(state.range(0));
    const auto geom = hosq::build_element(sphere_mesh(), 0, &sphere(), order);
    const auto rule = hosq::tensor_rule(hosq::cc_rule(order));
    const auto ops = hosq::tensor_diff(order);
    const auto one = hosq::constant_one();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hosq::element_integral(geom, one, rule, ops));
    }
}
BENCHMARK(BM_ElementIntegral)->Arg(4)->Arg(8)->Arg(12);

void BM_SphereArea(benchmark::State& state) {
    const int degree = static_cast<int>(state.range(0));
    hosq::IntegrateOptions opts;
    opts.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hosq::integrate(sphere_mesh(), &sphere(),
                                                 hosq::constant_one(), degree,
                                                 opts));
    }
}
BENCHMARK(BM_SphereArea)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
