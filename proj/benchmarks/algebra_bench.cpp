#include <benchmark/benchmark.h>

#include "tmis/crypto.hpp"
#include "tmis/pairing.hpp"

using namespace tmis;

namespace {

const CurveParams* desk() {
    return &CurveParams::desk_set();
}

void BM_FieldMul(benchmark::State& state) {
    Drbg rng = Drbg::from_seed(7);
    FieldElement a(BigUint::from_bytes_be(rng.next_bytes(32)), desk());
    FieldElement b(BigUint::from_bytes_be(rng.next_bytes(32)), desk());
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_FieldMul);

void BM_FieldInv(benchmark::State& state) {
    Drbg rng = Drbg::from_seed(8);
    FieldElement a(BigUint::from_bytes_be(rng.next_bytes(32)), desk());
    for (auto _ : state) {
        benchmark::DoNotOptimize(a.inv());
    }
}
BENCHMARK(BM_FieldInv);

void BM_G1ScalarMul(benchmark::State& state) {
    Drbg rng = Drbg::from_seed(9);
    Scalar k = rng.next_nonzero_scalar(desk());
    G1Point g = desk()->generator();
    for (auto _ : state) {
        benchmark::DoNotOptimize(k * g);
    }
}
BENCHMARK(BM_G1ScalarMul);

void BM_MapToPoint(benchmark::State& state) {
    uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(map_to_point("bench-" + std::to_string(i++), desk()));
    }
}
BENCHMARK(BM_MapToPoint);

void BM_Pairing(benchmark::State& state) {
    Drbg rng = Drbg::from_seed(10);
    G1Point g = desk()->generator();
    G1Point a = rng.next_nonzero_scalar(desk()) * g;
    G1Point b = rng.next_nonzero_scalar(desk()) * g;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pairing(a, b));
    }
}
BENCHMARK(BM_Pairing);

void BM_GtPow(benchmark::State& state) {
    Drbg rng = Drbg::from_seed(11);
    G1Point g = desk()->generator();
    GtElement e = pairing(g, g);
    Scalar k = rng.next_nonzero_scalar(desk());
    for (auto _ : state) {
        benchmark::DoNotOptimize(gt_pow(e, k));
    }
}
BENCHMARK(BM_GtPow);

}  // namespace

BENCHMARK_MAIN();
