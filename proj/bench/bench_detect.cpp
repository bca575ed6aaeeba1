// Serial reference vs OpenMP kernels on random token corpora with planted
// copies.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "cloneblame/detector.hpp"
#include "cloneblame/suffix_array.hpp"

using namespace cloneblame::detect;

namespace {

std::vector<Symbol> text_of(std::size_t n) {
    std::mt19937_64 rng(n);
    std::uniform_int_distribution<Symbol> sym(0, 60);
    std::vector<Symbol> t(n);
    for (auto& x : t) {
        x = sym(rng);
    }
    // copy 5% of the text around in 200-token chunks
    for (std::size_t k = 0; k + 400 < n && k < n / 20; k += 200) {
        const auto from = std::uniform_int_distribution<std::size_t>(0, n - 200)(rng);
        const auto to = std::uniform_int_distribution<std::size_t>(0, n - 200)(rng);
        std::copy_n(t.begin() + static_cast<std::ptrdiff_t>(from), 200, t.begin() + static_cast<std::ptrdiff_t>(to));
    }
    return t;
}

std::vector<TokenFile> files_of(std::size_t n) {
    const auto t = text_of(n);
    std::vector<TokenFile> files;
    for (std::size_t off = 0; off < n; off += 2000) {
        TokenFile f;
        f.file_id = static_cast<FileId>(files.size());
        for (std::size_t i = off; i < std::min(n, off + 2000); ++i) {
            f.tokens.push_back({"s" + std::to_string(t[i]), static_cast<std::uint32_t>(i - off)});
            f.lines.push_back(static_cast<std::uint32_t>((i - off) / 8 + 1));
        }
        files.push_back(std::move(f));
    }
    return files;
}

void BM_SuffixArraySerial(benchmark::State& state) {
    const auto t = text_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(suffix_array_serial(t));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SuffixArrayParallel(benchmark::State& state) {
    const auto t = text_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(suffix_array(t));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LcpSerial(benchmark::State& state) {
    const auto t = text_of(static_cast<std::size_t>(state.range(0)));
    const auto sa = suffix_array(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lcp_array_serial(t, sa));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_LcpParallel(benchmark::State& state) {
    const auto t = text_of(static_cast<std::size_t>(state.range(0)));
    const auto sa = suffix_array(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lcp_array(t, sa));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DetectSerial(benchmark::State& state) {
    const auto files = files_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_clone_sets_serial(files, {}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DetectParallel(benchmark::State& state) {
    const auto files = files_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_clone_sets(files, {}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SuffixArraySerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuffixArrayParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LcpSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LcpParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetectSerial)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DetectParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
