// Compares the OpenMP kernels against their serial reference implementations
// on representative workloads and prints timings plus speedups.
#include "cmtor/divpoly.hpp"
#include "cmtor/kernels.hpp"

#include <chrono>
#include <cstdio>

using namespace cmtor;

namespace {

template <typename F>
double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-34s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial, parallel,
                serial / parallel, agree ? "outputs agree" : "OUTPUT MISMATCH");
}

} // namespace

int main() {
    pinned_convention(4); // one-time pinning outside the timed regions
    pinned_convention(6);
    std::printf("%-34s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");

    {
        CurveModel E = curve_by_df(11, 1);
        std::vector<TraceRecord> a, b;
        double ts = time_ms([&] { a = trace_range_serial(E, 2, 20000); });
        double tp = time_ms([&] { b = trace_range(E, 2, 20000); });
        bool agree = a.size() == b.size();
        for (std::size_t i = 0; agree && i < a.size(); ++i)
            agree = a[i].q == b[i].q && a[i].aq == b[i].aq && a[i].good == b[i].good;
        row("trace_range  E(11,1), q<2e4", ts, tp, agree);
    }

    {
        // fingerprint-sized workload: the degree-24 polynomial Psi_7
        DivPolyEngine eng(curve_by_df(7, 1));
        ZPoly psi = eng.big_psi(7);
        std::vector<std::uint64_t> primes;
        for (std::uint64_t q = 2; primes.size() < 4000;) primes.push_back(q = next_prime(q));
        std::vector<std::optional<std::vector<int>>> a, b;
        double ts = time_ms([&] { a = pattern_sweep_serial(psi, primes); });
        double tp = time_ms([&] { b = pattern_sweep(psi, primes); });
        row("pattern_sweep  Psi_7, 4000 primes", ts, tp, a == b);
    }

    {
        std::vector<CountCheck> a, b;
        double ts = time_ms([&] { a = cm_count_sweep_serial(4, 1, ExactInt(3), 3000); });
        double tp = time_ms([&] { b = cm_count_sweep(4, 1, ExactInt(3), 3000); });
        bool agree = a.size() == b.size();
        for (std::size_t i = 0; agree && i < a.size(); ++i)
            agree = a[i].p == b[i].p && a[i].counted == b[i].counted &&
                    a[i].predicted == b[i].predicted;
        row("cm_count_sweep  E(4,1)^3, p<3000", ts, tp, agree);
    }
    return 0;
}
