// Data-parallel kernels (OpenMP) with serial reference implementations kept
// for testing; see tools/bench_kernels.cpp for the comparison harness.
#pragma once

#include "cmtor/curves.hpp"
#include "cmtor/zpoly.hpp"

namespace cmtor {

// Frobenius traces of E at every prime in [qlo, qhi], ascending by q.
// Records at bad-model primes come back with good=false.
std::vector<TraceRecord> trace_range(const CurveModel& E, std::uint64_t qlo, std::uint64_t qhi);
std::vector<TraceRecord> trace_range_serial(const CurveModel& E, std::uint64_t qlo, std::uint64_t qhi);

// Factorization degree patterns of f at each listed prime; an empty entry
// marks a ramified prime.
std::vector<std::optional<std::vector<int>>>
pattern_sweep(const ZPoly& f, const std::vector<std::uint64_t>& primes);
std::vector<std::optional<std::vector<int>>>
pattern_sweep_serial(const ZPoly& f, const std::vector<std::uint64_t>& primes);

// |E^d(F_p)| for every split good p < pmax (enumeration), paired with the
// CM-prediction comparison; used by the count-formula verification.
struct CountCheck {
    std::uint64_t p;
    ExactInt counted;
    ExactInt predicted;
};
std::vector<CountCheck> cm_count_sweep(int D, int f, const ExactInt& d, std::uint64_t pmax);
std::vector<CountCheck> cm_count_sweep_serial(int D, int f, const ExactInt& d, std::uint64_t pmax);

} // namespace cmtor
