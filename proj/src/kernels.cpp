#include "cmtor/kernels.hpp"

#include "cmtor/factorizer.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cmtor {

std::vector<TraceRecord> trace_range_serial(const CurveModel& E, std::uint64_t qlo, std::uint64_t qhi) {
    std::vector<std::uint64_t> qs;
    std::uint64_t q = qlo >= 2 ? qlo - 1 : 1;
    while ((q = next_prime(q)) <= qhi) qs.push_back(q);
    std::vector<TraceRecord> out(qs.size());
    for (std::size_t i = 0; i < qs.size(); ++i) out[i] = trace(E, qs[i]);
    return out;
}

std::vector<TraceRecord> trace_range(const CurveModel& E, std::uint64_t qlo, std::uint64_t qhi) {
    std::vector<std::uint64_t> qs;
    std::uint64_t q = qlo >= 2 ? qlo - 1 : 1;
    while ((q = next_prime(q)) <= qhi) qs.push_back(q);
    std::vector<TraceRecord> out(qs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::size_t i = 0; i < qs.size(); ++i) out[i] = trace(E, qs[i]);
    return out;
}

std::vector<std::optional<std::vector<int>>>
pattern_sweep_serial(const ZPoly& f, const std::vector<std::uint64_t>& primes) {
    std::vector<std::optional<std::vector<int>>> out(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) out[i] = pattern_mod(f, primes[i]);
    return out;
}

std::vector<std::optional<std::vector<int>>>
pattern_sweep(const ZPoly& f, const std::vector<std::uint64_t>& primes) {
    std::vector<std::optional<std::vector<int>>> out(primes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < primes.size(); ++i) out[i] = pattern_mod(f, primes[i]);
    return out;
}

static std::vector<std::uint64_t> split_good_primes(int D, int f, const ExactInt& d, std::uint64_t pmax) {
    CurveModel base = curve_by_df(D, f);
    CurveModel tw = twist(base, d);
    ExactInt disc = field_disc(D);
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; (p = next_prime(p)) < pmax;) {
        if (kronecker(disc, ExactInt(static_cast<unsigned long>(p))) != 1) continue;
        if (d % ExactInt(static_cast<unsigned long>(p)) == 0) continue;
        if (!reduce(tw, p)) continue;
        ps.push_back(p);
    }
    return ps;
}

std::vector<CountCheck> cm_count_sweep_serial(int D, int f, const ExactInt& d, std::uint64_t pmax) {
    CurveModel tw = twist(curve_by_df(D, f), d);
    auto ps = split_good_primes(D, f, d, pmax);
    std::vector<CountCheck> out(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        auto C = reduce(tw, ps[i]);
        out[i] = {ps[i], count_points_enumerate(*C), cm_prediction(D, f, d, ps[i])};
    }
    return out;
}

std::vector<CountCheck> cm_count_sweep(int D, int f, const ExactInt& d, std::uint64_t pmax) {
    CurveModel tw = twist(curve_by_df(D, f), d);
    auto ps = split_good_primes(D, f, d, pmax);
    std::vector<CountCheck> out(ps.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t i = 0; i < ps.size(); ++i) {
        auto C = reduce(tw, ps[i]);
        out[i] = {ps[i], count_points_enumerate(*C), cm_prediction(D, f, d, ps[i])};
    }
    return out;
}

} // namespace cmtor
