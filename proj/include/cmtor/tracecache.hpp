// JSON-lines persistence of trace records, keyed by curve and range.
#pragma once

#include "cmtor/curves.hpp"

#include <filesystem>

namespace cmtor {

class TraceCache {
public:
    // empty dir disables persistence (everything recomputed)
    explicit TraceCache(std::string dir) : dir_(std::move(dir)) {}

    // records for all primes in [2, qmax], served from disk when available
    std::vector<TraceRecord> traces(const CurveModel& E, std::uint64_t qmax);

    static std::string record_to_line(const TraceRecord& r);
    static TraceRecord line_to_record(const std::string& line);

private:
    std::filesystem::path file_for(const CurveModel& E, std::uint64_t qmax) const;
    std::string dir_;
};

// cache directory resolution: explicit flag, else CM_TORSION_CACHE, else none
std::string resolve_cache_dir(const std::string& flag_value);

} // namespace cmtor
