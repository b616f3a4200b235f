#include "cmtor/tracecache.hpp"

#include "cmtor/kernels.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>

namespace cmtor {

using json = nlohmann::ordered_json;

std::string TraceCache::record_to_line(const TraceRecord& r) {
    json j;
    j["q"] = r.q;
    j["aq"] = r.aq.get_str();
    j["status"] = r.status == SplitStatus::split ? "split"
                : r.status == SplitStatus::inert ? "inert" : "ramified";
    j["good"] = r.good;
    return j.dump();
}

TraceRecord TraceCache::line_to_record(const std::string& line) {
    json j = json::parse(line);
    TraceRecord r;
    r.q = j.at("q").get<std::uint64_t>();
    r.aq = ExactInt(j.at("aq").get<std::string>());
    std::string s = j.at("status").get<std::string>();
    r.status = s == "split" ? SplitStatus::split : s == "inert" ? SplitStatus::inert : SplitStatus::ramified;
    r.good = j.at("good").get<bool>();
    return r;
}

std::filesystem::path TraceCache::file_for(const CurveModel& E, std::uint64_t qmax) const {
    std::string name = "traces_D" + std::to_string(E.cm->D) + "_f" + std::to_string(E.cm->f) +
                       "_d" + E.cm->d.get_str() + "_q" + std::to_string(qmax) + ".jsonl";
    return std::filesystem::path(dir_) / name;
}

std::vector<TraceRecord> TraceCache::traces(const CurveModel& E, std::uint64_t qmax) {
    if (dir_.empty() || !E.cm) return trace_range(E, 2, qmax);
    auto path = file_for(E, qmax);
    if (std::filesystem::exists(path)) {
        std::vector<TraceRecord> out;
        std::ifstream in(path);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) out.push_back(line_to_record(line));
        return out;
    }
    auto out = trace_range(E, 2, qmax);
    std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream of(tmp);
        for (const auto& r : out) of << record_to_line(r) << "\n";
    }
    std::filesystem::rename(tmp, path);
    return out;
}

std::string resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    const char* env = std::getenv("CM_TORSION_CACHE");
    return env ? env : "";
}

} // namespace cmtor
