#include "rcsim/trace_csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rcsim/errors.hpp"

namespace rcsim {

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <class Get>
std::string shared_seed(const std::vector<SeedPair>& sources, Get get) {
    if (sources.empty()) return {};
    for (const SeedPair& s : sources) {
        if (get(s) != get(sources.front())) return {};
    }
    return std::to_string(get(sources.front()));
}

}  // namespace

std::string format_number(std::optional<double> value) {
    if (!value) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *value);
    return buf;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
    const std::string prefix = trace.meta.scenario + ',' + trace.meta.mode + ',' +
                               std::string(to_string(trace.meta.strategy)) + ',' +
                               shared_seed(trace.meta.sources, [](const SeedPair& s) { return s.instance_seed; }) +
                               ',' +
                               shared_seed(trace.meta.sources, [](const SeedPair& s) { return s.replica_seed; });
    out << kTraceCsvHeader << '\n';
    for (const TracePoint& p : trace.points) {
        const MetricVector& m = p.metrics;
        out << prefix << ',' << format_number(p.removed_fraction) << ',' << format_number(m.diameter) << ','
            << format_number(m.apl) << ',' << format_number(m.efficiency) << ',' << format_number(m.clustering)
            << ',' << format_number(m.degree_variance) << ',' << format_number(m.reachable_pair_fraction) << '\n';
    }
}

void write_trace_csv(const std::filesystem::path& path, const Trace& trace) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_trace_csv(out, trace);
}

Trace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path.string() + ": cannot open");
    std::string line;
    if (!std::getline(in, line) || line != kTraceCsvHeader) {
        throw SchemaError(path.string() + ": missing or unexpected header (expected " + std::string(kTraceCsvHeader) +
                          ")");
    }
    const auto number = [&](const std::string& s, std::size_t row) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw SchemaError(path.string() + ": row " + std::to_string(row) + ": bad number '" + s + "'");
    };
    Trace trace;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 12) {
            throw SchemaError(path.string() + ": row " + std::to_string(row) + ": expected 12 columns");
        }
        if (trace.points.empty()) {
            trace.meta.scenario = f[0];
            trace.meta.mode = f[1];
            trace.meta.strategy = parse_strategy(f[2]);
            SeedPair seeds;
            if (!f[3].empty()) seeds.instance_seed = std::stoull(f[3]);
            if (!f[4].empty()) seeds.replica_seed = std::stoull(f[4]);
            trace.meta.sources.push_back(seeds);
        }
        TracePoint p;
        const auto frac = number(f[5], row);
        if (!frac) throw SchemaError(path.string() + ": row " + std::to_string(row) + ": empty frac_removed");
        p.removed_fraction = *frac;
        p.metrics.diameter = number(f[6], row);
        p.metrics.apl = number(f[7], row);
        p.metrics.efficiency = number(f[8], row);
        p.metrics.clustering = number(f[9], row);
        p.metrics.degree_variance = number(f[10], row);
        p.metrics.reachable_pair_fraction = number(f[11], row);
        trace.points.push_back(p);
    }
    if (trace.points.empty()) throw SchemaError(path.string() + ": no data rows");
    return trace;
}

}  // namespace rcsim
