#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "rcsim/resilience.hpp"

namespace rcsim {

/// Column order of every trace CSV.
inline constexpr std::string_view kTraceCsvHeader =
    "scenario,mode,strategy,instance_seed,replica_seed,frac_removed,diameter,apl,efficiency,clustering,"
    "degree_variance,reachable_pair_fraction";

/// Numbers use 6 significant digits (printf %g); undefined values are empty.
std::string format_number(std::optional<double> value);

/// Header plus one row per trace point. Seed columns are filled when every
/// contributing trace shares that seed, empty otherwise.
void write_trace_csv(std::ostream& out, const Trace& trace);
void write_trace_csv(const std::filesystem::path& path, const Trace& trace);

/// Parses a file written by write_trace_csv. Throws SchemaError naming the
/// file when the header is wrong, the file has no rows, or a row is malformed.
Trace read_trace_csv(const std::filesystem::path& path);

}  // namespace rcsim
