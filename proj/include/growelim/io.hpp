#pragma once

// Plain-text instance and schedule files. Indices in files are 1-based.
//
// Instance:  "shape d n", then one line per shape: d coordinates followed by
//            the rate (or d per-axis rates for rect/box). Line order is
//            priority order. Blank lines and lines starting with '#' are
//            skipped.
// Schedule:  "victim eliminator time" per record, ascending by time, then
//            "survivor 1".

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "growelim/core.hpp"

namespace growelim {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest "%.17g" rendering; "inf" for kNever.
std::string format_number(double x);

Instance parse_instance(std::istream& in);
Instance read_instance(const std::filesystem::path& path);
void write_instance(std::ostream& out, const Instance& inst);
void write_instance(const std::filesystem::path& path, const Instance& inst);

/// Parses and checks the schedule invariants for n = records + 1 shapes.
EliminationSchedule parse_schedule(std::istream& in);
EliminationSchedule read_schedule(const std::filesystem::path& path);
void write_schedule(std::ostream& out, const EliminationSchedule& schedule);
void write_schedule(const std::filesystem::path& path,
                    const EliminationSchedule& schedule);

/// {"survivor": 1, "records": [{"victim":..,"eliminator":..,"time":..}]}
std::string schedule_json(const EliminationSchedule& schedule);

}  // namespace growelim
