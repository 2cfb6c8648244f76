#include "growelim/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace growelim {

namespace {

bool skip_line(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

double parse_double(const std::string& token, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + token + "'");
}

std::uint64_t parse_count(const std::string& token, std::size_t line_no) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("line " + std::to_string(line_no) + ": not a count: '" + token + "'");
  return v;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (x == kNever) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Instance parse_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    header = tokens(line);
    break;
  }
  if (header.size() != 3) throw ParseError("expected header 'shape d n'");
  const auto kind = parse_shape_kind(header[0]);
  if (!kind) throw ParseError("unknown shape '" + header[0] + "'");
  const std::uint64_t d = parse_count(header[1], line_no);
  const std::uint64_t n = parse_count(header[2], line_no);
  if (d < 1 || d > 64) throw ParseError("dimension out of range");
  const std::size_t rates_per = has_axis_rates(*kind) ? d : 1;

  std::vector<double> centers, rates;
  centers.reserve(n * d);
  rates.reserve(n * rates_per);
  std::uint64_t read = 0;
  while (read < n && std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    const auto t = tokens(line);
    if (t.size() != d + rates_per)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(d + rates_per) + " values, got " +
                       std::to_string(t.size()));
    for (std::size_t k = 0; k < d; ++k) centers.push_back(parse_double(t[k], line_no));
    for (std::size_t k = 0; k < rates_per; ++k)
      rates.push_back(parse_double(t[d + k], line_no));
    ++read;
  }
  if (read != n)
    throw ParseError("expected " + std::to_string(n) + " shapes, found " +
                     std::to_string(read));
  while (std::getline(in, line)) {
    ++line_no;
    if (!skip_line(line))
      throw ParseError("line " + std::to_string(line_no) + ": trailing data");
  }
  try {
    return Instance(*kind, static_cast<int>(d), std::move(centers), std::move(rates));
  } catch (const InstanceError& e) {
    throw ParseError(e.what());
  }
}

Instance read_instance(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << to_string(inst.kind()) << ' ' << inst.dimension() << ' ' << inst.size() << '\n';
  for (Index i = 0; i < inst.size(); ++i) {
    std::string line;
    for (const double c : inst.center(i)) {
      line += format_number(c);
      line += ' ';
    }
    for (const double r : inst.rate(i)) {
      line += format_number(r);
      line += ' ';
    }
    line.back() = '\n';
    out << line;
  }
}

void write_instance(const std::filesystem::path& path, const Instance& inst) {
  auto out = open_out(path);
  write_instance(out, inst);
}

EliminationSchedule parse_schedule(std::istream& in) {
  EliminationSchedule s;
  std::string line;
  std::size_t line_no = 0;
  bool survivor_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    if (survivor_seen)
      throw ParseError("line " + std::to_string(line_no) + ": data after survivor");
    const auto t = tokens(line);
    if (t.size() == 2 && t[0] == "survivor") {
      if (parse_count(t[1], line_no) != 1)
        throw ParseError("line " + std::to_string(line_no) + ": survivor must be 1");
      survivor_seen = true;
      continue;
    }
    if (t.size() != 3)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'victim eliminator time'");
    const std::uint64_t victim = parse_count(t[0], line_no);
    const std::uint64_t eliminator = parse_count(t[1], line_no);
    if (victim < 1 || eliminator < 1 || victim > kNoIndex || eliminator > kNoIndex)
      throw ParseError("line " + std::to_string(line_no) + ": index out of range");
    s.records.push_back({static_cast<Index>(victim - 1),
                         static_cast<Index>(eliminator - 1), parse_double(t[2], line_no)});
  }
  if (!survivor_seen) throw ParseError("missing 'survivor 1' line");
  const auto problems = check_schedule(s, s.records.size() + 1);
  if (!problems.empty()) throw ParseError("invalid schedule: " + problems.front());
  return s;
}

EliminationSchedule read_schedule(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_schedule(in);
}

void write_schedule(std::ostream& out, const EliminationSchedule& schedule) {
  for (const EliminationRecord& r : schedule.records)
    out << r.victim + 1 << ' ' << r.eliminator + 1 << ' ' << format_number(r.time) << '\n';
  out << "survivor " << schedule.survivor + 1 << '\n';
}

void write_schedule(const std::filesystem::path& path,
                    const EliminationSchedule& schedule) {
  auto out = open_out(path);
  write_schedule(out, schedule);
}

std::string schedule_json(const EliminationSchedule& schedule) {
  nlohmann::json records = nlohmann::json::array();
  for (const EliminationRecord& r : schedule.records)
    records.push_back(
        {{"victim", r.victim + 1}, {"eliminator", r.eliminator + 1}, {"time", r.time}});
  const nlohmann::json doc = {{"survivor", schedule.survivor + 1}, {"records", records}};
  return doc.dump(2);
}

}  // namespace growelim
