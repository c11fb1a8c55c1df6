#include "gista/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gista {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, const std::string& path) {
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw std::runtime_error("bad numeric field '" + std::string(s) + "' in " + path);
  return v;
}

void write_atomically(const std::string& path, const std::string& body) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << body;
    if (!out) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

constexpr const char* kCsvHeader = "iter,objective,gap,zeta_accepted,backtracks,nnz_frac,err_to_ref";

}  // namespace

void export_trace(const std::vector<TraceRecord>& trace, TraceFormat format,
                  const std::string& path) {
  std::ostringstream body;
  if (format == TraceFormat::Csv) {
    body << kCsvHeader << '\n';
    for (const auto& r : trace) {
      body << r.iter << ',' << fmt17(r.objective) << ',' << fmt17(r.gap) << ','
           << fmt17(r.zeta_accepted) << ',' << r.backtracks << ',' << fmt17(r.nnz_frac) << ',';
      if (r.err_to_ref) body << fmt17(*r.err_to_ref);
      body << '\n';
    }
  } else {
    for (const auto& r : trace) {
      nlohmann::ordered_json j;
      j["iter"] = r.iter;
      j["objective"] = r.objective;
      // JSON has no inf literal; null marks an unavailable gap.
      if (std::isfinite(r.gap))
        j["gap"] = r.gap;
      else
        j["gap"] = nullptr;
      j["zeta_accepted"] = r.zeta_accepted;
      j["backtracks"] = r.backtracks;
      j["nnz_frac"] = r.nnz_frac;
      if (r.err_to_ref) j["err_to_ref"] = *r.err_to_ref;
      body << j.dump() << '\n';
    }
  }
  write_atomically(path, body.str());
}

std::vector<TraceRecord> parse_trace(TraceFormat format, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<TraceRecord> out;
  std::string line;

  if (format == TraceFormat::Csv) {
    if (!std::getline(in, line)) throw std::runtime_error("empty trace file " + path);
    if (line != kCsvHeader) throw std::runtime_error("unexpected trace header in " + path);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::string cell;
      std::istringstream ls(line);
      while (std::getline(ls, cell, ',')) fields.push_back(cell);
      if (line.back() == ',') fields.emplace_back();
      if (fields.size() != 7) throw std::runtime_error("bad trace row in " + path);
      TraceRecord r;
      r.iter = static_cast<int>(parse_double(fields[0], path));
      r.objective = parse_double(fields[1], path);
      r.gap = parse_double(fields[2], path);
      r.zeta_accepted = parse_double(fields[3], path);
      r.backtracks = static_cast<int>(parse_double(fields[4], path));
      r.nnz_frac = parse_double(fields[5], path);
      if (!fields[6].empty()) r.err_to_ref = parse_double(fields[6], path);
      out.push_back(r);
    }
  } else {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = nlohmann::json::parse(line);
      TraceRecord r;
      r.iter = j.at("iter").get<int>();
      r.objective = j.at("objective").get<double>();
      r.gap = j.at("gap").is_null() ? std::numeric_limits<double>::infinity()
                                    : j.at("gap").get<double>();
      r.zeta_accepted = j.at("zeta_accepted").get<double>();
      r.backtracks = j.at("backtracks").get<int>();
      r.nnz_frac = j.at("nnz_frac").get<double>();
      if (j.contains("err_to_ref")) r.err_to_ref = j.at("err_to_ref").get<double>();
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace gista
