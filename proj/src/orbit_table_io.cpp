#include "orbitcensus/orbit_table_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "orbitcensus/errors.hpp"
#include "orbitcensus/model_io.hpp"

namespace orbitcensus {

namespace {

std::string format_length(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t end = line.find(sep, pos);
    fields.push_back(line.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return fields;
}

std::string header_for(std::size_t k) {
  std::string header = "length";
  for (std::size_t i = 1; i <= k; ++i) header += ",weight_" + std::to_string(i);
  return header + ",count";
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw IngestionError("orbit table line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_orbit_table(std::ostream& out, const OrbitTable& table) { out << orbit_table_csv(table); }

std::string orbit_table_csv(const OrbitTable& table) {
  std::string out;
  if (std::isfinite(table.t_max())) out += "# tmax=" + format_length(table.t_max()) + "\n";
  out += header_for(table.k()) + "\n";
  for (const auto& e : table.entries()) {
    out += format_length(e.length);
    for (auto c : e.homology.coords()) out += "," + std::to_string(c);
    out += "," + std::to_string(e.count) + "\n";
  }
  return out;
}

OrbitTable read_orbit_table(std::istream& in, std::optional<double> tmax_override) {
  std::optional<double> tmax_comment;
  std::optional<std::size_t> k;
  std::vector<OrbitEntry> entries;
  std::string raw;
  std::string digest;
  std::size_t line_no = 0;
  std::vector<std::size_t> entry_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    digest += raw;
    digest += '\n';
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto pos = line.find("tmax=");
      if (pos != std::string::npos) {
        char* end = nullptr;
        const std::string value = line.substr(pos + 5);
        const double t = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || !(t > 0.0)) fail(line_no, "bad tmax comment");
        tmax_comment = t;
      }
      continue;
    }
    const auto fields = split(line, ',');
    if (!k) {
      if (fields.size() < 3) fail(line_no, "header must be length,weight_1..weight_k,count");
      const std::size_t dim = fields.size() - 2;
      if (line != header_for(dim)) fail(line_no, "header must be '" + header_for(dim) + "'");
      k = dim;
      continue;
    }
    if (fields.size() != *k + 2) {
      fail(line_no, "expected " + std::to_string(*k + 2) + " fields, found " + std::to_string(fields.size()));
    }
    OrbitEntry entry;
    {
      char* end = nullptr;
      entry.length = std::strtod(fields[0].c_str(), &end);
      if (fields[0].empty() || end != fields[0].c_str() + fields[0].size() || !std::isfinite(entry.length) ||
          entry.length <= 0.0) {
        fail(line_no, "length must be a positive finite number");
      }
    }
    std::vector<std::int64_t> coords;
    for (std::size_t i = 1; i <= *k; ++i) {
      char* end = nullptr;
      const long long v = std::strtoll(fields[i].c_str(), &end, 10);
      if (fields[i].empty() || end != fields[i].c_str() + fields[i].size()) fail(line_no, "weight must be an integer");
      coords.push_back(v);
    }
    entry.homology = HomologyClass(std::move(coords));
    {
      const std::string& c = fields[*k + 1];
      char* end = nullptr;
      const unsigned long long v = std::strtoull(c.c_str(), &end, 10);
      if (c.empty() || c.front() == '-' || end != c.c_str() + c.size() || v == 0) {
        fail(line_no, "count must be a positive integer");
      }
      entry.count = v;
    }
    entries.push_back(std::move(entry));
    entry_lines.push_back(line_no);
  }
  if (!k) throw IngestionError("orbit table: missing header line");

  const double t_max = tmax_override ? *tmax_override
                       : tmax_comment ? *tmax_comment
                                      : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].length > t_max) {
      fail(entry_lines[i], "length " + format_length(entries[i].length) + " exceeds tmax " + format_length(t_max));
    }
  }
  return OrbitTable(*k, t_max, merge_entries(std::move(entries)), fnv1a_hex(digest));
}

OrbitTable ingest_orbit_table(const std::filesystem::path& path, std::optional<double> tmax_override) {
  std::ifstream in(path);
  if (!in) throw IngestionError("orbit table: cannot open '" + path.string() + "'");
  return read_orbit_table(in, tmax_override);
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StructuralError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw StructuralError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace orbitcensus
