#include "dcgra/mapping.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "dcgra/arch.hpp"

namespace dcgra {

void validate_mapping(const Graph& g, const Mapping& m, const ArchConfig& cfg) {
  const VertexId n = g.num_vertices();
  if (static_cast<VertexId>(m.assignment.size()) != n)
    throw ValidationError("mapping: assignment size != vertex count");
  const std::int64_t chip = static_cast<std::int64_t>(cfg.num_pes()) * cfg.drf_capacity;
  const int expected_slices = n == 0 ? 1 : static_cast<int>((n + chip - 1) / chip);
  if (m.num_slices != std::max(1, expected_slices))
    throw ValidationError("mapping: num_slices != ceil(|V| / (PEs * drf_capacity))");
  std::set<std::tuple<int, int, int>> used;  // (pe, slice, slot)
  std::vector<int> count(static_cast<std::size_t>(cfg.num_pes()) * m.num_slices, 0);
  for (VertexId v = 0; v < n; ++v) {
    const auto& p = m.assignment[v];
    if (!p.mapped()) throw ValidationError("mapping: vertex " + std::to_string(v) + " unmapped");
    if (p.x < 0 || p.x >= cfg.array_width || p.y < 0 || p.y >= cfg.array_height)
      throw ValidationError("mapping: PE out of bounds for vertex " + std::to_string(v));
    if (p.slice < 0 || p.slice >= m.num_slices)
      throw ValidationError("mapping: slice out of range for vertex " + std::to_string(v));
    if (p.slot < 0 || p.slot >= cfg.drf_capacity)
      throw ValidationError("mapping: slot out of range for vertex " + std::to_string(v));
    int pe = row_major({p.x, p.y}, cfg);
    if (!used.insert({pe, p.slice, p.slot}).second)
      throw ValidationError("mapping: slot collision at vertex " + std::to_string(v));
    if (++count[static_cast<std::size_t>(pe) * m.num_slices + p.slice] > cfg.drf_capacity)
      throw ValidationError("mapping: PE/slice over capacity at vertex " + std::to_string(v));
  }
}

void save_mapping(const Mapping& m, const MappingSummary& s, std::ostream& out) {
  for (VertexId v = 0; v < static_cast<VertexId>(m.assignment.size()); ++v) {
    const auto& p = m.assignment[v];
    out << "v " << v << " pe " << p.x << " " << p.y << " slot " << p.slot << " slice " << p.slice
        << "\n";
  }
  out << "summary\n";
  out << "f_m " << s.routing_length << "\n";
  out << "collisions " << s.collisions << "\n";
  out << "num_slices " << s.num_slices << "\n";
}

void save_mapping(const Mapping& m, const MappingSummary& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  save_mapping(m, s, out);
}

Mapping load_mapping(std::istream& in, const std::string& name) {
  Mapping m;
  std::string line;
  int lineno = 0;
  bool in_summary = false;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string tok;
    ss >> tok;
    if (tok == "summary") {
      in_summary = true;
      continue;
    }
    if (in_summary) {
      std::string key = tok;
      long long value = 0;
      if (!(ss >> value))
        throw ParseError(name + ":" + std::to_string(lineno) + ": bad summary line");
      if (key == "num_slices") m.num_slices = static_cast<int>(value);
      continue;
    }
    if (tok != "v") throw ParseError(name + ":" + std::to_string(lineno) + ": expected 'v'");
    long long id = 0, x = 0, y = 0, slot = 0, slice = 0;
    std::string kw_pe, kw_slot, kw_slice;
    if (!(ss >> id >> kw_pe >> x >> y >> kw_slot >> slot >> kw_slice >> slice) || kw_pe != "pe" ||
        kw_slot != "slot" || kw_slice != "slice")
      throw ParseError(name + ":" + std::to_string(lineno) + ": malformed vertex line");
    if (id < 0) throw ParseError(name + ":" + std::to_string(lineno) + ": negative id");
    if (static_cast<std::size_t>(id) >= m.assignment.size()) m.assignment.resize(id + 1);
    m.assignment[id] = {static_cast<std::int16_t>(x), static_cast<std::int16_t>(y),
                        static_cast<std::int16_t>(slot), static_cast<std::int16_t>(slice)};
  }
  return m;
}

Mapping load_mapping(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_mapping(in, path);
}

}  // namespace dcgra
