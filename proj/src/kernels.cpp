#include "dcgra/kernels.hpp"

#include <numeric>

namespace dcgra {

const char* kernel_name(Kernel k) {
  switch (k) {
    case Kernel::BFS: return "bfs";
    case Kernel::SSSP: return "sssp";
    case Kernel::WCC: return "wcc";
  }
  return "?";
}

Kernel parse_kernel(const std::string& name) {
  if (name == "bfs") return Kernel::BFS;
  if (name == "sssp") return Kernel::SSSP;
  if (name == "wcc") return Kernel::WCC;
  throw ParseError("unknown kernel: " + name);
}

KernelSpec KernelSpec::make(Kernel k) {
  switch (k) {
    case Kernel::WCC: return {k, 4, 2};
    case Kernel::BFS: return {k, 5, 4};
    case Kernel::SSSP: return {k, 5, 4};
  }
  return {};
}

namespace {

std::int32_t saturating_add(std::int32_t a, std::int32_t b) {
  std::int64_t s = static_cast<std::int64_t>(a) + b;
  return s >= kInfAttr ? kInfAttr : static_cast<std::int32_t>(s);
}

}  // namespace

ApplyResult apply(const KernelSpec& k, std::int32_t current, std::int32_t msg_attr,
                  std::int32_t weight) {
  std::int32_t candidate = 0;
  switch (k.kind) {
    case Kernel::BFS: candidate = saturating_add(msg_attr, 1); break;
    case Kernel::SSSP: candidate = saturating_add(msg_attr, weight); break;
    case Kernel::WCC: candidate = msg_attr; break;
  }
  if (candidate < current) return {candidate, true, k.cycles_update};
  return {current, false, k.cycles_no_update};
}

InitState source_init(const KernelSpec& k, const Graph& g, std::optional<VertexId> source) {
  InitState st;
  const VertexId n = g.num_vertices();
  if (k.kind == Kernel::WCC) {
    st.attributes.resize(n);
    std::iota(st.attributes.begin(), st.attributes.end(), 0);
    st.frontier.resize(n);
    std::iota(st.frontier.begin(), st.frontier.end(), 0);
    return st;
  }
  if (!source.has_value())
    throw ValidationError(std::string(kernel_name(k.kind)) + " requires a source vertex");
  if (*source < 0 || *source >= n)
    throw ValidationError("source vertex " + std::to_string(*source) + " out of range");
  st.attributes.assign(n, kInfAttr);
  st.attributes[*source] = 0;
  st.frontier = {*source};
  return st;
}

}  // namespace dcgra
