#include "netadv/network.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace netadv {

namespace {

const NetworkVertex& find_vertex(const NetworkModel& m, int id) {
  for (const auto& v : m.vertices)
    if (v.id == id) return v;
  throw std::invalid_argument("network: unknown vertex id " + std::to_string(id));
}

const NetworkEdge& find_edge(const NetworkModel& m, int id) {
  for (const auto& e : m.edges)
    if (e.id == id) return e;
  throw std::invalid_argument("network: unknown edge id " + std::to_string(id));
}

double alpha_for(const NetworkModel& m, int vertex_id, int edge_id, int outgoing_count) {
  auto row = m.alpha.find(vertex_id);
  if (row == m.alpha.end()) {
    if (outgoing_count == 1) return 1.0;
    throw std::invalid_argument("network: vertex " + std::to_string(vertex_id) +
                                " splits into several edges but has no alpha row");
  }
  auto it = row->second.find(edge_id);
  if (it == row->second.end())
    throw std::invalid_argument("network: alpha row for vertex " + std::to_string(vertex_id) +
                                " misses edge " + std::to_string(edge_id));
  return it->second;
}

}  // namespace

std::vector<int> validate_and_order(const NetworkModel& model) {
  if (model.vertices.empty() || model.edges.empty())
    throw std::invalid_argument("network: needs at least one vertex and one edge");

  std::set<int> vertex_ids, edge_ids;
  for (const auto& v : model.vertices)
    if (!vertex_ids.insert(v.id).second)
      throw std::invalid_argument("network: duplicate vertex id " + std::to_string(v.id));
  for (const auto& e : model.edges)
    if (!edge_ids.insert(e.id).second)
      throw std::invalid_argument("network: duplicate edge id " + std::to_string(e.id));

  std::map<int, std::vector<int>> arriving, departing;  // vertex id -> edge ids
  for (const auto& e : model.edges) {
    if (!vertex_ids.count(e.from) || !vertex_ids.count(e.to))
      throw std::invalid_argument("network: edge " + std::to_string(e.id) +
                                  " references an unknown vertex");
    if (e.from == e.to)
      throw std::invalid_argument("network: edge " + std::to_string(e.id) + " is a loop");
    departing[e.from].push_back(e.id);
    arriving[e.to].push_back(e.id);
  }

  const std::vector<int> kNoEdges;
  auto arriving_at = [&](int vid) -> const std::vector<int>& {
    auto it = arriving.find(vid);
    return it == arriving.end() ? kNoEdges : it->second;
  };
  auto departing_from = [&](int vid) -> const std::vector<int>& {
    auto it = departing.find(vid);
    return it == departing.end() ? kNoEdges : it->second;
  };

  // Cycle detection first, so a cyclic input is reported as such rather than
  // as a violation of the id-ordering conventions.
  {
    std::map<int, int> pending;
    for (const auto& e : model.edges)
      pending[e.id] = static_cast<int>(arriving_at(e.from).size());
    std::set<int> ready;
    for (const auto& [eid, cnt] : pending)
      if (cnt == 0) ready.insert(eid);
    std::size_t placed = 0;
    while (!ready.empty()) {
      const int eid = *ready.begin();
      ready.erase(ready.begin());
      ++placed;
      for (int next : departing_from(find_edge(model, eid).to))
        if (--pending[next] == 0) ready.insert(next);
    }
    if (placed != model.edges.size())
      throw std::invalid_argument("network: the graph contains a directed cycle");
  }

  for (const auto& e : model.edges)
    if (e.from >= e.to)
      throw std::invalid_argument("network: edge " + std::to_string(e.id) +
                                  " must run from a lower to a higher vertex id");

  for (const auto& v : model.vertices) {
    const bool has_in = arriving.count(v.id) > 0;
    const bool has_out = departing.count(v.id) > 0;
    if (!has_in && !has_out)
      throw std::invalid_argument("network: vertex " + std::to_string(v.id) + " is isolated");
    if (has_in && has_out) {
      const auto& in = arriving_at(v.id);
      const auto& out = departing_from(v.id);
      const int max_in = *std::max_element(in.begin(), in.end());
      const int min_out = *std::min_element(out.begin(), out.end());
      if (!(max_in < min_out))
        throw std::invalid_argument("network: at vertex " + std::to_string(v.id) +
                                    " an arriving edge id exceeds a departing edge id");
    }
    switch (v.kind) {
      case VertexKind::Inflow:
        if (has_in)
          throw std::invalid_argument("network: inflow vertex " + std::to_string(v.id) +
                                      " has an arriving edge");
        if (!model.boundaries.count(v.id))
          throw std::invalid_argument("network: inflow vertex " + std::to_string(v.id) +
                                      " has no boundary signal");
        break;
      case VertexKind::Outflow:
        if (has_out)
          throw std::invalid_argument("network: outflow vertex " + std::to_string(v.id) +
                                      " has a departing edge");
        break;
      case VertexKind::Internal:
        if (!has_in || !has_out)
          throw std::invalid_argument("network: internal vertex " + std::to_string(v.id) +
                                      " must have arriving and departing edges");
        break;
    }
    if (has_out) {
      double sum = 0.0;
      const auto& out = departing_from(v.id);
      for (int eid : out) sum += alpha_for(model, v.id, eid, static_cast<int>(out.size()));
      if (std::fabs(sum - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "network: alpha row for vertex " << v.id << " sums to " << sum;
        throw std::invalid_argument(os.str());
      }
    }
  }
  for (const auto& [vid, row] : model.alpha) {
    find_vertex(model, vid);
    for (const auto& [eid, w] : row) {
      const NetworkEdge& e = find_edge(model, eid);
      if (e.from != vid)
        throw std::invalid_argument("network: alpha row for vertex " + std::to_string(vid) +
                                    " names edge " + std::to_string(eid) +
                                    " which does not depart from it");
      if (w < 0.0)
        throw std::invalid_argument("network: negative alpha weight at vertex " +
                                    std::to_string(vid));
    }
  }

  // Kahn's algorithm over edges: an edge is ready once every edge arriving at
  // its from-vertex is placed. Smallest id first keeps the order unique.
  std::map<int, int> pending;  // edge id -> unresolved upstream edge count
  for (const auto& e : model.edges)
    pending[e.id] = static_cast<int>(arriving_at(e.from).size());
  std::set<int> ready;
  for (const auto& [eid, cnt] : pending)
    if (cnt == 0) ready.insert(eid);

  std::vector<int> order;
  order.reserve(model.edges.size());
  while (!ready.empty()) {
    const int eid = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(eid);
    const NetworkEdge& e = find_edge(model, eid);
    for (int next : departing_from(e.to))
      if (--pending[next] == 0) ready.insert(next);
  }
  if (order.size() != model.edges.size())
    throw std::invalid_argument("network: the graph contains a directed cycle");
  return order;
}

std::vector<double> vertex_signal(const NetworkModel& model, int vertex_id,
                                  const NetworkSolution& partial) {
  const int N = model.time.steps;
  std::vector<double> q(N + 1, 0.0);
  const NetworkVertex& v = find_vertex(model, vertex_id);
  if (v.kind == VertexKind::Inflow) {
    const Signal& sig = model.boundaries.at(vertex_id);
    for (int n = 0; n <= N; ++n) q[n] = sig(model.time.time(n));
    return q;
  }
  for (const auto& e : model.edges) {
    if (e.to != vertex_id) continue;
    auto it = partial.edges.find(e.id);
    if (it == partial.edges.end())
      throw std::logic_error("network: vertex signal requested before edge " +
                             std::to_string(e.id) + " was solved");
    const EdgeSolution& s = it->second;
    for (int n = 0; n <= N; ++n) q[n] += s.at(s.cells, n);
  }
  return q;
}

std::vector<double> split_to_downstream(const std::vector<double>& signal, double alpha) {
  std::vector<double> out(signal.size());
  for (std::size_t k = 0; k < signal.size(); ++k) out[k] = alpha * signal[k];
  return out;
}

EdgeProblem make_edge_problem(const NetworkModel& model, const NetworkEdge& edge,
                              std::vector<double> boundary) {
  EdgeProblem p;
  p.space = SpaceGrid::uniform(edge.length, edge.cells);
  p.time = model.time;
  p.capacity = edge.kappa;
  p.retardation = model.retardation;
  p.velocity = edge.velocity.empty() ? std::vector<double>{1.0} : edge.velocity;
  p.boundary = std::move(boundary);
  p.initial.resize(edge.cells + 1, 0.0);
  if (edge.initial)
    for (int i = 0; i <= edge.cells; ++i) p.initial[i] = (*edge.initial)(p.space.x(i));
  p.initial[0] = p.boundary[0];
  return p;
}

NetworkSolution solve_network(const NetworkModel& model, const SchemeConfig& config) {
  NetworkSolution out;
  out.order = validate_and_order(model);

  std::map<int, int> outgoing_count;
  for (const auto& e : model.edges) outgoing_count[e.from] += 1;

  for (int eid : out.order) {
    const NetworkEdge& edge = find_edge(model, eid);
    auto signal_it = out.vertex.find(edge.from);
    if (signal_it == out.vertex.end())
      signal_it = out.vertex.emplace(edge.from, vertex_signal(model, edge.from, out)).first;
    const double a = alpha_for(model, edge.from, eid, outgoing_count[edge.from]);
    EdgeProblem p = make_edge_problem(model, edge, split_to_downstream(signal_it->second, a));
    out.edges.emplace(eid, solve_edge(p, config));
  }
  for (const auto& v : model.vertices)
    if (!out.vertex.count(v.id)) out.vertex.emplace(v.id, vertex_signal(model, v.id, out));
  return out;
}

ConservationAudit network_audit(const NetworkModel& model, const NetworkSolution& solution) {
  ConservationAudit total;
  for (const auto& e : model.edges) {
    const EdgeSolution& s = solution.edges.at(e.id);
    std::vector<double> boundary(model.time.steps + 1, 0.0);
    for (int n = 0; n <= model.time.steps; ++n) boundary[n] = s.at(0, n);
    const EdgeProblem p = make_edge_problem(model, e, std::move(boundary));
    const ConservationAudit a = conservation_audit(s, p);
    total.stored += a.stored;
    total.initial += a.initial;
    total.inflow += a.inflow;
    total.outflow += a.outflow;
    total.residual += a.residual;
    total.throughput += a.throughput;
  }
  return total;
}

}  // namespace netadv
