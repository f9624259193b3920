#include "netadv/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace netadv {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> sample_boundary(const TimeGrid& time,
                                    const std::function<double(double)>& f) {
  std::vector<double> q(time.steps + 1);
  for (int n = 0; n <= time.steps; ++n) q[n] = f(time.time(n));
  return q;
}

std::vector<double> sample_initial(const SpaceGrid& space,
                                   const std::function<double(double)>& f) {
  std::vector<double> q(space.cells() + 1);
  for (int i = 0; i <= space.cells(); ++i) q[i] = f(space.x(i));
  return q;
}

constexpr double kShapeEdges[4] = {0.6, 0.2, -0.2, -0.6};

}  // namespace

double shape_profile(int k, double u) {
  if (k < 1 || k > 4) throw std::invalid_argument("shape_profile: k must be in 1..4");
  if (u <= -0.4 || u >= 0.0) return 0.0;
  const double z = (u + 0.2) / 0.2;  // -1 .. 1 across the support
  switch (k) {
    case 1:
      return 1.0;
    case 2:
      return 1.0 - std::fabs(z);
    case 3:
      return std::cos(0.5 * kPi * z);
    default:
      return std::exp(1.0 - 1.0 / (1.0 - z * z));
  }
}

double four_shape_initial(double x) {
  double q = 0.0;
  for (int k = 1; k <= 4; ++k) q += shape_profile(k, x - kShapeEdges[k - 1]);
  return q;
}

EdgeScenario scenario_smooth_gaussian(int I, int N) {
  auto q0 = [](double x) { return std::exp(-40.0 * (x + 1.0) * (x + 1.0)); };
  EdgeScenario sc;
  sc.name = "smooth";
  sc.problem.space = SpaceGrid::uniform(2.0, I);
  sc.problem.time = TimeGrid(2.0, N);
  sc.problem.capacity = 1.0;
  sc.problem.velocity = {1.0};
  sc.problem.boundary = sample_boundary(sc.problem.time, [&](double t) { return q0(-t); });
  sc.problem.initial = sample_initial(sc.problem.space, q0);
  sc.exact = [q0](double x, double t) { return q0(x - t); };
  return sc;
}

EdgeScenario scenario_four_shapes(int k, int I, int N) {
  if (k < 1 || k > 4) throw std::invalid_argument("scenario_four_shapes: k must be in 1..4");
  const double a = kShapeEdges[k - 1];
  EdgeScenario sc;
  sc.name = "shape" + std::to_string(k);
  sc.problem.space = SpaceGrid::uniform(3.0 - a, I);
  sc.problem.time = TimeGrid(2.0, N);
  sc.problem.capacity = 1.0;
  sc.problem.velocity = {1.0};
  sc.problem.boundary =
      sample_boundary(sc.problem.time, [&](double t) { return shape_profile(k, -t); });
  sc.problem.initial.assign(I + 1, 0.0);
  sc.exact = [k](double x, double t) { return shape_profile(k, x - t); };
  return sc;
}

EdgeScenario scenario_nonlinear_isotherm(int I, int N) {
  EdgeScenario sc;
  sc.name = "nonlinear";
  sc.problem.space = SpaceGrid::uniform(4.0, I);
  sc.problem.time = TimeGrid(2.0, N);
  sc.problem.retardation = RetardationModel::quadratic(0.9, 0.1);
  sc.problem.velocity = {1.0};
  sc.problem.boundary =
      sample_boundary(sc.problem.time, [](double t) { return four_shape_initial(0.6 - t); });
  sc.problem.initial.assign(I + 1, 0.0);
  // Reference curve: the exact solution of the linear problem, used only to
  // show the retardation-induced shock/rarefaction deformation in plots.
  sc.exact = [](double x, double t) { return four_shape_initial(0.6 + x - t); };
  return sc;
}

NetworkModel scenario_triangle(TriangleLevel level) {
  NetworkModel m;
  m.time = TimeGrid(70.0, level == TriangleLevel::Finer ? 448 : 224);

  m.vertices = {{1, VertexKind::Inflow},   {2, VertexKind::Internal},
                {3, VertexKind::Internal}, {4, VertexKind::Internal},
                {5, VertexKind::Outflow},  {6, VertexKind::Outflow}};

  const double lengths[6] = {5.0, 20.0, 20.0, 30.0, 20.0, 30.0};
  const double speeds[6] = {1.0, 2.0, 1.0, 1.0, 40.0 / 23.0, 1.0};
  const int from[6] = {1, 2, 2, 3, 3, 4};
  const int to[6] = {2, 3, 4, 5, 4, 6};

  for (int e = 0; e < 6; ++e) {
    double h = 0.5;
    if (level != TriangleLevel::Coarse) {
      // Edges 2 and 5 are the faster ones; a coarser h keeps their Courant
      // numbers at 2.5 and 2.174 next to the unit-speed edges at 2.5.
      const bool fast = (e == 1 || e == 4);
      h = fast ? 0.25 : 0.125;
      if (level == TriangleLevel::Finer) h *= 0.5;
    }
    NetworkEdge edge;
    edge.id = e + 1;
    edge.from = from[e];
    edge.to = to[e];
    edge.length = lengths[e];
    edge.kappa = 1.0;
    edge.cells = static_cast<int>(std::lround(lengths[e] / h));
    edge.velocity = {speeds[e]};
    m.edges.push_back(edge);
  }
  m.edges[0].initial = Signal::gaussian(2.5, 0.5);  // exp(-4 (x - 2.5)^2)

  m.alpha[2] = {{2, 0.75}, {3, 0.25}};
  m.alpha[3] = {{4, 2.0 / 3.0}, {5, 1.0 / 3.0}};
  m.boundaries.emplace(1, Signal::sine(1.0, 2.0 * kPi / 3.0));
  return m;
}

namespace {

const double kSewerCourant[17] = {2.61, 1.16, 1.21, 3.70, 3.58, 2.37, 1.69, 2.56, 8.015,
                                  0.88, 2.12, 5.37, 5.18, 6.01, 2.42, 3.52, 2.15};
const int kSewerCells[17] = {128, 128, 128, 128, 128, 128, 128, 128, 128,
                             256, 128, 128, 128, 128, 128, 256, 256};
const int kSewerFrom[17] = {1, 6, 7, 2, 8, 9, 10, 3, 15, 4, 11, 5, 12, 13, 14, 16, 17};
const int kSewerTo[17] = {6, 7, 9, 8, 9, 10, 16, 15, 16, 11, 13, 12, 13, 14, 16, 17, 18};

}  // namespace

NetworkModel scenario_sewer() {
  NetworkModel m;
  m.time = TimeGrid(2.0, 384);

  for (int v = 1; v <= 18; ++v) {
    VertexKind kind = VertexKind::Internal;
    if (v <= 5) kind = VertexKind::Inflow;
    if (v == 18) kind = VertexKind::Outflow;
    m.vertices.push_back({v, kind});
  }

  const double tau = m.time.dt();  // 1/192
  for (int e = 0; e < 17; ++e) {
    NetworkEdge edge;
    edge.id = e;
    edge.from = kSewerFrom[e];
    edge.to = kSewerTo[e];
    edge.cells = kSewerCells[e];
    edge.length = kSewerCells[e] / 256.0;  // uniform h = 1/256 on every edge
    edge.kappa = 1.0;
    const double h = edge.length / edge.cells;
    edge.velocity = {kSewerCourant[e] * h / tau};
    m.edges.push_back(edge);
  }

  for (int v = 1; v <= 5; ++v)
    m.boundaries.emplace(v, Signal::impulse(static_cast<double>(v), -(1.0 + 0.1 * v)));
  return m;
}

std::vector<double> sewer_reference_courants() {
  return std::vector<double>(kSewerCourant, kSewerCourant + 17);
}

std::vector<int> sewer_path_bc1() { return {0, 1, 2, 5, 6, 15, 16}; }
std::vector<int> sewer_path_bc3() { return {7, 8, 15, 16}; }

std::vector<std::string> scenario_names() {
  return {"smooth",          "shape1",        "shape2",         "shape3", "shape4",
          "nonlinear",       "triangle-coarse", "triangle-fine", "triangle-finer",
          "sewer"};
}

}  // namespace netadv
