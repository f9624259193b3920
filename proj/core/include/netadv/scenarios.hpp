#pragma once

#include <functional>
#include <string>
#include <vector>

#include "netadv/edge.hpp"
#include "netadv/network.hpp"

namespace netadv {

/** Single-edge benchmark case with an optional pointwise reference solution. */
struct EdgeScenario {
  std::string name;
  EdgeProblem problem;
  std::function<double(double x, double t)> exact;  ///< may be empty
};

/**
 * One of the four benchmark pulse shapes, evaluated in the coordinate u =
 * x - (right edge); every shape has support (-0.4, 0) and range [0, 1].
 * 1: square pulse, 2: triangle, 3: half-cosine hump, 4: smooth compact bump.
 */
double shape_profile(int k, double u);

/** All four shapes combined, right edges at 0.6, 0.2, -0.2 and -0.6. */
double four_shape_initial(double x);

/**
 * Travelling Gaussian exp(-40(x+1)^2) advected with unit speed across
 * (0,2) until T = 2; Courant number I/N.
 */
EdgeScenario scenario_smooth_gaussian(int I, int N);

/**
 * Shape k entering the domain (a_k, 3) through the inflow boundary and
 * travelling the distance 2; reference resolution I = (3-a_k)/0.0025,
 * N = 160 gives Courant number 5.
 */
EdgeScenario scenario_four_shapes(int k, int I, int N);

/**
 * Quadratic retardation (9/10) q + (1/10) q^2 with the combined four-shape
 * profile entering the domain; the attached reference is the exact solution
 * of the corresponding linear problem, for comparison plots only.
 */
EdgeScenario scenario_nonlinear_isotherm(int I, int N);

enum class TriangleLevel {
  Coarse,  ///< h = 1/2 everywhere, tau = 5/16
  Fine,    ///< h = 1/8 (unit-speed edges) and 1/4 (edges 2, 5), tau = 5/16
  Finer    ///< half of Fine: h = 1/16 and 1/8, tau = 5/32
};

/** Six-edge triangular network with two splits and one merge, T = 70. */
NetworkModel scenario_triangle(TriangleLevel level);

/**
 * Synthetic sewer-style network: 5 inflow vertices, 12 internal vertices
 * (two 2-way merges and one 3-way merge), one outflow, 17 edges. Velocities
 * are chosen so that at N = 384 the per-edge Courant numbers reproduce a
 * fixed reference table.
 */
NetworkModel scenario_sewer();

/** Per-edge Courant numbers of the sewer model at its reference N = 384. */
std::vector<double> sewer_reference_courants();

/** Edge ids forming the path from the first inflow vertex to the outflow. */
std::vector<int> sewer_path_bc1();
/** Edge ids forming the path from the third inflow vertex to the outflow. */
std::vector<int> sewer_path_bc3();

/** Names accepted by scenario lookups in the command line tool. */
std::vector<std::string> scenario_names();

}  // namespace netadv
