#pragma once

// Instantaneous eigensystem tracks of a time-dependent Hamiltonian H(s) on the
// normalized schedule s in [0,1], with smooth-gauge eigenvectors and their
// s-derivatives. These tracks are the raw material for transitionless-driving
// construction.

#include "sta/linalg.hpp"

#include <functional>

namespace sta {

// Fills (energies ascending, eigenvector columns, derivative columns) at s.
using AnalyticEigenFn =
    std::function<void(double s, RVector& energies, CMatrix& states, CMatrix& derivs)>;

struct HamiltonianTrack {
  int dim = 0;
  std::function<CMatrix(double)> generator;  // s -> Hermitian H(s)
  std::string label;
  // Closed-form eigensystem, supplied by the built-in models; empty otherwise.
  AnalyticEigenFn analytic_eigen;
};

enum class Gauge {
  kParallelTransport,  // numeric, consecutive overlaps made real-positive
  kAnalytic,           // closed forms from the model (requires analytic_eigen)
};

struct EigenTrack {
  RVector grid;          // uniform, ascending, grid[0] = 0, grid[N-1] = 1
  RMatrix energies;      // levels x points
  std::vector<CMatrix> states;  // per point, column n = |n(s_j)>
  std::vector<CMatrix> derivs;  // per point, column n = d_s |n(s_j)>

  int points() const { return static_cast<int>(grid.size()); }
  int levels() const { return static_cast<int>(energies.rows()); }
  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().rows()); }
  double spacing() const { return grid[1] - grid[0]; }
  int nearest_index(double s) const;
};

// Samples the eigensystem on a uniform grid of `grid_points` >= 3 nodes.
//
// Numeric path: per-node Hermitian eigendecomposition, levels matched across
// nodes by maximal state overlap, phases aligned so consecutive overlaps are
// real-positive (discrete parallel transport). Rejects near-degeneracies
// (adjacent gap <= 1e-8) and under-resolved grids (consecutive overlap < 0.5).
// Derivatives: central differences inside, one-sided second order at the ends.
EigenTrack build_track(const HamiltonianTrack& track, int grid_points, Gauge gauge);

// Overlap matrix C_km(s) = <k(s)| d_s m(s)> at the grid node nearest to s.
// C is anti-Hermitian up to derivative error; its diagonal is purely imaginary
// and vanishes in the parallel-transport gauge.
CMatrix overlap_table(const EigenTrack& track, double s);

// Mean of the overlap matrix over the grid (the would-be constants of a
// structurally time-independent family).
CMatrix overlap_mean(const EigenTrack& track);

}  // namespace sta
