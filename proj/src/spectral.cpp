#include "sta/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace sta {

namespace {

constexpr double kGapTol = 1e-8;      // minimal adjacent eigenvalue gap
constexpr double kOverlapFloor = 0.5; // minimal consecutive-node state overlap

void check_gaps(const RVector& vals, double s) {
  for (Eigen::Index n = 0; n + 1 < vals.size(); ++n) {
    if (std::abs(vals[n + 1] - vals[n]) <= kGapTol)
      throw std::runtime_error("build_track: near-degenerate levels at s = " +
                               std::to_string(s) + " (gap <= 1e-8); track construction "
                               "needs a non-degenerate spectrum");
  }
}

// Reorders (vals, vecs) so that column n continues the level stored in
// prev.col(n), choosing the maximal-overlap assignment greedily.
void match_levels(const CMatrix& prev, RVector& vals, CMatrix& vecs, double s) {
  const Eigen::Index nlev = vecs.cols();
  const RMatrix overlap = (prev.adjoint() * vecs).cwiseAbs();
  std::vector<Eigen::Index> pick(nlev, -1);
  std::vector<bool> used(nlev, false);
  for (Eigen::Index n = 0; n < nlev; ++n) {
    double best = -1.0;
    for (Eigen::Index l = 0; l < nlev; ++l) {
      if (!used[l] && overlap(n, l) > best) {
        best = overlap(n, l);
        pick[n] = l;
      }
    }
    used[pick[n]] = true;
    if (best < kOverlapFloor)
      throw std::runtime_error("build_track: consecutive-state overlap " +
                               std::to_string(best) + " < 0.5 near s = " +
                               std::to_string(s) + "; the grid under-resolves the track");
  }
  RVector v2(nlev);
  CMatrix m2(vecs.rows(), nlev);
  for (Eigen::Index n = 0; n < nlev; ++n) {
    v2[n] = vals[pick[n]];
    m2.col(n) = vecs.col(pick[n]);
  }
  vals.swap(v2);
  vecs.swap(m2);
}

// Multiplies each column by a unit phase so <prev_n|cur_n> is real-positive.
void align_phases(const CMatrix& prev, CMatrix& cur) {
  for (Eigen::Index n = 0; n < cur.cols(); ++n) {
    const Complex p = prev.col(n).dot(cur.col(n));
    const double ap = std::abs(p);
    if (ap > 0.0) cur.col(n) *= std::conj(p) / ap;
  }
}

}  // namespace

int EigenTrack::nearest_index(double s) const {
  const double h = spacing();
  const long j = std::lround((s - grid[0]) / h);
  return static_cast<int>(std::clamp<long>(j, 0, points() - 1));
}

EigenTrack build_track(const HamiltonianTrack& track, int grid_points, Gauge gauge) {
  if (grid_points < 3)
    throw std::invalid_argument("build_track: need at least 3 grid points");
  if (track.dim < 2)
    throw std::invalid_argument("build_track: track dimension must be >= 2");

  EigenTrack out;
  const int np = grid_points;
  out.grid = RVector::LinSpaced(np, 0.0, 1.0);
  out.energies.resize(track.dim, np);
  out.states.resize(np);
  out.derivs.resize(np);

  if (gauge == Gauge::kAnalytic) {
    if (!track.analytic_eigen)
      throw std::invalid_argument("build_track: analytic gauge requested but the track "
                                  "carries no closed-form eigensystem");
    RVector vals(track.dim);
    CMatrix vecs(track.dim, track.dim), dvecs(track.dim, track.dim);
    for (int j = 0; j < np; ++j) {
      track.analytic_eigen(out.grid[j], vals, vecs, dvecs);
      out.energies.col(j) = vals;
      out.states[j] = vecs;
      out.derivs[j] = dvecs;
    }
    return out;
  }

  if (!track.generator)
    throw std::invalid_argument("build_track: track has no generator");

  for (int j = 0; j < np; ++j) {
    const double s = out.grid[j];
    EigenSystem es = herm_eigen(track.generator(s));
    check_gaps(es.values, s);
    if (j > 0) {
      match_levels(out.states[j - 1], es.values, es.vectors, s);
      align_phases(out.states[j - 1], es.vectors);
    }
    out.energies.col(j) = es.values;
    out.states[j] = es.vectors;
  }

  // d_s|n>: central differences inside, one-sided second order at the ends.
  const double h = out.spacing();
  for (int j = 0; j < np; ++j) {
    if (j == 0) {
      out.derivs[j] = (-3.0 * out.states[0] + 4.0 * out.states[1] - out.states[2]) / (2.0 * h);
    } else if (j == np - 1) {
      out.derivs[j] =
          (3.0 * out.states[j] - 4.0 * out.states[j - 1] + out.states[j - 2]) / (2.0 * h);
    } else {
      out.derivs[j] = (out.states[j + 1] - out.states[j - 1]) / (2.0 * h);
    }
  }
  return out;
}

CMatrix overlap_table(const EigenTrack& track, double s) {
  if (track.points() == 0) throw std::invalid_argument("overlap_table: empty track");
  if (s < track.grid[0] - 1e-12 || s > track.grid[track.points() - 1] + 1e-12)
    throw std::invalid_argument("overlap_table: s outside the track grid");
  const int j = track.nearest_index(s);
  return track.states[j].adjoint() * track.derivs[j];
}

CMatrix overlap_mean(const EigenTrack& track) {
  CMatrix acc = CMatrix::Zero(track.levels(), track.levels());
  for (int j = 0; j < track.points(); ++j) acc += track.states[j].adjoint() * track.derivs[j];
  return acc / static_cast<double>(track.points());
}

}  // namespace sta
