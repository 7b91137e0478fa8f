#pragma once

/// Discretized correlation models: nonnegative N x N grids whose row and
/// column MEANS equal 1 (note: means, not sums — an entry of 1 everywhere is
/// the independence model). The grid is a piecewise-constant function on
/// [0,1]^2 with cell (i,j) covering [i/N,(i+1)/N) x [j/N,(j+1)/N).
///
/// Two samplers target the "all constrained grids equally likely" ensemble:
/// sinkhorn_iid (fast, exchangeable: i.i.d. positive entries balanced to the
/// constraints, so the law is invariant under row and column permutations)
/// and hit_and_run (a uniform random walk over the constraint polytope, the
/// measure-faithful oracle). The shift family builds circulant grids from a
/// 1-D density.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bayesfuse/errors.hpp"

namespace bayesfuse::correlation {

class CorrelationGrid {
 public:
  /// Takes row-major entries; validates shape and finiteness only. Use
  /// validate() to check the row/column-mean and nonnegativity constraints.
  CorrelationGrid(std::size_t n, std::vector<double> entries);

  std::size_t n() const { return n_; }
  double at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const double> entries() const { return entries_; }

  /// The independence model J == 1.
  static CorrelationGrid ones(std::size_t n);

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

struct ValidationResult {
  bool pass = false;
  /// Largest deviation of any row/column mean from 1, or magnitude of the
  /// most negative entry, whichever is worse.
  double max_violation = 0.0;
};

/// Diagnostic check of the grid constraints at tolerance tol.
ValidationResult validate(const CorrelationGrid& grid, double tol);

/// One-dimensional density on N cells of [0,1]: nonnegative with mean 1.
class ShiftDensity {
 public:
  explicit ShiftDensity(std::vector<double> rho);

  std::size_t n() const { return rho_.size(); }
  const std::vector<double>& rho() const { return rho_; }

  static ShiftDensity uniform(std::size_t n);

 private:
  std::vector<double> rho_;
};

enum class SamplerMethod { sinkhorn_iid, hit_and_run, shift };

std::string_view sampler_name(SamplerMethod m);
SamplerMethod sampler_from_name(std::string_view name);

/// Draws N^2 i.i.d. unit-rate exponential entries, then alternates row-mean
/// and column-mean normalization until the worst mean deviation drops below
/// 1e-10 (at most 10,000 sweeps; NonConvergence afterwards, carrying the
/// residual). The entry law is exchangeable under row and column
/// permutations, which forces every cell's expectation to 1.
CorrelationGrid sample_sinkhorn(std::size_t n, std::uint64_t seed);

/// Hit-and-run random walk over {entries >= 0, row/col means = 1}, started
/// at the all-ones grid. Each step picks a direction in the (N-1)^2
/// dimensional null space of the mean constraints (an i.i.d. matrix projected
/// by double-centering, so the walk is permutation-covariant), finds the
/// feasible segment, and jumps to a uniform point on it. Returns the state
/// after burn_in steps; at N = 2 a single step already lands exactly uniform
/// on the one-dimensional polytope.
CorrelationGrid sample_hit_and_run(std::size_t n, std::size_t burn_in,
                                   std::uint64_t seed);

/// Burn-in used by the harness when none is given explicitly.
inline std::size_t default_burn_in(std::size_t n) { return 8 * n + 64; }

/// Circulant grid entries[i][j] = rho[(i - j) mod N]. Row and column means
/// are exactly the mean of rho.
CorrelationGrid from_shift_density(const ShiftDensity& rho);

/// Exact average of the piecewise-constant grid function over the rectangle
/// [a_lo,a_hi] x [b_lo,b_hi] (area-weighted sum of overlapped cells).
/// Requires 0 <= a_lo < a_hi <= 1 and likewise for b.
double eval_cell_averaged(const CorrelationGrid& grid, double a_lo,
                          double a_hi, double b_lo, double b_hi);

/// Exact integral (not average) of the grid function over the rectangle;
/// degenerate rectangles integrate to 0. Used by the scenario quadrature.
double integrate_cell_rectangle(const CorrelationGrid& grid, double a_lo,
                                double a_hi, double b_lo, double b_hi);

/// Grid file format: {"n": N, "normalization": "mean_one",
/// "entries": [row-major N^2 reals]}. Doubles are emitted with 17 significant
/// digits so save/load round-trips are bit-faithful.
std::string grid_to_json(const CorrelationGrid& grid);
CorrelationGrid grid_from_json(const std::string& text);
void save_grid(const CorrelationGrid& grid, const std::filesystem::path& path);
CorrelationGrid load_grid(const std::filesystem::path& path);

}  // namespace bayesfuse::correlation
