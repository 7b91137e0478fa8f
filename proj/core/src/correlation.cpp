#include "bayesfuse/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bayesfuse/rng.hpp"

namespace bayesfuse::correlation {

namespace {

constexpr double kSinkhornTol = 1e-10;
constexpr std::size_t kSinkhornMaxSweeps = 10000;

}  // namespace

CorrelationGrid::CorrelationGrid(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n_ == 0 || entries_.size() != n_ * n_) {
    throw InvalidArgument("CorrelationGrid: expected n*n entries");
  }
  for (double e : entries_) {
    if (!std::isfinite(e)) {
      throw InvalidArgument("CorrelationGrid: non-finite entry");
    }
  }
}

CorrelationGrid CorrelationGrid::ones(std::size_t n) {
  return CorrelationGrid(n, std::vector<double>(n * n, 1.0));
}

ValidationResult validate(const CorrelationGrid& grid, double tol) {
  const std::size_t n = grid.n();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += grid.at(i, j);
      col += grid.at(j, i);
      if (grid.at(i, j) < 0.0) worst = std::max(worst, -grid.at(i, j));
    }
    worst = std::max(worst, std::abs(row / static_cast<double>(n) - 1.0));
    worst = std::max(worst, std::abs(col / static_cast<double>(n) - 1.0));
  }
  return ValidationResult{worst <= tol, worst};
}

ShiftDensity::ShiftDensity(std::vector<double> rho) : rho_(std::move(rho)) {
  if (rho_.empty()) throw InvalidArgument("ShiftDensity: empty density");
  double sum = 0.0;
  for (double v : rho_) {
    if (!(v >= 0.0)) throw InvalidArgument("ShiftDensity: negative value");
    sum += v;
  }
  if (std::abs(sum / static_cast<double>(rho_.size()) - 1.0) > 1e-12) {
    throw InvalidArgument("ShiftDensity: mean must be 1 within 1e-12");
  }
}

ShiftDensity ShiftDensity::uniform(std::size_t n) {
  return ShiftDensity(std::vector<double>(n, 1.0));
}

std::string_view sampler_name(SamplerMethod m) {
  switch (m) {
    case SamplerMethod::sinkhorn_iid: return "sinkhorn_iid";
    case SamplerMethod::hit_and_run: return "hit_and_run";
    case SamplerMethod::shift: return "shift";
  }
  throw InvalidArgument("invalid sampler method");
}

SamplerMethod sampler_from_name(std::string_view name) {
  if (name == "sinkhorn_iid" || name == "sinkhorn")
    return SamplerMethod::sinkhorn_iid;
  if (name == "hit_and_run" || name == "hitrun")
    return SamplerMethod::hit_and_run;
  if (name == "shift") return SamplerMethod::shift;
  throw InvalidArgument("unknown sampler method: " + std::string(name));
}

CorrelationGrid sample_sinkhorn(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("sample_sinkhorn requires n >= 2");
  Rng rng(seed);
  std::vector<double> x(n * n);
  for (double& v : x) v = rng.exponential();

  const double nn = static_cast<double>(n);
  double residual = 0.0;
  for (std::size_t sweep = 0; sweep < kSinkhornMaxSweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      double mean = 0.0;
      for (std::size_t j = 0; j < n; ++j) mean += x[i * n + j];
      mean /= nn;
      for (std::size_t j = 0; j < n; ++j) x[i * n + j] /= mean;
    }
    for (std::size_t j = 0; j < n; ++j) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += x[i * n + j];
      mean /= nn;
      for (std::size_t i = 0; i < n; ++i) x[i * n + j] /= mean;
    }
    // Column means are now exact; convergence is measured on the rows.
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double mean = 0.0;
      for (std::size_t j = 0; j < n; ++j) mean += x[i * n + j];
      residual = std::max(residual, std::abs(mean / nn - 1.0));
    }
    if (residual < kSinkhornTol) {
      return CorrelationGrid(n, std::move(x));
    }
  }
  throw NonConvergence("sinkhorn balancing did not converge, residual " +
                           std::to_string(residual),
                       residual);
}

CorrelationGrid sample_hit_and_run(std::size_t n, std::size_t burn_in,
                                   std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("sample_hit_and_run requires n >= 2");
  if (burn_in < 1) throw InvalidArgument("burn_in must be >= 1");
  Rng rng(seed);
  std::vector<double> x(n * n, 1.0);
  std::vector<double> d(n * n);
  std::vector<double> row(n), col(n);
  const double nn = static_cast<double>(n);

  for (std::size_t step = 0; step < burn_in; ++step) {
    // Direction: i.i.d. symmetric entries double-centered onto the null
    // space of the row/column-mean constraints, then normalized.
    for (double& v : d) v = rng.uniform(-1.0, 1.0);
    std::fill(row.begin(), row.end(), 0.0);
    std::fill(col.begin(), col.end(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        row[i] += d[i * n + j];
        col[j] += d[i * n + j];
        total += d[i * n + j];
      }
    }
    total /= nn * nn;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double v = d[i * n + j] - row[i] / nn - col[j] / nn + total;
        d[i * n + j] = v;
        norm2 += v * v;
      }
    }
    if (norm2 < 1e-30) continue;
    const double inv_norm = 1.0 / std::sqrt(norm2);
    for (double& v : d) v *= inv_norm;

    // Feasible segment: x + t*d >= 0 elementwise (the mean constraints are
    // preserved along d automatically).
    double t_lo = -std::numeric_limits<double>::infinity();
    double t_hi = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n * n; ++c) {
      if (d[c] > 0.0) {
        t_lo = std::max(t_lo, -x[c] / d[c]);
      } else if (d[c] < 0.0) {
        t_hi = std::min(t_hi, -x[c] / d[c]);
      }
    }
    const double t = rng.uniform(t_lo, t_hi);
    for (std::size_t c = 0; c < n * n; ++c) {
      x[c] = std::max(x[c] + t * d[c], 0.0);
    }
  }
  return CorrelationGrid(n, std::move(x));
}

CorrelationGrid from_shift_density(const ShiftDensity& rho) {
  const std::size_t n = rho.n();
  std::vector<double> x(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      x[i * n + j] = rho.rho()[(i + n - j % n) % n];
    }
  }
  return CorrelationGrid(n, std::move(x));
}

double integrate_cell_rectangle(const CorrelationGrid& grid, double a_lo,
                                double a_hi, double b_lo, double b_hi) {
  if (!(a_lo >= 0.0 && a_lo <= a_hi && a_hi <= 1.0) ||
      !(b_lo >= 0.0 && b_lo <= b_hi && b_hi <= 1.0)) {
    throw InvalidRectangle("rectangle must satisfy 0 <= lo <= hi <= 1");
  }
  if (a_lo == a_hi || b_lo == b_hi) return 0.0;

  const std::size_t n = grid.n();
  const double nn = static_cast<double>(n);
  const auto first_cell = [&](double lo) {
    auto i = static_cast<std::size_t>(
        std::min(std::max(std::floor(lo * nn), 0.0), nn - 1.0));
    return i;
  };

  double sum = 0.0;
  for (std::size_t i = first_cell(a_lo); i < n; ++i) {
    const double ca_lo = static_cast<double>(i) / nn;
    const double ca_hi = static_cast<double>(i + 1) / nn;
    if (ca_lo >= a_hi) break;
    const double wa = std::min(a_hi, ca_hi) - std::max(a_lo, ca_lo);
    if (wa <= 0.0) continue;
    for (std::size_t j = first_cell(b_lo); j < n; ++j) {
      const double cb_lo = static_cast<double>(j) / nn;
      const double cb_hi = static_cast<double>(j + 1) / nn;
      if (cb_lo >= b_hi) break;
      const double wb = std::min(b_hi, cb_hi) - std::max(b_lo, cb_lo);
      if (wb <= 0.0) continue;
      sum += wa * wb * grid.at(i, j);
    }
  }
  return sum;
}

double eval_cell_averaged(const CorrelationGrid& grid, double a_lo,
                          double a_hi, double b_lo, double b_hi) {
  if (!(a_lo < a_hi) || !(b_lo < b_hi)) {
    throw InvalidRectangle("rectangle must have positive extent");
  }
  const double integral =
      integrate_cell_rectangle(grid, a_lo, a_hi, b_lo, b_hi);
  return integral / ((a_hi - a_lo) * (b_hi - b_lo));
}

std::string grid_to_json(const CorrelationGrid& grid) {
  std::string out;
  out.reserve(grid.n() * grid.n() * 26 + 64);
  out += "{\"n\": ";
  out += std::to_string(grid.n());
  out += ", \"normalization\": \"mean_one\", \"entries\": [";
  char buf[40];
  const auto entries = grid.entries();
  for (std::size_t c = 0; c < entries.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%.17g", entries[c]);
    if (c != 0) out += ", ";
    out += buf;
  }
  out += "]}";
  return out;
}

CorrelationGrid grid_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("grid JSON parse error: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("entries")) {
    throw InvalidArgument("grid JSON must contain \"n\" and \"entries\"");
  }
  if (j.value("normalization", "mean_one") != std::string("mean_one")) {
    throw InvalidArgument("grid JSON: unsupported normalization");
  }
  const auto n = j.at("n").get<std::size_t>();
  auto entries = j.at("entries").get<std::vector<double>>();
  return CorrelationGrid(n, std::move(entries));
}

void save_grid(const CorrelationGrid& grid,
               const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << grid_to_json(grid) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

CorrelationGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return grid_from_json(ss.str());
}

}  // namespace bayesfuse::correlation
