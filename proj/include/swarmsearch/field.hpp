#pragma once

// Pheromone lattice and its update laws: the response weighting, the
// altitude-dependent deposition rate, and evaporation.

#include <algorithm>
#include <cmath>
#include <string>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "swarmsearch/landscape.hpp"
#include "swarmsearch/lattice.hpp"

namespace swarmsearch {

struct FieldParams {
  double eta = 0.07;    // constant deposition
  double p = 1.93;      // altitude-dependent deposition gain
  double k = 0.015;     // evaporation rate
  double beta = 3.5;    // osmotropotaxic sensitivity
  double gamma = 0.2;   // inverse sensory capacity

  bool operator==(const FieldParams&) const = default;
};

inline void validate(const FieldParams& fp) {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be >= 0");
  };
  nonneg(fp.eta, "eta");
  nonneg(fp.p, "p");
  nonneg(fp.beta, "beta");
  nonneg(fp.gamma, "gamma");
  if (!(fp.k >= 0.0 && fp.k <= 1.0)) throw std::invalid_argument("k must be in [0, 1]");
}

class PheromoneField {
public:
  explicit PheromoneField(Lattice lattice) : lattice_(lattice), sigma_(lattice.size(), 0.0) {}

  const Lattice& lattice() const { return lattice_; }
  std::size_t size() const { return sigma_.size(); }
  double operator[](CellIndex c) const { return sigma_[c]; }
  const std::vector<double>& values() const { return sigma_; }

  void add(CellIndex c, double amount) {
    if (!(amount >= 0.0)) throw std::invalid_argument("pheromone increments must be non-negative");
    sigma_[c] += amount;
  }

  double total() const { return std::accumulate(sigma_.begin(), sigma_.end(), 0.0); }

  // sigma <- (1 - k) sigma everywhere. k = 1 clears the field exactly.
  void evaporate(double k) {
    if (!(k >= 0.0 && k <= 1.0)) throw std::invalid_argument("evaporation rate must be in [0, 1]");
    const double keep = 1.0 - k;
    for (double& s : sigma_) s *= keep;
  }

private:
  Lattice lattice_;
  std::vector<double> sigma_;
};

// Response to a pheromone concentration: (1 + sigma / (1 + gamma sigma))^beta.
inline double weight(double sigma, const FieldParams& fp) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("weight: sigma must be >= 0");
  return std::pow(1.0 + sigma / (1.0 + fp.gamma * sigma), fp.beta);
}

// Running altitude extremes over every cell the colony has occupied.
class AltitudeRecords {
public:
  bool empty() const { return !max_seen_.has_value(); }
  double max_seen() const { return max_seen_.value(); }
  double min_seen() const { return min_seen_.value(); }

  void update(double z) {
    if (empty()) {
      max_seen_ = z;
      min_seen_ = z;
      return;
    }
    if (z > *max_seen_) max_seen_ = z;
    if (z < *min_seen_) min_seen_ = z;
  }

  void clear() {
    max_seen_.reset();
    min_seen_.reset();
  }

  bool operator==(const AltitudeRecords&) const = default;

private:
  std::optional<double> max_seen_;
  std::optional<double> min_seen_;
};

inline void update_records(AltitudeRecords& records, double z) { records.update(z); }

// Deposition rate eta + p * dist / range, where range spans the recorded
// extremes and dist is measured from the extreme opposite to the goal. A
// zero range contributes nothing beyond eta.
inline double deposit_amount(double z_cell, const AltitudeRecords& records, Objective obj, const FieldParams& fp) {
  if (records.empty()) return fp.eta;
  const double range = std::fabs(records.max_seen() - records.min_seen());
  if (range == 0.0) return fp.eta;
  const double anchor = obj == Objective::Minimize ? records.max_seen() : records.min_seen();
  const double ratio = std::min(1.0, std::fabs(z_cell - anchor) / range);
  return fp.eta + fp.p * ratio;
}

// Deposition policies for the colony step. ConstantDeposit drops the
// altitude term entirely and is the reference for flat-habitat reductions.
struct DynamicDeposit {
  static double amount(double z_cell, const AltitudeRecords& r, Objective obj, const FieldParams& fp) {
    return deposit_amount(z_cell, r, obj, fp);
  }
};

struct ConstantDeposit {
  static double amount(double, const AltitudeRecords&, Objective, const FieldParams& fp) { return fp.eta; }
};

}  // namespace swarmsearch
