#pragma once

// Analytic test functions, their discretization onto toroidal lattices, and
// the phase schedules that drive dynamic-environment runs.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swarmsearch/lattice.hpp"

namespace swarmsearch {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Vec2&) const = default;
};

// Raised when a function is evaluated outside its domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// Raised when an evaluation produces a non-finite value.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class FunctionId { F0a, F0b, F1, F2, F3, F4, F5, F6, GaussMix };

enum class Objective { Maximize, Minimize };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double v) const { return v >= lo && v <= hi; }
  bool operator==(const Interval&) const = default;
};

struct Domain {
  Interval x;
  Interval y;
  bool contains(Vec2 p) const { return x.contains(p.x) && y.contains(p.y); }
  Vec2 clamp(Vec2 p) const { return {std::clamp(p.x, x.lo, x.hi), std::clamp(p.y, y.lo, y.hi)}; }
  bool operator==(const Domain&) const = default;
};

// One Gaussian bump: weight * exp(-|p - center|^2 / (2 spread^2)).
struct GaussTerm {
  Vec2 center;
  double weight = 0.0;
  double spread = 1.0;
  bool operator==(const GaussTerm&) const = default;
};

struct TestFunction {
  FunctionId id = FunctionId::F1;
  Domain domain;
  // GaussMix only. The value is max(floor, offset + sum of terms).
  std::vector<GaussTerm> terms;
  double offset = 0.0;
  std::optional<double> floor;

  bool operator==(const TestFunction&) const = default;
};

inline std::string_view to_string(FunctionId id) {
  switch (id) {
    case FunctionId::F0a: return "F0a";
    case FunctionId::F0b: return "F0b";
    case FunctionId::F1: return "F1";
    case FunctionId::F2: return "F2";
    case FunctionId::F3: return "F3";
    case FunctionId::F4: return "F4";
    case FunctionId::F5: return "F5";
    case FunctionId::F6: return "F6";
    case FunctionId::GaussMix: return "GaussMix";
  }
  return "?";
}

inline std::optional<FunctionId> parse_function_id(std::string_view s) {
  for (FunctionId id : {FunctionId::F0a, FunctionId::F0b, FunctionId::F1, FunctionId::F2, FunctionId::F3,
                        FunctionId::F4, FunctionId::F5, FunctionId::F6, FunctionId::GaussMix}) {
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

inline std::string_view to_string(Objective o) { return o == Objective::Maximize ? "max" : "min"; }

inline std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "max" || s == "maximize") return Objective::Maximize;
  if (s == "min" || s == "minimize") return Objective::Minimize;
  return std::nullopt;
}

inline Domain square_domain(double lo, double hi) { return {{lo, hi}, {lo, hi}}; }

inline Domain default_domain(FunctionId id) {
  switch (id) {
    case FunctionId::F0a:
    case FunctionId::F0b:
    case FunctionId::F1:
    case FunctionId::F2:
    case FunctionId::F5: return square_domain(-5.12, 5.12);
    case FunctionId::F3: return square_domain(-65.536, 65.536);
    case FunctionId::F4: return square_domain(-2.048, 2.048);
    case FunctionId::F6: return square_domain(-500.0, 500.0);
    case FunctionId::GaussMix: return square_domain(0.0, 30.0);
  }
  return square_domain(0.0, 1.0);
}

inline void validate(const TestFunction& f) {
  if (!(f.domain.x.hi > f.domain.x.lo) || !(f.domain.y.hi > f.domain.y.lo)) {
    throw std::invalid_argument("function domain must be non-degenerate on each axis");
  }
  for (const GaussTerm& t : f.terms) {
    if (!(t.spread > 0.0)) throw std::invalid_argument("GaussMix spread must be > 0");
  }
}

inline TestFunction make_function(FunctionId id) { return TestFunction{id, default_domain(id), {}, 0.0, {}}; }

inline TestFunction make_gauss_mix(Domain domain, std::vector<GaussTerm> terms, double offset = 0.0,
                                   std::optional<double> floor = std::nullopt) {
  TestFunction f{FunctionId::GaussMix, domain, std::move(terms), offset, floor};
  validate(f);
  return f;
}

// A flat landscape of the given height.
inline TestFunction make_constant(double value, Domain domain = square_domain(0.0, 1.0)) {
  return make_gauss_mix(domain, {}, value);
}

// Nutrient landscape with several peaks and valleys over [0,30]^2, after
// Passino's bacterial foraging test setup.
inline TestFunction passino_nutrient_1() {
  const double wide = std::sqrt(5.0);  // exp(-0.1 d^2)
  const double mid = 2.5;              // exp(-0.08 d^2)
  const double narrow = 1.0;           // exp(-0.5 d^2)
  return make_gauss_mix(square_domain(0.0, 30.0), {
                                                      {{15, 20}, 5.0, wide},
                                                      {{20, 15}, -2.0, mid},
                                                      {{25, 10}, 3.0, mid},
                                                      {{5, 10}, 2.0, wide},
                                                      {{5, 5}, -2.0, narrow},
                                                      {{15, 5}, -4.0, wide},
                                                      {{8, 25}, -2.0, narrow},
                                                      {{21, 25}, -2.0, narrow},
                                                      {{25, 16}, 2.0, narrow},
                                                      {{5, 14}, 2.0, narrow},
                                                  });
}

// Zero at (15,15), falling off in every direction onto a flat plateau.
inline TestFunction passino_nutrient_2() {
  return make_gauss_mix(square_domain(0.0, 30.0), {{{15, 15}, 1.0, 6.0}}, -1.0, -0.75);
}

inline double eval_function(const TestFunction& f, Vec2 p) {
  if (!f.domain.contains(p)) {
    throw DomainError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") outside domain of " +
                      std::string(to_string(f.id)));
  }
  const double x = p.x;
  const double y = p.y;
  double v = 0.0;
  switch (f.id) {
    case FunctionId::F0a: v = x * std::exp(-0.2 * (x * x + y * y)); break;
    case FunctionId::F0b: v = -x * std::exp(-0.2 * (x * x + y * y)); break;
    case FunctionId::F1: v = x * x + y * y; break;
    case FunctionId::F2: v = x * x + 2.0 * y * y; break;
    case FunctionId::F3: v = x * x + (x + y) * (x + y); break;
    case FunctionId::F4: v = 100.0 * (y - x * x) * (y - x * x) + (1.0 - x) * (1.0 - x); break;
    case FunctionId::F5: {
      constexpr double two_pi = 2.0 * std::numbers::pi;
      v = 20.0 + (x * x - 10.0 * std::cos(two_pi * x)) + (y * y - 10.0 * std::cos(two_pi * y));
      break;
    }
    case FunctionId::F6:
      v = -x * std::sin(std::sqrt(std::fabs(x))) - y * std::sin(std::sqrt(std::fabs(y)));
      break;
    case FunctionId::GaussMix: {
      v = f.offset;
      for (const GaussTerm& t : f.terms) {
        const double dx = x - t.center.x;
        const double dy = y - t.center.y;
        v += t.weight * std::exp(-(dx * dx + dy * dy) / (2.0 * t.spread * t.spread));
      }
      if (f.floor) v = std::max(*f.floor, v);
      break;
    }
  }
  if (!std::isfinite(v)) throw NumericError("non-finite value from " + std::string(to_string(f.id)));
  return v;
}

inline Vec2 cell_center(const Domain& d, std::size_t col, std::size_t row, std::size_t width, std::size_t height) {
  return {d.x.lo + (static_cast<double>(col) + 0.5) * d.x.width() / static_cast<double>(width),
          d.y.lo + (static_cast<double>(row) + 0.5) * d.y.width() / static_cast<double>(height)};
}

// Altitude grid sampled at cell centers of a W x H lattice.
class Habitat {
public:
  Habitat(Lattice lattice, std::vector<double> altitudes, std::optional<TestFunction> source = std::nullopt)
      : lattice_(lattice), altitudes_(std::move(altitudes)), source_(std::move(source)) {
    if (altitudes_.size() != lattice_.size()) throw std::invalid_argument("altitude grid size mismatch");
    const auto [lo, hi] = std::minmax_element(altitudes_.begin(), altitudes_.end());
    z_lo_ = *lo;
    z_hi_ = *hi;
    domain_ = source_ ? source_->domain : square_domain(0.0, 1.0);
  }

  const Lattice& lattice() const { return lattice_; }
  std::size_t width() const { return lattice_.width; }
  std::size_t height() const { return lattice_.height; }
  std::size_t size() const { return lattice_.size(); }
  double altitude(CellIndex c) const { return altitudes_[c]; }
  const std::vector<double>& altitudes() const { return altitudes_; }
  double z_lo() const { return z_lo_; }
  double z_hi() const { return z_hi_; }
  const std::optional<TestFunction>& source() const { return source_; }
  const Domain& domain() const { return domain_; }

  Vec2 cell_center(std::size_t col, std::size_t row) const {
    return swarmsearch::cell_center(domain_, col, row, width(), height());
  }
  Vec2 cell_center(CellIndex c) const { return cell_center(lattice_.col(c), lattice_.row(c)); }

  // Cell containing a continuous point; points on or beyond the edges map
  // to the border cells.
  CellIndex cell_of(Vec2 p) const {
    auto axis = [](double v, const Interval& iv, std::size_t n) {
      const double u = std::floor((v - iv.lo) / iv.width() * static_cast<double>(n));
      if (!(u >= 0.0)) return std::size_t{0};
      return std::min(static_cast<std::size_t>(u), n - 1);
    };
    return lattice_.index(axis(p.x, domain_.x, width()), axis(p.y, domain_.y, height()));
  }

  // A copy with every altitude mapped through z -> scale * z + shift.
  Habitat rescaled(double scale, double shift) const {
    std::vector<double> z(altitudes_);
    for (double& v : z) v = scale * v + shift;
    Habitat h(lattice_, std::move(z));
    h.domain_ = domain_;
    return h;
  }

private:
  Lattice lattice_;
  std::vector<double> altitudes_;
  std::optional<TestFunction> source_;
  Domain domain_;
  double z_lo_ = 0.0;
  double z_hi_ = 0.0;
};

inline Habitat discretize(const TestFunction& f, std::size_t width, std::size_t height) {
  if (width < 2 || height < 2) throw std::invalid_argument("discretize needs W >= 2 and H >= 2");
  validate(f);
  const Lattice lattice(width, height);
  std::vector<double> z(lattice.size());
  for (std::size_t row = 0; row < height; ++row) {
    for (std::size_t col = 0; col < width; ++col) {
      z[lattice.index(col, row)] = eval_function(f, cell_center(f.domain, col, row, width, height));
    }
  }
  return Habitat(lattice, std::move(z), f);
}

// Strictly better in the objective's direction.
inline bool better(double a, double b, Objective obj) { return obj == Objective::Maximize ? a > b : a < b; }

inline CellIndex grid_extremum(const Habitat& h, Objective obj) {
  CellIndex best = 0;
  for (CellIndex c = 1; c < h.size(); ++c) {
    if (better(h.altitude(c), h.altitude(best), obj)) best = c;
  }
  return best;
}

struct Phase {
  long t_start = 0;
  TestFunction function;
  Objective objective = Objective::Maximize;
  bool operator==(const Phase&) const = default;
};

// Ordered phases; phase i is active for t_start[i] <= t < t_start[i+1].
// Steps run t = 1..t_max; t = 0 is the initial placement.
struct Schedule {
  std::vector<Phase> phases;
  long t_max = 0;

  bool operator==(const Schedule&) const = default;

  std::size_t phase_at(long t) const {
    std::size_t i = 0;
    while (i + 1 < phases.size() && phases[i + 1].t_start <= t) ++i;
    return i;
  }
};

inline void validate(const Schedule& s) {
  if (s.phases.empty()) throw std::invalid_argument("schedule has no phases");
  if (s.t_max < 1) throw std::invalid_argument("schedule t_max must be >= 1");
  if (s.phases.front().t_start != 0) throw std::invalid_argument("first phase must start at t = 0");
  for (std::size_t i = 0; i < s.phases.size(); ++i) {
    if (i > 0 && s.phases[i].t_start <= s.phases[i - 1].t_start) {
      throw std::invalid_argument("phase start steps must be strictly increasing");
    }
    if (s.phases[i].t_start >= s.t_max) throw std::invalid_argument("phase starts at or after t_max");
    validate(s.phases[i].function);
  }
}

}  // namespace swarmsearch
