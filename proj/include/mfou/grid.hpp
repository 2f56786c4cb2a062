// Uniform time grid on [0, T] and quadrature weights against a bracket measure.
#ifndef MFOU_GRID_HPP
#define MFOU_GRID_HPP

#include <vector>

namespace mfou {

// Uniform partition 0 = t_0 < t_1 < ... < t_n = T.
class TimeGrid {
 public:
  TimeGrid(double horizon, int n_steps);

  double horizon() const { return horizon_; }
  int steps() const { return n_steps_; }
  int nodes() const { return n_steps_ + 1; }
  double dt() const { return dt_; }
  double node(int i) const { return dt_ * i; }

  bool operator==(const TimeGrid& o) const {
    return horizon_ == o.horizon_ && n_steps_ == o.n_steps_;
  }

 private:
  double horizon_;
  int n_steps_;
  double dt_;
};

// Node weights w_i such that sum_i w_i f(t_i) is the trapezoidal rule for
// integral of f against the measure with cumulative values m(t_i).
class MeasureWeights {
 public:
  MeasureWeights(const TimeGrid& grid, const std::vector<double>& m_nodes);

  const std::vector<double>& weights() const { return w_; }
  double total() const { return total_; }
  int size() const { return static_cast<int>(w_.size()); }

 private:
  std::vector<double> w_;
  double total_;
};

}  // namespace mfou

#endif
