#include "mfou/grid.hpp"

#include <stdexcept>
#include <string>

namespace mfou {

TimeGrid::TimeGrid(double horizon, int n_steps)
    : horizon_(horizon), n_steps_(n_steps) {
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("horizon must be positive");
  }
  if (n_steps < 1) {
    throw std::invalid_argument("step count must be at least 1");
  }
  dt_ = horizon_ / n_steps_;
}

MeasureWeights::MeasureWeights(const TimeGrid& grid,
                               const std::vector<double>& m_nodes) {
  const int n = grid.steps();
  if (static_cast<int>(m_nodes.size()) != n + 1) {
    throw std::invalid_argument(
        "measure values must be given at every grid node: expected " +
        std::to_string(n + 1) + ", got " + std::to_string(m_nodes.size()));
  }
  w_.assign(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const double dm = m_nodes[i + 1] - m_nodes[i];
    if (dm < 0.0) {
      throw std::invalid_argument("bracket values must be nondecreasing");
    }
    w_[i] += 0.5 * dm;
    w_[i + 1] += 0.5 * dm;
  }
  total_ = m_nodes[n] - m_nodes[0];
}

}  // namespace mfou
