// Observation simulation and the path pipeline X -> Z -> Q -> M built on a
// kernel bundle. All stochastic integrals are left-point (Ito) sums.
#ifndef MFOU_PROCESS_HPP
#define MFOU_PROCESS_HPP

#include <string>
#include <vector>

#include "mfou/grid.hpp"
#include "mfou/kernel.hpp"
#include "mfou/mfbm.hpp"

namespace mfou {

enum class InputKind { Zero, Constant, Optimal, Tabulated };

std::string input_kind_name(InputKind k);

// Drift input u(t) together with its transformed representation v(t), the
// drift rate of Z against the bracket measure.
struct InputSignal {
  TimeGrid grid{1.0, 1};
  InputKind kind = InputKind::Zero;
  double alpha = 0.0;            // level when kind == Constant
  std::vector<double> u;         // per node
  std::vector<double> v;         // per node

  static InputSignal zero(const TimeGrid& grid);
  // u = alpha everywhere; v computed through the kernel transform rather
  // than assumed constant.
  static InputSignal constant(const KernelBundle& kernel, double alpha);
  static InputSignal tabulated(const TimeGrid& grid, std::vector<double> u,
                               std::vector<double> v);

  // (1/T) int v^2 dm, the design energy
  double energy(const KernelBundle& kernel) const;
};

// Drift rate of Z induced by drift u of X: v(t) = d/dt int_0^t g(s,t)u(s)ds
// divided by m'(t). A constant u maps to (numerically) the same constant.
std::vector<double> transform_u_to_v(const std::vector<double>& u,
                                     const KernelBundle& kernel);

// Euler scheme X_{i+1} = X_i + (-theta X_i + u_i) dt + dxi_i, X_0 = 0.
// theta = 0 is allowed (pure input-plus-noise paths).
std::vector<double> simulate_x(const NoisePath& noise, double theta,
                               const InputSignal& input);

// Z(t_j) = sum_{i<j} g(s_i, t_j) (X_{i+1} - X_i).
std::vector<double> transform_z(const std::vector<double>& x,
                                const KernelBundle& kernel);

// Q(t_j) = (1/2)[psi(t_j) Z(t_j) + sum_{i<j} psi(s_i) dZ_i].
std::vector<double> compute_q(const std::vector<double>& z,
                              const KernelBundle& kernel);

// Inverse transform: X(t_j) = sum_{i<j} ghat(s_i, t_j) (Z_{i+1} - Z_i).
std::vector<double> invert_z(const std::vector<double>& z,
                             const KernelBundle& kernel);

// M(t_j) = Z(t_j) - sum_{i<j} (v_i - theta Q_i) dm_i; needs the true theta,
// so this is simulation-side validation only.
std::vector<double> extract_m(const std::vector<double>& z,
                              const std::vector<double>& q,
                              const InputSignal& input, double theta,
                              const KernelBundle& kernel);

// State pair zeta = (Z, int psi dZ) accumulated from the same increments.
struct ZetaPath {
  TimeGrid grid{1.0, 1};
  std::vector<double> zeta1;
  std::vector<double> zeta2;
};

ZetaPath zeta_path(const std::vector<double>& z, const KernelBundle& kernel);

// One simulated path with every derived process on the shared grid.
struct PathBundle {
  TimeGrid grid{1.0, 1};
  double theta_true = 0.0;
  InputSignal input;
  std::vector<double> xi;  // cumulative noise
  std::vector<double> x;
  std::vector<double> z;
  std::vector<double> q;
  std::vector<double> m;   // extracted martingale
};

PathBundle make_path(const NoisePath& noise, double theta,
                     const InputSignal& input, const KernelBundle& kernel);

}  // namespace mfou

#endif
