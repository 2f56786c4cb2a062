// Laplace transforms of quadratic functionals of the filtered state pair:
// a Hamiltonian (det-based) route, a Riccati-plus-Volterra route for the
// noncentral case, and the closed-form long-horizon rate.
//
// Conventions, fixed once for the whole module: with R = (1/4) l l^T,
//   psi_laplace(a)        = E exp(-a     int zeta^T R zeta dm)   (centered)
//   quadratic_laplace(k)  = E exp(-k     int Q_t^2 dm)           (Q = l.zeta/2)
// so the two agree at k = a when the mean path vanishes, and the spectral
// form is prod_i (1 + 2 a nu_i)^{-1/2} over eigenvalues of the covariance
// operator in design.hpp.
#ifndef MFOU_LAPLACE_HPP
#define MFOU_LAPLACE_HPP

#include <Eigen/Dense>
#include <vector>

#include "mfou/kernel.hpp"

namespace mfou {

struct PsiLaplaceResult {
  double log_value = 0.0;
  double value = 0.0;
  double trace_quad = 0.0;         // int tr(Acal) dm, approx -theta T
  std::vector<double> log_det;     // log det Psi1 at every node
};

// Hamiltonian route: L(a) = exp(-1/2 int tr(Acal) dm) det(Psi1(T))^{-1/2},
// with log det Psi1 carried by the bounded Riccati variable
// Hcal = Psi1^{-1} Psi2 so that arbitrarily long horizons stay exact.
// Requires a > -theta^2/2 (solvability of the pair on all of [0, T]).
PsiLaplaceResult psi_laplace(double a, double theta,
                             const KernelBundle& kernel);

struct LaplaceResult {
  double value = 0.0;
  double log_value = 0.0;   // = -(trace_part + mean_part)
  double trace_part = 0.0;  // kappa int tr(Gamma R) dm   (centered share)
  double mean_part = 0.0;   // kappa int Z^T R Z dm       (drift share)
};

// Riccati route for E exp(-kappa int Q^2 dm) when the state has mean path
// driven by v: Gamma solves the matrix Riccati equation and Z the damped
// mean equation (a Volterra equation solved by one implicit sweep).
LaplaceResult quadratic_laplace(double kappa, double theta,
                                const std::vector<double>& v,
                                const KernelBundle& kernel);

// Normalized transform, kappa = mu / T.
LaplaceResult gamma_z_laplace(double mu, double theta,
                              const std::vector<double>& v,
                              const KernelBundle& kernel);

// Unnormalized transform, kappa = mu; -log_value / T is the finite-horizon
// rate whose long-run limit kat_limit describes.
LaplaceResult kat_functional(double mu, double theta,
                             const std::vector<double>& v,
                             const KernelBundle& kernel);

// Same transform for the constant drift u = alpha (v computed through the
// kernel, kappa = mu / T).
LaplaceResult constant_drift_laplace(double mu, double theta, double alpha,
                                     const KernelBundle& kernel);

// Closed-form long-horizon rate mu/theta^2 + theta/2 - sqrt(theta^2/4 + mu/2)
// for unit constant drift; requires mu > -theta^2/2.
double kat_limit(double mu, double theta);

// -1/2 sum log(1 + 2 a nu_i) over an operator spectrum; the spectral form of
// log psi_laplace(a) for the centered functional.
double log_product_laplace(const Eigen::VectorXd& eigenvalues, double a);

}  // namespace mfou

#endif
