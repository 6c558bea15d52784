#pragma once

#include <span>
#include <vector>

#include "foamlb/lattice.hpp"

namespace foamlb {

enum class PsiKind { exponential, identity };

struct InteractionParams {
  double G = -5.0;  ///< negative is attractive
  PsiKind psi_kind = PsiKind::exponential;
};

struct CriticalPoint {
  double G_critical;
  double rho_critical;
};

/// psi(rho) = 1 - exp(-rho) (exponential) or rho (identity). Throws on rho < 0.
double pseudopotential(double rho, PsiKind kind = PsiKind::exponential);

/// Same as pseudopotential() without the sign check; clamps negative input to 0.
inline double psi_exp(double rho) { return rho > 0.0 ? -std::expm1(-rho) : 0.0; }

/// F(x) = -G psi(x) sum_i w_i psi(x + e_i) e_i, with boundary images from the table.
void shan_chen_force(std::span<const double> psi, double G, const NeighborTable& table, std::span<Vec2> out);
std::vector<Vec2> shan_chen_force(std::span<const double> psi, double G, const NeighborTable& table);

/// Bulk pressure p = rho cs^2 + (G/6) psi^2.
double eos_pressure(double rho, double G, PsiKind kind = PsiKind::exponential);
double eos_dp_drho(double rho, double G, PsiKind kind = PsiKind::exponential);
double eos_d2p_drho2(double rho, double G, PsiKind kind = PsiKind::exponential);

/// Solves dp/drho = 0 and d2p/drho2 = 0 jointly. The first condition fixes
/// G(rho); the second is then bisected in rho on [0.1, 2].
/// Throws SolverError when the pseudopotential has no critical point or the
/// bisection does not converge.
CriticalPoint critical_point(PsiKind kind = PsiKind::exponential);

struct Tensor2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
};

/// Momentum-flux tensor of the pseudopotential fluid with gradients from
/// second-order central differences. Diagnostic only.
std::vector<Tensor2> flux_tensor(std::span<const double> psi, double G, std::span<const double> rho,
                                 const NeighborTable& table);

}  // namespace foamlb
