#pragma once

// Particle in the box [-1,1]^2 with homogeneous Dirichlet walls (hbar = 1).
// The Hamiltonian comes from the two-level chain {X0, X1}, {1, grad}:
//   script_H = Kx (x) Wy + Wx (x) Ky  (restricted to interior nodes),
//   H        = M^{-1} script_H,       M = Wx (x) Wy.
// States evolve under powers of G = sum_{k<=n} (-i tau H)^k / k!, and
// observables in the Heisenberg picture as U^dagger B U with the M-adjoint
// U^dagger = M^{-1} U^* M.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "csg/grid.hpp"
#include "csg/hilbert.hpp"
#include "csg/semigroup.hpp"

namespace csg::quantum {

struct QuantumSystem {
  grid::TensorGrid2D grid;
  grid::InteriorMask mask;
  hilbert::ParticularProjector projector;
  hilbert::OperatorRep hamiltonian;
  ComplexVector psi0;

  const hilbert::GramForm& gram() const noexcept { return hamiltonian.gram; }
  double spacing() const noexcept { return grid.gx().spacing(); }
};

/// Optional `potential` adds a real multiplication operator V to H.
QuantumSystem build_box_system(std::size_t elements_per_dim, const hilbert::Sampleable& psi0,
                               const hilbert::Sampleable& potential = nullptr);

/// (1 - x^2)(1 - y^2).
hilbert::Sampleable symmetric_bump();
/// Smooth bump centred at (cx, cy) vanishing on the walls.
hilbert::Sampleable offset_bump(double cx, double cy);

/// tau = alpha h^d / K_A with K_A = ||d^2||_inf from the reference element.
semigroup::StepRule reference_step_rule(const QuantumSystem& qs, double alpha, double d_exponent);

semigroup::DiscreteSemigroup schrodinger_semigroup(const QuantumSystem& qs, int n, double tau);

struct Observable {
  RealMatrix matrix;
  std::string label;
};

enum class Axis { x, y };

Observable position_operator(const QuantumSystem& qs, Axis axis);
Observable identity_observable(const QuantumSystem& qs);

/// U_k^dagger B U_k with U_k = G^k and the M-weighted adjoint.
ComplexMatrix heisenberg_evolve(const QuantumSystem& qs, const semigroup::DiscreteSemigroup& sg,
                                const Observable& obs, std::size_t k);

/// psi^* M B psi / psi^* M psi.
std::complex<double> state_expectation(const hilbert::GramForm& gram, const Observable& obs,
                                       const ComplexVector& psi);
/// psi^* M psi.
double state_weight(const hilbert::GramForm& gram, const ComplexVector& psi);

/// E(B) after k steps from qs.psi0.
std::complex<double> expectation(const QuantumSystem& qs, const semigroup::DiscreteSemigroup& sg,
                                 const Observable& obs, std::size_t k);

struct HeisenbergTrace {
  std::vector<double> times;
  std::vector<std::complex<double>> ex_x;
  std::vector<std::complex<double>> ex_y;
  std::vector<double> norms;  // P_psi
};

/// Position expectations and P_psi for k = 0..k_max.
HeisenbergTrace heisenberg_trace(const QuantumSystem& qs, const semigroup::DiscreteSemigroup& sg,
                                 std::size_t k_max);

struct ExampleConfig {
  std::size_t elements_per_dim = 8;
  int order = 3;
  std::size_t k_max = 200;
  double alpha = 0.125;
  double d_exponent = 3.0;
  hilbert::Sampleable psi0 = nullptr;  // symmetric_bump() when empty
};

HeisenbergTrace run_example(const ExampleConfig& config = {});

}  // namespace csg::quantum
