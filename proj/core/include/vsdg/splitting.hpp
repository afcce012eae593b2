#pragma once

#include <functional>
#include <memory>
#include <stdexcept>

#include "vsdg/fields.hpp"
#include "vsdg/manufactured.hpp"
#include "vsdg/stokes.hpp"
#include "vsdg/vlasov.hpp"

namespace vsdg {

/// Raised when a step would exceed the explicit transport stability bound.
class CflError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// safety * min(h_x / L, h_v / (u_bound + L)) / (2k + 1), L = max |v_i|.
double cfl_dt(double h_x, double h_v, double v_max, double u_bound, int degree, double safety);
/// Same bound for a phase space; k is the larger of k_x and k_v.
double cfl_dt(const PhaseSpace& space, double u_bound, double safety);

struct StepConfig {
  double dt = 0.0;
  double penalty = 10.0;
  double cfl_safety = 0.5;
  /// Reject steps whose dt exceeds the bound for the computed max |u_h|.
  bool check_cfl = true;
};

/// Right-hand sides of the coupled system. Empty members are zero.
struct Sources {
  TimePhaseFunction F;
  /// Separable form of F; preferred over F when set.
  SeparableFamily F_terms;
  TimeVectorFunction G;
  /// Exact solution used as exterior state on the x-wrap edges.
  TimePhaseFunction x_inflow;
};

Sources sources_for(const ManufacturedCase& mc, bool force_periodic = false);

struct SimulationState {
  double t = 0.0;
  long step = 0;
  PhaseField f;
  VelocityField u;
  PressureField p;
  MomentPair moments;
};

struct StepDiagnostics {
  double t = 0.0;
  double dt = 0.0;
  double max_u = 0.0;
};

/// Fully discrete Lie-Trotter scheme: Stokes solve with lagged moments, then a
/// forward Euler v-transport step with source, then a forward Euler
/// x-transport step.
class SplittingSolver {
 public:
  SplittingSolver(std::shared_ptr<const PhaseSpace> space, StepConfig cfg, Sources src);

  const std::shared_ptr<const PhaseSpace>& space() const { return space_; }
  const StepConfig& config() const { return cfg_; }
  const StokesSolver& stokes() const { return stokes_; }
  const TransportOperator& transport() const { return transport_; }

  /// Wraps f0 into a state at time t0 with moments and the matching Stokes
  /// solution.
  SimulationState initial_state(PhaseField f0, double t0 = 0.0) const;

  /// One step of length dt (cfg.dt when dt <= 0).
  StepDiagnostics lie_trotter_step(SimulationState& s, double dt = 0.0) const;

  /// Advances to t_end with steps of cfg.dt; the last step is shortened to
  /// land on t_end exactly. The observer sees the state after every step.
  void run(SimulationState& s, double t_end,
           const std::function<void(const SimulationState&, const StepDiagnostics&)>& observer = {}) const;

 private:
  std::shared_ptr<const PhaseSpace> space_;
  StepConfig cfg_;
  Sources src_;
  StokesSolver stokes_;
  TransportOperator transport_;
};

}  // namespace vsdg
