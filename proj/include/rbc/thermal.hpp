#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "rbc/field.hpp"
#include "rbc/stokes.hpp"

namespace rbc {

/// Simulation state in terms of theta = T - (1 - z/H).
struct SimState {
    Grid grid;
    double t = 0.0;
    long step = 0;
    PhysicalField theta;
    VectorField u;
    long clip_count = 0;  // nodes clipped to T in [0, 1] at initialization
};

/// Physical temperature T = theta + 1 - z/H.
PhysicalField temperature(const SimState& s);

/// Extra forcing S(y, z, t) added to the theta equation (manufactured tests).
using Source = std::function<double(double y, double z, double t)>;

struct StepOptions {
    bool update_velocity = true;  // false keeps u frozen
    bool advect = true;
    bool buoyancy = true;         // the w/H term
    Source source;                // evaluated at the old time level
};

class ThermalStepper {
public:
    explicit ThermalStepper(const Grid& grid);

    const Grid& grid() const { return grid_; }
    const StokesSolver& stokes() const { return *stokes_; }

    /// kind is "conduction" or "perturbed".
    SimState init_state(const std::string& kind, double amplitude, std::uint64_t seed) const;
    /// State with the given theta (walls must be zero) and its Stokes velocity.
    SimState make_state(PhysicalField theta, double t = 0.0) const;

    /// IMEX Euler step: implicit diffusion, explicit advection and buoyancy.
    SimState step(const SimState& s, double dt, const StepOptions& opt = {}) const;

    /// Advection term u . grad theta with dealiased products.
    PhysicalField advection(const SimState& s) const;

private:
    Grid grid_;
    std::shared_ptr<StokesSolver> stokes_;
};

/// dt = cfl * min(dy / max|v|, dz / max|w|), capped at dt_max.
double cfl_dt(const SimState& s, double cfl, double dt_max);

struct MaxPrinciple {
    double t_min = 0.0;
    double t_max = 0.0;
    double violation = 0.0;
};

MaxPrinciple max_principle_monitor(const SimState& s);

/// True when every value of theta, v and w is finite.
bool all_finite(const SimState& s);

}  // namespace rbc
