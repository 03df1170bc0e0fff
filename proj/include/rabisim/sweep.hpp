// sweep.hpp — parameter scans: detuning spectra, 2-d precision heatmaps at
// resonance, and optimal-evolution-time search. Rows and cells are
// independent work items computed in parallel; output order is grid order.

#pragma once

#include "rabisim/protocols.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rabisim {

// One scan axis: a parameter name and a strictly monotone value list.
// Recognized names: "delta", "omega", "chi" (rad/s) and "duration" (s).
struct ScanAxis {
    std::string name;
    std::vector<double> values;

    void validate() const;
};

struct ScanGrid {
    ScanAxis axis1;
    std::optional<ScanAxis> axis2;
    RabiParams base;
    InitialSpec initial;
    NoiseModel noise;

    void validate() const;
};

struct SweepOptions {
    int threads = 0;      // 0 -> hardware concurrency
    double fd_step = 0.0; // 0 -> default_fd_step(params)
};

struct SpectrumRow {
    double delta = 0.0;
    double mean_jz = 0.0;
    double mean_jz_scaled = 0.0;  // mean_jz / N, in [-1/2, 1/2]
    double var_jz = 0.0;
    double var_jz_noisy = 0.0;
    double slope = 0.0;
    double precision = 0.0;  // kDiverged at zero slope
    bool ok = true;
    std::string error;  // set when a row failed; numeric fields are NaN
};

struct SpectrumTable {
    std::vector<SpectrumRow> rows;
};

// One row per detuning in axis1 (name must be "delta"). Row errors are
// recorded, not thrown. For symmetric initial states on a grid symmetric
// about zero the antisymmetry of the table is verified as a tripwire.
SpectrumTable scan_delta(const ScanGrid& grid, const SweepOptions& opts = {});

// Streaming variant: rows are handed to the sink in grid order, chunk by
// chunk, so large grids never reside in memory.
void scan_delta_streamed(const ScanGrid& grid, const SweepOptions& opts,
                         const std::function<void(const SpectrumRow&)>& sink);

struct HeatmapResult {
    ScanAxis axis1;  // rows
    ScanAxis axis2;  // columns
    Eigen::MatrixXd precision;  // kDiverged recorded as +inf
};

// Precision at the on-resonance point delta = 0 for every (axis1, axis2)
// cell; axes modify the base parameters by name.
HeatmapResult heatmap(const ScanGrid& grid, const SweepOptions& opts = {});

struct OptimalTime {
    double t_opt = 0.0;
    double precision = 0.0;
};

// Global minimum of the on-resonance precision over a dense duration grid
// (default 2000 points) followed by golden-section refinement around the
// best cell. The Hamiltonian does not depend on T, so the three propagators
// (delta = 0, +-fd_step) are built once. Throws NoOptimumError when every
// grid point is diverged.
OptimalTime optimal_time(const RabiParams& base, const InitialSpec& initial,
                         std::pair<double, double> window,
                         const NoiseModel& noise,
                         const SweepOptions& opts = {}, int grid_points = 2000);

}  // namespace rabisim
