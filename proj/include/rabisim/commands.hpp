// commands.hpp — the work behind each CLI subcommand, callable in-process
// (the verify golden checks and the tests reuse these without spawning).

#pragma once

#include "rabisim/config.hpp"
#include "rabisim/output.hpp"

#include <ostream>

namespace rabisim {

// Detuning spectrum table (Figs. 1-3 style data).
void run_spectrum(const RunConfig& config, std::ostream& os);

// Precision-at-resonance heatmap over two parameter axes.
void run_heatmap(const RunConfig& config, std::ostream& os);

// Pulse-imperfection scans: epsilon -> antisymmetric-point shift, or
// omega_pul -> (overlap with the ideal input, shift).
void run_pulse(const RunConfig& config, std::ostream& os);

// Antisymmetric Rabi vs OAT-Ramsey precision versus total time, with and
// without detection noise, plus the SQL reference column.
void run_compare(const RunConfig& config, std::ostream& os);

// Dispatch by config.protocol; validates that it matches `expected`.
void run_command(const std::string& expected, const RunConfig& config,
                 std::ostream& os);

}  // namespace rabisim
