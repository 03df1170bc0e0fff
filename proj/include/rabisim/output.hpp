// output.hpp — CSV and JSON emitters. CSV: header row, comma separators, LF
// endings, 17 significant digits (round-trippable doubles), literal "inf"
// for diverged precision. JSON: {"meta": ..., "columns"/"rows"} or a matrix
// block; non-finite values serialize as null there.

#pragma once

#include "rabisim/sweep.hpp"

#include <nlohmann/json_fwd.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace rabisim {

// %.17g formatting; "inf"/"-inf"/"nan" tokens for non-finite values.
std::string format_double(double v);

void write_spectrum_csv_header(std::ostream& os);
void write_spectrum_csv_row(std::ostream& os, const SpectrumRow& row);
void write_spectrum_csv(std::ostream& os, const SpectrumTable& table);
void write_spectrum_json(std::ostream& os, const SpectrumTable& table,
                         const nlohmann::json& meta);

void write_heatmap_csv(std::ostream& os, const HeatmapResult& result);
void write_heatmap_json(std::ostream& os, const HeatmapResult& result,
                        const nlohmann::json& meta);

// Pulse scans: epsilon rows are (epsilon, delta_root); omega_pul rows are
// (omega_pul, overlap, delta_root).
struct PulseRow {
    double x = 0.0;
    double overlap = 0.0;
    double delta_root = 0.0;
    bool has_overlap = false;
};

void write_pulse_csv(std::ostream& os, const std::vector<PulseRow>& rows);
void write_pulse_json(std::ostream& os, const std::vector<PulseRow>& rows,
                      const nlohmann::json& meta);

struct CompareRow {
    double duration = 0.0;
    double rabi_sigma0 = 0.0;
    double rabi_noisy = 0.0;
    double ramsey_sigma0 = 0.0;
    double ramsey_noisy = 0.0;
    double sql = 0.0;  // 1 / (sqrt(N) T)
};

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);
void write_compare_json(std::ostream& os, const std::vector<CompareRow>& rows,
                        const nlohmann::json& meta);

}  // namespace rabisim
