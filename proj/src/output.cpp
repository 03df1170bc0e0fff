#include "rabisim/output.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>

namespace rabisim {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

json json_number(double v) {
    // JSON has no inf/nan; emit null (documented in the README)
    if (!std::isfinite(v)) return nullptr;
    return v;
}

void write_json_doc(std::ostream& os, const json& doc) {
    os << doc.dump(2) << "\n";
}

}  // namespace

void write_spectrum_csv_header(std::ostream& os) {
    os << "delta_rad_s,mean_jz,mean_jz_over_n,var_jz,var_jz_noisy,slope,"
          "precision\n";
}

void write_spectrum_csv_row(std::ostream& os, const SpectrumRow& row) {
    os << format_double(row.delta) << ',' << format_double(row.mean_jz) << ','
       << format_double(row.mean_jz_scaled) << ',' << format_double(row.var_jz)
       << ',' << format_double(row.var_jz_noisy) << ','
       << format_double(row.slope) << ',' << format_double(row.precision)
       << '\n';
}

void write_spectrum_csv(std::ostream& os, const SpectrumTable& table) {
    write_spectrum_csv_header(os);
    for (const auto& row : table.rows) write_spectrum_csv_row(os, row);
}

void write_spectrum_json(std::ostream& os, const SpectrumTable& table,
                         const json& meta) {
    json doc;
    doc["meta"] = meta;
    doc["columns"] = {"delta_rad_s", "mean_jz",  "mean_jz_over_n", "var_jz",
                      "var_jz_noisy", "slope",   "precision"};
    json rows = json::array();
    for (const auto& r : table.rows) {
        rows.push_back({json_number(r.delta), json_number(r.mean_jz),
                        json_number(r.mean_jz_scaled), json_number(r.var_jz),
                        json_number(r.var_jz_noisy), json_number(r.slope),
                        json_number(r.precision)});
    }
    doc["rows"] = std::move(rows);
    write_json_doc(os, doc);
}

void write_heatmap_csv(std::ostream& os, const HeatmapResult& result) {
    os << "# axis1," << result.axis1.name;
    for (double v : result.axis1.values) os << ',' << format_double(v);
    os << "\n# axis2," << result.axis2.name;
    for (double v : result.axis2.values) os << ',' << format_double(v);
    os << "\n";
    for (Eigen::Index i = 0; i < result.precision.rows(); ++i) {
        for (Eigen::Index j = 0; j < result.precision.cols(); ++j) {
            if (j) os << ',';
            os << format_double(result.precision(i, j));
        }
        os << '\n';
    }
}

void write_heatmap_json(std::ostream& os, const HeatmapResult& result,
                        const json& meta) {
    json doc;
    doc["meta"] = meta;
    doc["axis1"] = {{"name", result.axis1.name}, {"values", result.axis1.values}};
    doc["axis2"] = {{"name", result.axis2.name}, {"values", result.axis2.values}};
    json matrix = json::array();
    for (Eigen::Index i = 0; i < result.precision.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < result.precision.cols(); ++j) {
            row.push_back(json_number(result.precision(i, j)));
        }
        matrix.push_back(std::move(row));
    }
    doc["matrix"] = std::move(matrix);
    write_json_doc(os, doc);
}

void write_pulse_csv(std::ostream& os, const std::vector<PulseRow>& rows) {
    const bool with_overlap = !rows.empty() && rows.front().has_overlap;
    if (with_overlap) {
        os << "omega_pul_rad_s,overlap,delta_root_rad_s\n";
    } else {
        os << "epsilon,delta_root_rad_s\n";
    }
    for (const auto& r : rows) {
        if (with_overlap) {
            os << format_double(r.x) << ',' << format_double(r.overlap) << ','
               << format_double(r.delta_root) << '\n';
        } else {
            os << format_double(r.x) << ',' << format_double(r.delta_root) << '\n';
        }
    }
}

void write_pulse_json(std::ostream& os, const std::vector<PulseRow>& rows,
                      const json& meta) {
    const bool with_overlap = !rows.empty() && rows.front().has_overlap;
    json doc;
    doc["meta"] = meta;
    doc["columns"] = with_overlap
                         ? json({"omega_pul_rad_s", "overlap", "delta_root_rad_s"})
                         : json({"epsilon", "delta_root_rad_s"});
    json out = json::array();
    for (const auto& r : rows) {
        if (with_overlap) {
            out.push_back({json_number(r.x), json_number(r.overlap),
                           json_number(r.delta_root)});
        } else {
            out.push_back({json_number(r.x), json_number(r.delta_root)});
        }
    }
    doc["rows"] = std::move(out);
    write_json_doc(os, doc);
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
    os << "duration_s,precision_rabi_sigma0,precision_rabi_noisy,"
          "precision_ramsey_sigma0,precision_ramsey_noisy,sql_precision\n";
    for (const auto& r : rows) {
        os << format_double(r.duration) << ',' << format_double(r.rabi_sigma0)
           << ',' << format_double(r.rabi_noisy) << ','
           << format_double(r.ramsey_sigma0) << ','
           << format_double(r.ramsey_noisy) << ',' << format_double(r.sql)
           << '\n';
    }
}

void write_compare_json(std::ostream& os, const std::vector<CompareRow>& rows,
                        const json& meta) {
    json doc;
    doc["meta"] = meta;
    doc["columns"] = {"duration_s",
                      "precision_rabi_sigma0",
                      "precision_rabi_noisy",
                      "precision_ramsey_sigma0",
                      "precision_ramsey_noisy",
                      "sql_precision"};
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({json_number(r.duration), json_number(r.rabi_sigma0),
                       json_number(r.rabi_noisy), json_number(r.ramsey_sigma0),
                       json_number(r.ramsey_noisy), json_number(r.sql)});
    }
    doc["rows"] = std::move(out);
    write_json_doc(os, doc);
}

}  // namespace rabisim
