#pragma once

/**
 * @file dataset.hpp
 * @brief Tabular figure data and its CSV / JSON serialisations.
 *
 * CSV: header row, comma separated, '.' decimal point, 17 significant digits,
 * '\n' line endings. JSON: {"meta": {...}, "rows": [{column: value, ...}, ...]}.
 * Neither format carries timestamps, so reruns are byte-identical.
 */

#include <nlohmann/json.hpp>

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace popcorn {

inline constexpr std::string_view library_version = "1.0.0";

struct dataset {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();

    void add_row(std::vector<double> row) {
        if (row.size() != columns.size()) throw std::logic_error("dataset: row width does not match header");
        rows.push_back(std::move(row));
    }
};

enum class output_format { csv, json };

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const dataset& d) {
    for (std::size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << d.columns[i];
    os << '\n';
    for (const auto& row : d.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const dataset& d) {
    nlohmann::ordered_json doc;
    doc["meta"] = d.meta;
    doc["meta"]["columns"] = d.columns;
    auto& rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : d.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[d.columns[i]] = row[i];
        rows.push_back(std::move(r));
    }
    return doc;
}

inline void write_json(std::ostream& os, const dataset& d) { os << to_json(d).dump(2) << '\n'; }

inline void write_dataset(std::ostream& os, const dataset& d, output_format fmt) {
    if (fmt == output_format::csv)
        write_csv(os, d);
    else
        write_json(os, d);
}

}  // namespace popcorn
