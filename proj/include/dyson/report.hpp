#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dyson/config.hpp"
#include "dyson/rng.hpp"
#include "dyson/version.hpp"

namespace dyson {

using Cell = std::variant<double, long long, std::string>;

/**
 * A self-describing result table: a '#'-prefixed metadata block (the fully
 * resolved config, RNG identifier, build identifier) followed by the data
 * section.  Floats are emitted with 17 significant digits so the data
 * section reproduces bit-for-bit under identical config, seed, and build.
 */
class ReportTable {
public:
    ReportTable(const RunConfig& cfg, std::vector<std::string> columns)
        : config_(cfg), columns_(std::move(columns)) {}

    void add_row(std::vector<Cell> row) {
        require(row.size() == columns_.size(), "ReportTable: row width mismatch");
        rows_.push_back(std::move(row));
    }

    void write(std::ostream& out) const {
        if (config_.format == "json")
            write_json(out);
        else
            write_csv(out);
    }

    void write_csv(std::ostream& out) const {
        out << "# dysonsim output\n";
        out << "# build = " << build_id() << '\n';
        out << "# rng = " << kRngId << '\n';
        std::istringstream cfg(emit_run_config(config_));
        std::string line;
        while (std::getline(cfg, line)) out << "# " << line << '\n';
        for (size_t k = 0; k < columns_.size(); ++k)
            out << (k ? "," : "") << columns_[k];
        out << '\n';
        for (const auto& row : rows_) {
            for (size_t k = 0; k < row.size(); ++k) {
                if (k) out << ',';
                out << cell_text(row[k]);
            }
            out << '\n';
        }
    }

    void write_json(std::ostream& out) const {
        nlohmann::ordered_json doc;
        doc["build"] = build_id();
        doc["rng"] = kRngId;
        nlohmann::ordered_json meta;
        std::istringstream cfg(emit_run_config(config_));
        std::string line;
        while (std::getline(cfg, line)) {
            const auto eq = line.find('=');
            meta[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
        }
        doc["config"] = meta;
        doc["columns"] = columns_;
        auto rows = nlohmann::ordered_json::array();
        for (const auto& row : rows_) {
            auto jrow = nlohmann::ordered_json::array();
            for (const auto& cell : row) {
                if (std::holds_alternative<double>(cell))
                    jrow.push_back(std::get<double>(cell));
                else if (std::holds_alternative<long long>(cell))
                    jrow.push_back(std::get<long long>(cell));
                else
                    jrow.push_back(std::get<std::string>(cell));
            }
            rows.push_back(std::move(jrow));
        }
        doc["rows"] = std::move(rows);
        out << doc.dump(2) << '\n';
    }

private:
    static std::string cell_text(const Cell& cell) {
        if (std::holds_alternative<double>(cell))
            return detail::format_real(std::get<double>(cell));
        if (std::holds_alternative<long long>(cell))
            return std::to_string(std::get<long long>(cell));
        return std::get<std::string>(cell);
    }

    RunConfig config_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace dyson
