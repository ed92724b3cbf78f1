// Copyright 2026 The qsloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file dataset_io.hpp
 * On-disk dataset layout: a directory holding
 *
 *   fingerprint.csv  loc_id,x_m,y_m,rss_<station_id>...
 *   test.csv         same schema
 *   dataset.json     seed, path_loss_params, normalization, stations, area
 *
 * Missing readings are empty cells. Numbers are written in shortest
 * round-trip form, so save followed by load reproduces every value exactly.
 * Files are UTF-8 with LF line endings.
 */
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "json.hpp"
#include "qsloc/error.hpp"
#include "qsloc/locate/fingerprint_db.hpp"
#include "qsloc/prep/amplitude.hpp"
#include "qsloc/testbed/dataset.hpp"
#include "qsloc/testbed/path_loss.hpp"

namespace qsloc::testbed {

inline constexpr std::string_view kFingerprintFile = "fingerprint.csv";
inline constexpr std::string_view kTestFile = "test.csv";
inline constexpr std::string_view kSidecarFile = "dataset.json";
inline constexpr std::string_view kFormatTag = "qsloc-dataset/1";

/// Shortest decimal string that parses back to exactly `value`.
[[nodiscard]] inline std::string format_double(double value) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    if (result.ec != std::errc{}) {
        throw InvariantError("failed to format number");
    }
    return {buf, result.ptr};
}

/// Parses one comma-separated RSS list; empty fields become `sentinel`.
[[nodiscard]] inline std::vector<double> parse_rss_list(std::string_view text, double sentinel);

namespace detail {

struct CsvTable {
    std::vector<std::string> station_ids;
    std::vector<FingerprintRecord> records;
};

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline bool parse_number(std::string_view field, double &out) {
    if (field.empty()) {
        return false;
    }
    if (field.front() == '+') {
        field.remove_prefix(1);
    }
    const auto result = std::from_chars(field.data(), field.data() + field.size(), out);
    return result.ec == std::errc{} && result.ptr == field.data() + field.size() &&
           std::isfinite(out);
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

inline std::string write_csv(const std::vector<std::string> &station_ids,
                             const std::vector<FingerprintRecord> &records,
                             const prep::NormalizationConfig &normalization) {
    std::string out = "loc_id,x_m,y_m";
    for (const auto &id : station_ids) {
        out += ",rss_" + id;
    }
    out += '\n';
    for (const auto &record : records) {
        out += record.id;
        out += ',' + format_double(record.location.x);
        out += ',' + format_double(record.location.y);
        for (double value : record.rss) {
            out += ',';
            if (!prep::is_missing(value, normalization)) {
                out += format_double(value);
            }
        }
        out += '\n';
    }
    return out;
}

inline CsvTable parse_csv(const std::string &text, const std::string &name, double sentinel) {
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t expected_fields = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        const bool terminated = end != std::string::npos;
        if (!terminated) {
            end = text.size();
        }
        std::string_view line(text.data() + pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        const auto fields = split_fields(line);
        if (line_no == 1) {
            if (fields.size() < 4 || fields[0] != "loc_id" || fields[1] != "x_m" ||
                fields[2] != "y_m") {
                throw ParseError(name + ": header must be loc_id,x_m,y_m,rss_<station>...", 1, 1);
            }
            for (std::size_t c = 3; c < fields.size(); ++c) {
                if (!fields[c].starts_with("rss_") || fields[c].size() == 4) {
                    throw ParseError(name + ": column '" + std::string(fields[c]) +
                                         "' is not rss_<station_id>",
                                     1, c + 1);
                }
                table.station_ids.emplace_back(fields[c].substr(4));
            }
            expected_fields = fields.size();
            continue;
        }
        if (fields.size() != expected_fields) {
            throw ParseError(name + ": expected " + std::to_string(expected_fields) +
                                 " fields, found " + std::to_string(fields.size()),
                             line_no, std::min(fields.size(), expected_fields) + 1);
        }
        FingerprintRecord record;
        record.id = std::string(fields[0]);
        if (record.id.empty()) {
            throw ParseError(name + ": empty loc_id", line_no, 1);
        }
        if (!parse_number(fields[1], record.location.x)) {
            throw ParseError(name + ": bad x_m '" + std::string(fields[1]) + "'", line_no, 2);
        }
        if (!parse_number(fields[2], record.location.y)) {
            throw ParseError(name + ": bad y_m '" + std::string(fields[2]) + "'", line_no, 3);
        }
        for (std::size_t c = 3; c < fields.size(); ++c) {
            double value = sentinel;
            if (!fields[c].empty() && !parse_number(fields[c], value)) {
                throw ParseError(name + ": bad RSS value '" + std::string(fields[c]) + "'",
                                 line_no, c + 1);
            }
            record.rss.push_back(value);
        }
        table.records.push_back(std::move(record));
    }
    if (line_no == 0) {
        throw ParseError(name + ": file is empty", 1, 1);
    }
    return table;
}

inline nlohmann::json path_loss_to_json(const PathLossParams &p) {
    return {{"tx_power_dbm", p.tx_power_dbm},
            {"path_loss_exponent", p.path_loss_exponent},
            {"reference_distance_m", p.reference_distance_m},
            {"shadowing_sigma_db", p.shadowing_sigma_db},
            {"noise_floor_dbm", p.noise_floor_dbm}};
}

inline PathLossParams path_loss_from_json(const nlohmann::json &j) {
    PathLossParams p;
    p.tx_power_dbm = j.at("tx_power_dbm").get<double>();
    p.path_loss_exponent = j.at("path_loss_exponent").get<double>();
    p.reference_distance_m = j.at("reference_distance_m").get<double>();
    p.shadowing_sigma_db = j.at("shadowing_sigma_db").get<double>();
    p.noise_floor_dbm = j.at("noise_floor_dbm").get<double>();
    return p;
}

} // namespace detail

[[nodiscard]] inline nlohmann::json sidecar_json(const Dataset &ds) {
    nlohmann::json stations = nlohmann::json::array();
    for (const auto &s : ds.stations) {
        stations.push_back({{"id", s.id}, {"x_m", s.location.x}, {"y_m", s.location.y}});
    }
    const auto &norm = ds.fingerprint.normalization;
    nlohmann::json doc = {
        {"format", kFormatTag},
        {"area", {{"width_m", ds.area.width_m}, {"height_m", ds.area.height_m}}},
        {"coordinate_frame", std::string(locate::to_string(ds.fingerprint.frame))},
        {"normalization",
         {{"floor_dbm", norm.floor_dbm},
          {"sentinel", norm.sentinel_dbm},
          {"map", std::string(prep::to_string(norm.map))}}},
        {"stations", std::move(stations)},
        {"seed", nullptr},
        {"path_loss_params", nullptr},
    };
    if (ds.provenance) {
        doc["seed"] = ds.provenance->seed;
        doc["path_loss_params"] = detail::path_loss_to_json(ds.provenance->path_loss);
    }
    return doc;
}

/// Writes the three dataset files into `dir`, creating it if needed.
inline void save_dataset(const Dataset &ds, const std::filesystem::path &dir) {
    ds.validate();
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create '" + dir.string() + "': " + ec.message());
    }
    const auto &norm = ds.fingerprint.normalization;
    detail::write_file(dir / kFingerprintFile,
                       detail::write_csv(ds.fingerprint.station_ids, ds.fingerprint.records, norm));
    detail::write_file(dir / kTestFile,
                       detail::write_csv(ds.fingerprint.station_ids, ds.test_samples, norm));
    detail::write_file(dir / kSidecarFile, sidecar_json(ds).dump(2) + "\n");
}

[[nodiscard]] inline Dataset load_dataset(const std::filesystem::path &dir) {
    nlohmann::json doc;
    const std::string sidecar_name = std::string(kSidecarFile);
    try {
        doc = nlohmann::json::parse(detail::read_file(dir / kSidecarFile));
    } catch (const nlohmann::json::parse_error &e) {
        // byte offset only; report it as the column of a single logical line
        throw ParseError(sidecar_name + ": " + e.what(), 1, e.byte);
    }

    Dataset ds;
    try {
        const auto &area = doc.at("area");
        ds.area = {area.at("width_m").get<double>(), area.at("height_m").get<double>()};
        auto &norm = ds.fingerprint.normalization;
        const auto &n = doc.at("normalization");
        norm.floor_dbm = n.at("floor_dbm").get<double>();
        norm.sentinel_dbm = n.at("sentinel").get<double>();
        norm.map = prep::amplitude_map_from_string(n.value("map", std::string("floor_shift")));
        ds.fingerprint.frame = locate::coordinate_frame_from_string(
            doc.value("coordinate_frame", std::string("metric")));
        for (const auto &s : doc.at("stations")) {
            ds.stations.push_back({s.at("id").get<std::string>(),
                                   {s.at("x_m").get<double>(), s.at("y_m").get<double>()}});
        }
        if (!doc.at("seed").is_null()) {
            ds.provenance = Provenance{doc.at("seed").get<std::uint64_t>(),
                                       detail::path_loss_from_json(doc.at("path_loss_params"))};
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(sidecar_name + ": " + e.what(), 0, 0);
    }
    ds.fingerprint.normalization.validate();

    const double sentinel = ds.fingerprint.normalization.sentinel_dbm;
    auto fingerprint = detail::parse_csv(detail::read_file(dir / kFingerprintFile),
                                         std::string(kFingerprintFile), sentinel);
    auto test = detail::parse_csv(detail::read_file(dir / kTestFile), std::string(kTestFile),
                                  sentinel);
    if (fingerprint.station_ids != test.station_ids) {
        throw ValidationError("fingerprint.csv and test.csv have different station columns");
    }
    ds.fingerprint.station_ids = std::move(fingerprint.station_ids);
    ds.fingerprint.records = std::move(fingerprint.records);
    ds.test_samples = std::move(test.records);
    ds.validate();
    return ds;
}

inline std::vector<double> parse_rss_list(std::string_view text, double sentinel) {
    std::vector<double> out;
    std::size_t column = 0;
    for (auto field : detail::split_fields(text)) {
        ++column;
        while (!field.empty() && field.front() == ' ') {
            field.remove_prefix(1);
        }
        while (!field.empty() && field.back() == ' ') {
            field.remove_suffix(1);
        }
        double value = sentinel;
        if (!field.empty() && !detail::parse_number(field, value)) {
            throw ValidationError("bad RSS value '" + std::string(field) + "' at position " +
                                  std::to_string(column));
        }
        out.push_back(value);
    }
    return out;
}

} // namespace qsloc::testbed
