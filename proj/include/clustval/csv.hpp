#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "clustval/core.hpp"
#include "clustval/errors.hpp"
#include "clustval/curves.hpp"

namespace clustval {

/// Shortest round-trip decimal form of a double.
inline std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Score formatting for result files.
inline std::string format_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    for (;;) {
        std::size_t comma = line.find(',', begin);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(begin)));
            break;
        }
        out.push_back(trim(line.substr(begin, comma - begin)));
        begin = comma + 1;
    }
    return out;
}

inline std::string at(const std::string& source, std::size_t line_no) {
    return source + ":" + std::to_string(line_no) + ": ";
}

inline double parse_number(const std::string& token, const std::string& source,
                           std::size_t line_no, const std::string& column) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw data_error(at(source, line_no) + "cannot parse '" + token +
                         "' as a number in column '" + column + "'");
    }
    return value;
}

inline long long parse_integer(const std::string& token, const std::string& source,
                               std::size_t line_no, const std::string& column) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw data_error(at(source, line_no) + "cannot parse '" + token +
                         "' as an integer in column '" + column + "'");
    }
    return value;
}

inline bool read_line(std::istream& in, std::string& line, std::size_t& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (!trim(line).empty()) return true;
    }
    return false;
}

}  // namespace detail

/// Reads a dataset from CSV: header row, numeric feature columns, and an
/// optional integer `label` column used as ground truth. Diagnostics name
/// the source and 1-based line.
inline Dataset load_dataset_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::read_line(in, line, line_no)) {
        throw data_error(source + ": empty file, expected a header row");
    }
    auto header = detail::split_csv(line);
    std::size_t label_col = header.size();
    std::vector<std::size_t> feature_cols;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "label") {
            if (label_col != header.size()) {
                throw data_error(detail::at(source, line_no) + "duplicate 'label' column");
            }
            label_col = c;
        } else {
            feature_cols.push_back(c);
            names.push_back(header[c]);
        }
    }
    if (feature_cols.empty()) {
        throw data_error(detail::at(source, line_no) + "no feature columns in header");
    }

    std::vector<double> features;
    std::vector<int> labels;
    std::size_t n = 0;
    while (detail::read_line(in, line, line_no)) {
        auto fields = detail::split_csv(line);
        if (fields.size() != header.size()) {
            throw data_error(detail::at(source, line_no) + "expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        for (std::size_t t = 0; t < feature_cols.size(); ++t) {
            features.push_back(
                detail::parse_number(fields[feature_cols[t]], source, line_no, names[t]));
        }
        if (label_col != header.size()) {
            long long raw = detail::parse_integer(fields[label_col], source, line_no, "label");
            labels.push_back(static_cast<int>(raw));
        }
        ++n;
    }
    if (n < 3) {
        throw data_error(source + ": dataset needs at least 3 rows (got " + std::to_string(n) + ")");
    }

    std::optional<Partition> truth;
    if (!labels.empty()) {
        try {
            truth = Partition::from_labels(labels);
        } catch (const data_error& e) {
            throw data_error(source + ": ground-truth label column invalid: " + e.what());
        }
    }
    return Dataset(std::move(features), n, feature_cols.size(), {}, std::move(truth));
}

inline void save_dataset_csv(std::ostream& out, const Dataset& data,
                             const std::vector<std::string>& feature_names = {}) {
    std::size_t m = data.dim();
    for (std::size_t t = 0; t < m; ++t) {
        if (t) out << ',';
        if (t < feature_names.size()) out << feature_names[t];
        else out << 'f' << t;
    }
    if (data.ground_truth()) out << ",label";
    out << '\n';
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto row = data.row(i);
        for (std::size_t t = 0; t < m; ++t) {
            if (t) out << ',';
            out << format_full(row[t]);
        }
        if (data.ground_truth()) out << ',' << data.ground_truth()->label(i);
        out << '\n';
    }
}

/// Reads a partition file: header `label`, then one integer per object.
inline Partition load_partition_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    if (!detail::read_line(in, line, line_no)) {
        throw data_error(source + ": empty file, expected a 'label' header");
    }
    auto header = detail::split_csv(line);
    if (header.size() != 1 || header[0] != "label") {
        throw data_error(detail::at(source, line_no) +
                         "partition files have a single 'label' column");
    }
    std::vector<int> labels;
    while (detail::read_line(in, line, line_no)) {
        auto fields = detail::split_csv(line);
        if (fields.size() != 1) {
            throw data_error(detail::at(source, line_no) + "expected a single field");
        }
        labels.push_back(
            static_cast<int>(detail::parse_integer(fields[0], source, line_no, "label")));
    }
    try {
        return Partition::from_labels(labels);
    } catch (const data_error& e) {
        throw data_error(source + ": invalid partition: " + e.what());
    }
}

inline void save_partition_csv(std::ostream& out, const Partition& p) {
    out << "label\n";
    for (int l : p.labels()) out << l << '\n';
}

/// Curve dump: one row per point, anchors with an empty threshold cell.
inline void write_curve_csv(std::ostream& out, const Curve& curve) {
    out << "threshold,tp,fp,fn,tn,x,y\n";
    for (const CurvePoint& pt : curve.points) {
        if (pt.threshold) out << format_score(*pt.threshold);
        out << ',' << pt.counts.tp << ',' << pt.counts.fp << ',' << pt.counts.fn << ','
            << pt.counts.tn << ',' << format_score(pt.x) << ',' << format_score(pt.y) << '\n';
    }
}

}  // namespace clustval
