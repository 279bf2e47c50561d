#include "censtail/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "censtail/error.hpp"

namespace censtail {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw DataError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::string strip_quotes(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

// Header-indexed line reader shared by every CSV format here.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string_view source) : in_(in), source_(source) {
        std::string header;
        while (std::getline(in_, header)) {
            ++line_no_;
            if (!trim(header).empty()) break;
        }
        if (trim(header).empty()) throw DataError(std::string(source_) + ": empty file, header expected");
        for (auto f : split(header)) columns_.push_back(strip_quotes(f));
    }

    std::optional<std::size_t> column(std::string_view name) const {
        const auto it = std::find(columns_.begin(), columns_.end(), name);
        if (it == columns_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - columns_.begin());
    }

    std::size_t require(std::string_view name) const {
        const auto c = column(name);
        if (!c) throw DataError(std::string(source_) + ": missing column '" + std::string(name) + "'");
        return *c;
    }

    bool next() {
        while (std::getline(in_, current_)) {
            ++line_no_;
            if (trim(current_).empty()) continue;
            fields_ = split(current_);
            if (fields_.size() != columns_.size()) {
                fail("expected " + std::to_string(columns_.size()) + " fields, found " +
                     std::to_string(fields_.size()));
            }
            return true;
        }
        return false;
    }

    std::string_view field(std::size_t c) const { return fields_[c]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw DataError(std::string(source_) + ": line " + std::to_string(line_no_) + ": " + what);
    }

    double number(std::size_t c) const {
        try {
            return parse_double(fields_[c]);
        } catch (const DataError& e) {
            fail(e.what());
        }
    }

    std::size_t count(std::size_t c) const {
        std::size_t v = 0;
        const auto f = fields_[c];
        const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
        if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size()) {
            fail("not a nonnegative integer: '" + std::string(f) + "'");
        }
        return v;
    }

private:
    std::istream& in_;
    std::string_view source_;
    std::vector<std::string> columns_;
    std::string current_;
    std::vector<std::string_view> fields_;
    std::size_t line_no_ = 0;
};

}  // namespace

CensoredSample ingest(std::istream& in, std::string_view source) {
    CsvReader reader(in, source);
    const std::size_t zc = reader.require("z");
    const std::size_t dc = reader.require("delta");
    CensoredSample sample;
    while (reader.next()) {
        const double z = reader.number(zc);
        if (!std::isfinite(z) || z <= 0.0) reader.fail("z must be finite and > 0");
        const auto d = reader.field(dc);
        if (d != "0" && d != "1") reader.fail("delta must be 0 or 1, found '" + std::string(d) + "'");
        sample.z.push_back(z);
        sample.delta.push_back(d == "1" ? 1 : 0);
    }
    if (sample.size() == 0) throw DataError(std::string(source) + ": no observations");
    return sample;
}

CensoredSample ingest_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open '" + file.string() + "'");
    return ingest(in, file.string());
}

std::string ingest_summary(const CensoredSample& sample) {
    const auto censored = sample.censored_count();
    const double fraction = sample.size() ? static_cast<double>(censored) / static_cast<double>(sample.size()) : 0.0;
    return "n=" + std::to_string(sample.size()) + " censored=" + std::to_string(censored) +
           " censored_fraction=" + format_double(fraction);
}

void write_path_csv(std::ostream& out, const EstimatePath& path) {
    out << "k,estimate,reason\n";
    std::size_t s = 0;
    std::size_t f = 0;
    while (s < path.k_values.size() || f < path.failures.size()) {
        const bool take_success =
            f == path.failures.size() || (s < path.k_values.size() && path.k_values[s] < path.failures[f].k);
        if (take_success) {
            out << path.k_values[s] << ',' << format_double(path.estimates[s]) << ",ok\n";
            ++s;
        } else {
            out << path.failures[f].k << ",," << to_string(path.failures[f].reason) << '\n';
            ++f;
        }
    }
}

namespace {

Reason parse_reason(std::string_view text) {
    for (auto r : {Reason::Ok, Reason::AllCensoredTail, Reason::Degenerate, Reason::OutOfRange, Reason::NonFinite}) {
        if (to_string(r) == text) return r;
    }
    throw DataError("unknown reason code '" + std::string(text) + "'");
}

}  // namespace

EstimatePath read_path_csv(std::istream& in, std::string_view source) {
    CsvReader reader(in, source);
    const std::size_t kc = reader.require("k");
    const std::size_t ec = reader.require("estimate");
    const auto rc = reader.column("reason");
    EstimatePath path;
    std::size_t last_k = 0;
    while (reader.next()) {
        const std::size_t k = reader.count(kc);
        if (k <= last_k) reader.fail("k must be strictly increasing");
        last_k = k;
        Reason reason = Reason::Ok;
        if (rc) {
            try {
                reason = parse_reason(reader.field(*rc));
            } catch (const DataError& e) {
                reader.fail(e.what());
            }
        }
        if (reason == Reason::Ok && reader.field(ec).empty()) reason = Reason::NonFinite;
        if (reason == Reason::Ok) {
            const double v = reader.number(ec);
            if (!std::isfinite(v)) {
                path.failures.push_back({k, Reason::NonFinite});
                continue;
            }
            path.k_values.push_back(k);
            path.estimates.push_back(v);
        } else {
            path.failures.push_back({k, reason});
        }
    }
    return path;
}

void write_kselect_csv(std::ostream& out, const KSelection& selection) {
    out << "k_opt,criterion\n" << selection.k_opt << ',' << format_double(selection.criterion) << '\n';
}

void write_figure_table(std::ostream& out, const std::vector<FigureRow>& rows) {
    out << "k,estimator_id,beta,abs_bias,mse,failures\n";
    for (const auto& r : rows) {
        out << r.k << ',' << r.estimator_id << ',' << (r.beta ? format_double(*r.beta) : std::string()) << ','
            << format_double(r.abs_bias) << ',' << format_double(r.mse) << ',' << r.failures << '\n';
    }
}

std::vector<FigureRow> read_figure_table(std::istream& in, std::string_view source) {
    CsvReader reader(in, source);
    const std::size_t kc = reader.require("k");
    const std::size_t ic = reader.require("estimator_id");
    const std::size_t bc = reader.require("beta");
    const std::size_t ac = reader.require("abs_bias");
    const std::size_t mc = reader.require("mse");
    const std::size_t fc = reader.require("failures");
    std::vector<FigureRow> rows;
    while (reader.next()) {
        FigureRow r;
        r.k = reader.count(kc);
        r.estimator_id = std::string(reader.field(ic));
        if (!reader.field(bc).empty()) r.beta = reader.number(bc);
        r.abs_bias = reader.number(ac);
        r.mse = reader.number(mc);
        r.failures = reader.count(fc);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace censtail
