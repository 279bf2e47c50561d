#pragma once

// CSV ingestion and emission.  Floats are written in the shortest form
// that parses back to the identical double.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "censtail/estimators.hpp"
#include "censtail/kselect.hpp"
#include "censtail/montecarlo.hpp"
#include "censtail/survival.hpp"

namespace censtail {

std::string format_double(double value);
/// Strict: the whole field must be a number.  Throws DataError.
double parse_double(std::string_view text);

/// Reads a "z,delta[,id]" CSV (columns in any order, header required).
/// Row order is preserved.  Errors name the offending line.
CensoredSample ingest(std::istream& in, std::string_view source = "<input>");
CensoredSample ingest_file(const std::filesystem::path& file);

/// "n=<n> censored=<count> censored_fraction=<fraction>"
std::string ingest_summary(const CensoredSample& sample);

/// Columns: k,estimate,reason.  Failed k's carry an empty estimate.
void write_path_csv(std::ostream& out, const EstimatePath& path);
EstimatePath read_path_csv(std::istream& in, std::string_view source = "<input>");

/// Columns: k_opt,criterion.
void write_kselect_csv(std::ostream& out, const KSelection& selection);

/// Columns: k,estimator_id,beta,abs_bias,mse,failures.
void write_figure_table(std::ostream& out, const std::vector<FigureRow>& rows);
std::vector<FigureRow> read_figure_table(std::istream& in, std::string_view source = "<input>");

}  // namespace censtail
