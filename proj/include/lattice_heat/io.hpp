#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lattice_heat/analysis.hpp"
#include "lattice_heat/lattice_sequence.hpp"
#include "lattice_heat/solver.hpp"

namespace lattice_heat {

/// Shortest decimal text that reads back to the same binary64 value.
[[nodiscard]] std::string format_double(double x);

/// `n,value` header then one row per carried index, LF line endings.
[[nodiscard]] std::string sequence_to_csv(const LatticeSequence& s);

/// Parses the `n,value` format. Rows may come in any order but indices must
/// be distinct; gaps read as zero. Throws std::invalid_argument on bad input.
[[nodiscard]] LatticeSequence sequence_from_csv(std::string_view text);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
[[nodiscard]] LatticeSequence read_sequence_csv(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory, then renames.
void write_text_atomic(const std::filesystem::path& path, std::string_view text);

/// `{"kind":"separable","spatial":"<csv path>","gamma":2.0,"amplitude":1.0}`;
/// a relative spatial path is resolved against base_dir.
[[nodiscard]] ForcingSpec forcing_from_json(std::string_view text, const std::filesystem::path& base_dir);
[[nodiscard]] ForcingSpec read_forcing_json(const std::filesystem::path& path);

/// `out.csv` -> `out.json`.
[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& out);
/// `out.csv` -> `out.svg`.
[[nodiscard]] std::filesystem::path plot_path(const std::filesystem::path& out);

/// `{"t":..., "quad_error":..., "trunc_error":...}` (plus "certified").
[[nodiscard]] std::string snapshot_sidecar(const SolutionSnapshot& s);

/// `t,value` rows of the fitted points.
[[nodiscard]] std::string report_to_csv(const DecayReport& r);
/// `{"label":..., "slope":..., "intercept":..., "max_residual":...}` plus
/// t_range, experimental and dropped points.
[[nodiscard]] std::string report_sidecar(const DecayReport& r);
/// Log-log line plot of the fitted points and the fitted power law.
[[nodiscard]] std::string report_to_svg(const DecayReport& r);

}  // namespace lattice_heat
