#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace betaexp::cli {

/// Real formatted with 17 significant digits ('.' decimal, round-trip safe).
std::string format_real(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    /// Cells are written as given; use format_real for doubles.
    void add_row(std::vector<std::string> cells);
    void write(std::ostream& out) const;
    std::string str() const;

    std::size_t rows() const noexcept { return rows_.size(); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Everything a subcommand produces.
struct CommandOutput {
    std::optional<CsvTable> table;
    nlohmann::json summary = nlohmann::json::object();
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<std::uint64_t> seeds;
};

struct ManifestInfo {
    std::vector<std::string> command_line;
    std::string subcommand;
    nlohmann::json parameters;
    nlohmann::json tolerances;
    std::vector<std::uint64_t> seeds;
    double duration_seconds = 0.0;
    std::vector<std::string> outputs;
};

nlohmann::json make_manifest(const ManifestInfo& info);

/// Writes <cmd>.csv (if any), <cmd>.json and <cmd>.manifest.json into `dir`.
void write_outputs(const std::filesystem::path& dir, const std::string& subcommand, const CommandOutput& output,
                   ManifestInfo info);

} // namespace betaexp::cli
