#include "betaexp/cli/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "betaexp/cli/app.hpp"
#include "betaexp/errors.hpp"

namespace betaexp::cli {

std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size()) {
        throw std::logic_error("CSV row width does not match header");
    }
    rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& out) const
{
    const auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    line(header_);
    for (const auto& row : rows_) {
        line(row);
    }
}

std::string CsvTable::str() const
{
    std::ostringstream s;
    write(s);
    return s.str();
}

namespace {

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ResourceError("cannot open " + path.string() + " for writing");
    }
    f << content;
}

} // namespace

nlohmann::json make_manifest(const ManifestInfo& info)
{
    return {
        {"tool", "betaexp"},
        {"version", kToolVersion},
        {"command_line", info.command_line},
        {"subcommand", info.subcommand},
        {"parameters", info.parameters},
        {"tolerances", info.tolerances},
        {"seeds", info.seeds},
        {"timestamp", utc_timestamp()},
        {"duration_seconds", info.duration_seconds},
        {"outputs", info.outputs},
    };
}

void write_outputs(const std::filesystem::path& dir, const std::string& subcommand, const CommandOutput& output,
                   ManifestInfo info)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ResourceError("cannot create output directory " + dir.string());
    }
    const std::string manifest_name = subcommand + ".manifest.json";
    info.outputs.clear();
    if (output.table) {
        write_file(dir / (subcommand + ".csv"), output.table->str());
        info.outputs.push_back(subcommand + ".csv");
    }
    nlohmann::json summary = output.summary;
    summary["manifest"] = manifest_name;
    write_file(dir / (subcommand + ".json"), summary.dump(2) + "\n");
    info.outputs.push_back(subcommand + ".json");
    write_file(dir / manifest_name, make_manifest(info).dump(2) + "\n");
}

} // namespace betaexp::cli
