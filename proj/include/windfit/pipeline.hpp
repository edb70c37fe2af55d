#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "windfit/distributions.hpp"
#include "windfit/gof.hpp"
#include "windfit/nelder_mead.hpp"
#include "windfit/power.hpp"

namespace windfit::pipeline {

enum class Season { Winter, Spring, Summer, Autumn };

std::string_view season_name(Season s) noexcept;  // "winter", ...

struct Timestamp {
    int year = 0;
    int month = 1;  // 1..12
    int day = 1;
    int hour = 0;
    int minute = 0;
    double second = 0.0;
};

/// ISO-8601 date or date-time ("2018-01-15", "2018-01-15T03:00:00Z",
/// "2018-01-15 03:00"). Returns nullopt on malformed input.
std::optional<Timestamp> parse_timestamp(std::string_view text);

struct Record {
    std::optional<Timestamp> timestamp;
    std::optional<double> speed;  // nullopt marks a missing observation
    std::size_t line = 0;         // 1-based line in the source file
};

struct SeasonSpec {
    std::array<Season, 12> by_month;  // index 0 = January

    /// Jan-Mar winter, Apr-Jun spring, Jul-Sep summer, Oct-Dec autumn.
    static SeasonSpec calendar_quarters();
    /// Dec-Feb winter, Mar-May spring, Jun-Aug summer, Sep-Nov autumn.
    static SeasonSpec meteorological();

    Season season_of(int month) const { return by_month.at(static_cast<std::size_t>(month - 1)); }
};

enum class MissingPolicy { CarryForward, Drop };

std::string_view policy_name(MissingPolicy p) noexcept;
MissingPolicy parse_policy(std::string_view name);  // throws DomainError

struct IngestResult {
    std::vector<Record> records;  // every record has a speed
    std::size_t rows = 0;         // data rows read
    std::size_t missing = 0;      // rows with a missing speed
    std::size_t replaced = 0;     // missing speeds filled by carry-forward
    std::size_t dropped = 0;      // missing rows removed (leading ones under carry-forward)
};

/// Reads the `timestamp,speed_ms` CSV. Throws ParseError with the offending
/// line, or NegativeSpeed.
std::vector<Record> parse_csv(std::istream& in);

/// Carry-forward replaces a missing speed by the last known one and drops
/// leading missings; drop removes every missing row.
IngestResult apply_missing_policy(std::vector<Record> raw, MissingPolicy policy);

IngestResult ingest(std::istream& in, MissingPolicy policy);
IngestResult ingest(const std::filesystem::path& path, MissingPolicy policy);

struct SeasonSample {
    std::string label;  // "annual", "winter", "spring", "summer", "autumn"
    std::vector<double> values;
};

/// Annual first, then the four seasons in calendar order. Throws
/// MissingTimestamp if any record lacks a timestamp.
std::vector<SeasonSample> season_split(const std::vector<Record>& records, const SeasonSpec& spec);

enum class OutputFormat { Text, Json };

struct RunConfig {
    std::filesystem::path input;
    std::vector<FamilyId> families{kAllFamilies.begin(), kAllFamilies.end()};
    gof::GofConfig gof;
    power::PowerConfig power;
    SimplexConfig simplex;
    std::uint64_t seed = 42;
    std::size_t n_starts = 0;  // 0 = per-family default
    SeasonSpec seasons = SeasonSpec::calendar_quarters();
    MissingPolicy missing = MissingPolicy::CarryForward;
    OutputFormat format = OutputFormat::Json;
    std::optional<std::filesystem::path> plot_dir;
    std::size_t bins = 30;

    void validate() const;  // throws DomainError
};

struct RunOutput {
    nlohmann::ordered_json report;
    int exit_code = 0;  // 0 success, 2 when some family failed to fit
};

/// Runs the whole analysis on already-ingested data.
RunOutput run_pipeline(const RunConfig& cfg, const IngestResult& data);
/// Ingests cfg.input, then runs.
RunOutput run_pipeline(const RunConfig& cfg);

std::string render_json(const RunOutput& out);
std::string render_text(const RunOutput& out);

}  // namespace windfit::pipeline
