#include "windfit/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "windfit/error.hpp"
#include "windfit/estimation.hpp"
#include "windfit/stats.hpp"

namespace windfit::pipeline {

namespace {

using json = nlohmann::ordered_json;

constexpr std::size_t kPdfGridPoints = 400;
constexpr std::array<Season, 4> kSeasons = {Season::Winter, Season::Spring, Season::Summer, Season::Autumn};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json params_json(const DistParams& p) {
    json j;
    j["mu"] = p.mu;
    j["omega"] = p.omega;
    j["delta"] = p.delta;
    if (is_composite(p.family)) {
        j["lambda"] = *p.lambda;
        j["beta"] = *p.beta;
        j["xi"] = *p.xi;
    }
    return j;
}

json describe_json(const stats::DescriptiveStats& d) {
    json j;
    j["n"] = d.n;
    j["max"] = number_or_null(d.max);
    j["mean"] = number_or_null(d.mean);
    j["sd"] = number_or_null(d.sd);
    j["se_mean"] = number_or_null(d.se_mean);
    j["skewness"] = number_or_null(d.skewness);
    j["kurtosis"] = number_or_null(d.kurtosis);
    j["q1"] = number_or_null(d.q1);
    j["q2"] = number_or_null(d.q2);
    j["q3"] = number_or_null(d.q3);
    return j;
}

void write_histogram(const std::filesystem::path& file, std::span<const double> x, std::size_t bins) {
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    double lo = *mn;
    double width = (*mx - *mn) / static_cast<double>(bins);
    if (!(width > 0.0)) {
        lo -= 0.5;
        width = 1.0 / static_cast<double>(bins);
    }
    std::vector<std::size_t> counts(bins, 0);
    for (double v : x) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        counts[std::min(b, bins - 1)]++;
    }
    std::ofstream os(file);
    if (!os) throw Error("cannot write " + file.string());
    os << "bin_left,bin_right,density\n";
    const double n = static_cast<double>(x.size());
    for (std::size_t b = 0; b < bins; ++b) {
        const double left = lo + width * static_cast<double>(b);
        const double right = b + 1 == bins ? lo + width * static_cast<double>(bins) : left + width;
        os << format_double(left) << ',' << format_double(right) << ','
           << format_double(static_cast<double>(counts[b]) / (n * (right - left))) << '\n';
    }
}

void write_pdf_curve(const std::filesystem::path& file, std::span<const double> x, const DistParams& p) {
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    std::ofstream os(file);
    if (!os) throw Error("cannot write " + file.string());
    os << "x,density\n";
    for (std::size_t i = 0; i < kPdfGridPoints; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(kPdfGridPoints - 1);
        const double xv = i + 1 == kPdfGridPoints ? *mx : *mn + t * (*mx - *mn);
        os << format_double(xv) << ',' << format_double(pdf(p, xv)) << '\n';
    }
}

struct ErrorLog {
    json entries = json::array();
    bool fit_failed = false;

    void add(std::string_view season, std::optional<FamilyId> family, std::string_view stage,
             const std::string& message) {
        json e;
        e["season"] = season;
        e["family"] = family ? json(family_name(*family)) : json(nullptr);
        e["stage"] = stage;
        e["message"] = message;
        entries.push_back(std::move(e));
        if (stage == "fit") fit_failed = true;
    }
};

}  // namespace

std::string_view season_name(Season s) noexcept {
    switch (s) {
        case Season::Winter: return "winter";
        case Season::Spring: return "spring";
        case Season::Summer: return "summer";
        case Season::Autumn: return "autumn";
    }
    return "?";
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    text = trim(text);
    // YYYY-MM-DD
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    Timestamp ts;
    if (!parse_number(text.substr(0, 4), ts.year) || !parse_number(text.substr(5, 2), ts.month) ||
        !parse_number(text.substr(8, 2), ts.day))
        return std::nullopt;
    if (ts.month < 1 || ts.month > 12 || ts.day < 1 || ts.day > 31) return std::nullopt;
    std::string_view rest = text.substr(10);
    if (rest.empty()) return ts;
    if (rest.front() != 'T' && rest.front() != ' ') return std::nullopt;
    rest.remove_prefix(1);
    // Strip a zone designator.
    if (!rest.empty() && rest.back() == 'Z') rest.remove_suffix(1);
    if (auto pos = rest.find_first_of("+-"); pos != std::string_view::npos) rest = rest.substr(0, pos);
    if (rest.size() < 5 || rest[2] != ':') return std::nullopt;
    if (!parse_number(rest.substr(0, 2), ts.hour) || !parse_number(rest.substr(3, 2), ts.minute)) return std::nullopt;
    if (rest.size() > 5) {
        if (rest[5] != ':' || !parse_number(rest.substr(6), ts.second)) return std::nullopt;
    }
    if (ts.hour > 24 || ts.minute > 59 || ts.second < 0.0 || ts.second >= 61.0) return std::nullopt;
    return ts;
}

SeasonSpec SeasonSpec::calendar_quarters() {
    using enum Season;
    return {{Winter, Winter, Winter, Spring, Spring, Spring, Summer, Summer, Summer, Autumn, Autumn, Autumn}};
}

SeasonSpec SeasonSpec::meteorological() {
    using enum Season;
    return {{Winter, Winter, Spring, Spring, Spring, Summer, Summer, Summer, Autumn, Autumn, Autumn, Winter}};
}

std::string_view policy_name(MissingPolicy p) noexcept {
    return p == MissingPolicy::CarryForward ? "carry-forward" : "drop";
}

MissingPolicy parse_policy(std::string_view name) {
    if (name == "carry-forward") return MissingPolicy::CarryForward;
    if (name == "drop") return MissingPolicy::Drop;
    throw DomainError("unknown missing-value policy '" + std::string(name) + "'");
}

std::vector<Record> parse_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty input: expected header 'timestamp,speed_ms'", 1);
    ++line_no;
    std::string_view header = line;
    if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
    header = trim(header);
    if (header != "timestamp,speed_ms") throw ParseError("expected header 'timestamp,speed_ms'", line_no);

    std::vector<Record> records;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
            throw ParseError("expected two comma-separated fields", line_no);
        Record rec;
        rec.line = line_no;
        const std::string_view ts = trim(row.substr(0, comma));
        if (!ts.empty()) {
            rec.timestamp = parse_timestamp(ts);
            if (!rec.timestamp) throw ParseError("malformed timestamp '" + std::string(ts) + "'", line_no);
        }
        const std::string_view sp = trim(row.substr(comma + 1));
        if (!sp.empty() && sp != "NA") {
            double v = 0.0;
            if (!parse_number(sp, v) || !std::isfinite(v))
                throw ParseError("malformed speed '" + std::string(sp) + "'", line_no);
            if (v < 0.0) throw NegativeSpeed("negative wind speed at line " + std::to_string(line_no), line_no);
            rec.speed = v;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

IngestResult apply_missing_policy(std::vector<Record> raw, MissingPolicy policy) {
    IngestResult out;
    out.rows = raw.size();
    std::optional<double> last;
    for (auto& rec : raw) {
        if (rec.speed) {
            last = rec.speed;
            out.records.push_back(std::move(rec));
            continue;
        }
        ++out.missing;
        if (policy == MissingPolicy::CarryForward && last) {
            rec.speed = last;
            ++out.replaced;
            out.records.push_back(std::move(rec));
        } else {
            ++out.dropped;
        }
    }
    return out;
}

IngestResult ingest(std::istream& in, MissingPolicy policy) { return apply_missing_policy(parse_csv(in), policy); }

IngestResult ingest(const std::filesystem::path& path, MissingPolicy policy) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return ingest(in, policy);
}

std::vector<SeasonSample> season_split(const std::vector<Record>& records, const SeasonSpec& spec) {
    std::vector<SeasonSample> out;
    out.push_back({"annual", {}});
    for (Season s : kSeasons) out.push_back({std::string(season_name(s)), {}});
    for (const auto& rec : records) {
        if (!rec.timestamp) throw MissingTimestamp("record at line " + std::to_string(rec.line) + " has no timestamp");
        const double v = rec.speed.value_or(std::nan(""));
        out[0].values.push_back(v);
        out[1 + static_cast<std::size_t>(spec.season_of(rec.timestamp->month))].values.push_back(v);
    }
    return out;
}

void RunConfig::validate() const {
    if (families.empty()) throw DomainError("no families requested");
    if (bins < 5) throw DomainError("histogram needs at least 5 bins");
    gof.validate();
    power.validate();
    simplex.validate();
}

RunOutput run_pipeline(const RunConfig& cfg) {
    cfg.validate();
    return run_pipeline(cfg, ingest(cfg.input, cfg.missing));
}

RunOutput run_pipeline(const RunConfig& cfg, const IngestResult& data) {
    cfg.validate();
    ErrorLog errors;
    json warnings = json::array();

    // Reporting order follows the family enumeration, not the request order.
    std::vector<FamilyId> families = cfg.families;
    std::sort(families.begin(), families.end());
    families.erase(std::unique(families.begin(), families.end()), families.end());

    std::vector<SeasonSample> samples;
    const bool timestamped = std::all_of(data.records.begin(), data.records.end(),
                                         [](const Record& r) { return r.timestamp.has_value(); });
    if (timestamped) {
        samples = season_split(data.records, cfg.seasons);
    } else {
        warnings.push_back("records without timestamps: seasonal split skipped, annual only");
        SeasonSample annual{"annual", {}};
        for (const auto& r : data.records) annual.values.push_back(*r.speed);
        samples.push_back(std::move(annual));
    }

    json meta;
    meta["tool"] = "windfit";
    meta["version"] = "0.1.0";
    meta["input"] = cfg.input.string();
    json fam = json::array();
    for (FamilyId f : families) fam.push_back(family_name(f));
    meta["families"] = fam;
    meta["plotting_a"] = cfg.gof.plotting_a;
    meta["r2_standard"] = cfg.gof.r2_standard;
    meta["rho"] = cfg.power.rho;
    meta["area"] = cfg.power.area;
    meta["seed"] = cfg.seed;
    meta["starts"] = cfg.n_starts;
    meta["missing_policy"] = policy_name(cfg.missing);
    json months = json::object();
    static constexpr std::array<const char*, 12> kMonths = {"jan", "feb", "mar", "apr", "may", "jun",
                                                            "jul", "aug", "sep", "oct", "nov", "dec"};
    for (int m = 1; m <= 12; ++m) months[kMonths[static_cast<std::size_t>(m - 1)]] = season_name(cfg.seasons.season_of(m));
    meta["season_mapping"] = months;
    meta["rows"] = data.rows;
    meta["missing"] = data.missing;
    meta["replaced"] = data.replaced;
    meta["dropped"] = data.dropped;

    json descriptive = json::object();
    json parameters = json::object();
    json gof_out = json::object();
    json power_out = json::object();

    if (cfg.plot_dir) std::filesystem::create_directories(*cfg.plot_dir);

    for (const auto& season : samples) {
        const std::string& label = season.label;
        const std::span<const double> x = season.values;
        json& d = descriptive[label];
        json& par = parameters[label] = json::object();
        json& g = gof_out[label] = json::object();
        json& pw = power_out[label] = json::object();

        if (x.empty()) {
            d = json{{"n", 0}};
            warnings.push_back("season '" + label + "' is empty: reports skipped");
            continue;
        }
        try {
            d = describe_json(stats::describe(x));
        } catch (const Error& e) {
            d = json{{"n", x.size()}};
            errors.add(label, std::nullopt, "descriptive", e.what());
        }

        std::vector<std::pair<FamilyId, DistParams>> fitted;
        for (FamilyId f : families) {
            try {
                const FitResult fit = fit_mle(f, x, cfg.simplex, cfg.n_starts, cfg.seed);
                json j = params_json(fit.params);
                j["loglik"] = fit.loglik;
                j["iterations"] = fit.iterations;
                j["converged"] = fit.converged;
                j["starts"] = fit.n_restarts_used;
                par[std::string(family_name(f))] = std::move(j);
                fitted.emplace_back(f, fit.params);
            } catch (const Error& e) {
                errors.add(label, f, "fit", e.what());
            }
        }

        std::vector<std::pair<FamilyId, gof::GofReport>> reports;
        for (const auto& [f, p] : fitted) {
            try {
                reports.emplace_back(f, gof::evaluate(x, p, cfg.gof));
            } catch (const Error& e) {
                errors.add(label, f, "gof", e.what());
            }
        }
        for (const auto& [f, r] : gof::rank_models(reports)) {
            g[std::string(family_name(f))] = json{{"ks", r.ks},
                                                  {"r2", number_or_null(r.r2)},
                                                  {"rmse", r.rmse},
                                                  {"chi2", number_or_null(r.chi2)},
                                                  {"rank", *r.rank}};
        }

        std::optional<double> ref;
        try {
            ref = power::p_ref(x, cfg.power);
            pw["p_ref"] = *ref;
        } catch (const Error& e) {
            pw["p_ref"] = nullptr;
            errors.add(label, std::nullopt, "power", e.what());
        }
        json models = json::object();
        for (const auto& [f, p] : fitted) {
            try {
                const double pm = power::p_model(p, cfg.power);
                json m{{"p_model", pm}, {"pde", nullptr}};
                if (ref) m["pde"] = power::pde(*ref, pm);
                models[std::string(family_name(f))] = std::move(m);
            } catch (const Error& e) {
                models[std::string(family_name(f))] = json{{"p_model", nullptr}, {"pde", nullptr}};
                errors.add(label, f, "power", e.what());
            }
        }
        pw["models"] = std::move(models);

        if (cfg.plot_dir) {
            try {
                write_histogram(*cfg.plot_dir / ("hist_" + label + ".csv"), x, cfg.bins);
                for (const auto& [f, p] : fitted)
                    write_pdf_curve(*cfg.plot_dir / ("pdf_" + label + "_" + std::string(family_slug(f)) + ".csv"), x, p);
            } catch (const Error& e) {
                errors.add(label, std::nullopt, "plot", e.what());
            }
        }
    }

    meta["warnings"] = std::move(warnings);
    RunOutput out;
    out.report["meta"] = std::move(meta);
    out.report["descriptive"] = std::move(descriptive);
    out.report["parameters"] = std::move(parameters);
    out.report["gof"] = std::move(gof_out);
    out.report["power"] = std::move(power_out);
    out.report["errors"] = std::move(errors.entries);
    out.exit_code = errors.fit_failed ? 2 : 0;
    return out;
}

std::string render_json(const RunOutput& out) { return out.report.dump(2) + "\n"; }

std::string render_text(const RunOutput& out) {
    const json& r = out.report;
    std::ostringstream os;
    os << std::fixed;
    auto num = [](const json& v, int prec) {
        if (!v.is_number()) return std::string("-");
        const double x = v.get<double>();
        std::ostringstream s;
        if (x != 0.0 && (std::abs(x) >= 1e6 || std::abs(x) < 1e-4)) {
            s << std::scientific << std::setprecision(2) << x;
        } else {
            s << std::fixed << std::setprecision(prec) << x;
        }
        return s.str();
    };

    os << "windfit " << r["meta"]["version"].get<std::string>() << "  input: " << r["meta"]["input"].get<std::string>()
       << "\n\n";
    os << "Descriptive statistics\n";
    os << std::left << std::setw(8) << "season" << std::right << std::setw(7) << "n" << std::setw(9) << "max"
       << std::setw(9) << "mean" << std::setw(9) << "sd" << std::setw(9) << "se" << std::setw(9) << "skew"
       << std::setw(9) << "kurt" << std::setw(9) << "q1" << std::setw(9) << "q2" << std::setw(9) << "q3" << "\n";
    for (const auto& [season, d] : r["descriptive"].items()) {
        os << std::left << std::setw(8) << season << std::right << std::setw(7) << d["n"].get<std::size_t>();
        for (const char* k : {"max", "mean", "sd", "se_mean", "skewness", "kurtosis", "q1", "q2", "q3"})
            os << std::setw(9) << (d.contains(k) ? num(d[k], 2) : "-");
        os << "\n";
    }

    os << "\nParameters\n";
    for (const auto& [season, fams] : r["parameters"].items()) {
        for (const auto& [fam, p] : fams.items()) {
            os << std::left << std::setw(8) << season << std::setw(9) << fam << std::right;
            for (const char* k : {"mu", "omega", "delta", "lambda", "beta", "xi"})
                os << std::setw(10) << (p.contains(k) ? num(p[k], 4) : "-");
            os << "  loglik " << num(p["loglik"], 3) << "\n";
        }
    }

    os << "\nGoodness of fit\n";
    os << std::left << std::setw(8) << "season" << std::setw(9) << "model" << std::right << std::setw(9) << "KS"
       << std::setw(9) << "R2" << std::setw(9) << "RMSE" << std::setw(11) << "chi2" << std::setw(6) << "rank" << "\n";
    for (const auto& [season, fams] : r["gof"].items()) {
        for (const auto& [fam, g] : fams.items()) {
            os << std::left << std::setw(8) << season << std::setw(9) << fam << std::right << std::setw(9)
               << num(g["ks"], 4) << std::setw(9) << num(g["r2"], 4) << std::setw(9) << num(g["rmse"], 4)
               << std::setw(11) << num(g["chi2"], 4) << std::setw(6) << g["rank"].get<std::size_t>() << "\n";
        }
    }

    os << "\nWind power density (rho*A/2 scaled)\n";
    for (const auto& [season, pw] : r["power"].items()) {
        if (!pw.contains("p_ref")) continue;
        os << std::left << std::setw(8) << season << "P_ref " << num(pw["p_ref"], 2) << "\n";
        for (const auto& [fam, m] : pw["models"].items())
            os << std::left << std::setw(8) << "" << std::setw(9) << fam << "P_D " << std::right << std::setw(10)
               << num(m["p_model"], 2) << "  PDE% " << std::setw(8) << num(m["pde"], 2) << "\n";
    }

    if (!r["errors"].empty()) {
        os << "\nErrors\n";
        for (const auto& e : r["errors"]) {
            os << "  [" << e["stage"].get<std::string>() << "] " << e["season"].get<std::string>();
            if (e["family"].is_string()) os << " " << e["family"].get<std::string>();
            os << ": " << e["message"].get<std::string>() << "\n";
        }
    }
    for (const auto& w : r["meta"]["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
    return os.str();
}

}  // namespace windfit::pipeline
