// windfit command-line front end.
#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "windfit/error.hpp"
#include "windfit/pipeline.hpp"

namespace {

std::vector<windfit::FamilyId> parse_families(const std::string& list) {
    std::vector<windfit::FamilyId> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(windfit::parse_family(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace windfit::pipeline;

    CLI::App app{"Fit wind-speed distributions and report goodness of fit and power density."};
    app.require_subcommand(1);
    CLI::App* fit = app.add_subcommand("fit", "Run the full analysis on a timestamp,speed_ms CSV");

    RunConfig cfg;
    std::string input;
    std::string families = "we3,ll3,ln3,gev,we3-ll3,ll3-we3";
    std::string missing = "carry-forward";
    std::string format = "json";
    std::string seasons = "quarters";
    std::string plot_dir;

    fit->add_option("--input", input, "Input CSV")->required();
    fit->add_option("--families", families, "Comma-separated family list")->capture_default_str();
    fit->add_option("--plotting-a", cfg.gof.plotting_a, "Plotting position constant a")->capture_default_str();
    fit->add_flag("--r2-standard", cfg.gof.r2_standard, "Use the empirical mean in R^2");
    fit->add_option("--rho", cfg.power.rho, "Air density")->capture_default_str();
    fit->add_option("--area", cfg.power.area, "Swept area")->capture_default_str();
    fit->add_option("--seed", cfg.seed, "Multi-start seed")->capture_default_str();
    fit->add_option("--starts", cfg.n_starts, "Starting points per fit (0 = family default)")->capture_default_str();
    fit->add_option("--missing", missing, "carry-forward | drop")->capture_default_str();
    fit->add_option("--seasons", seasons, "quarters | meteorological")->capture_default_str();
    fit->add_option("--format", format, "json | text")->capture_default_str();
    fit->add_option("--plot-dir", plot_dir, "Directory for histogram and pdf CSVs");
    fit->add_option("--bins", cfg.bins, "Histogram bins")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 reports --help as success.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        cfg.input = input;
        cfg.families = parse_families(families);
        cfg.missing = parse_policy(missing);
        if (seasons == "quarters") {
            cfg.seasons = SeasonSpec::calendar_quarters();
        } else if (seasons == "meteorological") {
            cfg.seasons = SeasonSpec::meteorological();
        } else {
            throw windfit::DomainError("unknown season mapping '" + seasons + "'");
        }
        if (format == "json") {
            cfg.format = OutputFormat::Json;
        } else if (format == "text") {
            cfg.format = OutputFormat::Text;
        } else {
            throw windfit::DomainError("unknown output format '" + format + "'");
        }
        if (!plot_dir.empty()) cfg.plot_dir = plot_dir;
        cfg.validate();
    } catch (const windfit::Error& e) {
        std::cerr << "windfit: " << e.what() << "\n";
        return 1;
    }

    try {
        const RunOutput out = run_pipeline(cfg);
        std::cout << (cfg.format == OutputFormat::Json ? render_json(out) : render_text(out));
        return out.exit_code;
    } catch (const windfit::ParseError& e) {
        std::cerr << "windfit: line " << e.line() << ": " << e.what() << "\n";
        return 1;
    } catch (const windfit::Error& e) {
        std::cerr << "windfit: " << e.what() << "\n";
        return 1;
    }
}
