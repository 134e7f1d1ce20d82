// crowdgrade: score peer-review comments, mine aspect candidates, build
// validation reports and serve results to the instructor dashboard.

#include "crowdgrade/course.hpp"
#include "crowdgrade/errors.hpp"
#include "crowdgrade/service.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    using namespace crowdgrade;

    CLI::App app{"Peer-review sentiment grading"};
    app.require_subcommand(1);

    std::string config;
    std::string scheme = "both";
    std::optional<std::size_t> window;
    std::optional<int> min_mentions;
    std::optional<double> min_abs;
    std::string bind = "127.0.0.1:8080";
    std::string output_dir;

    auto* score = app.add_subcommand("score", "Score comments and aggregate per work");
    score->add_option("--config", config, "Course config file")->required()->check(CLI::ExistingFile);
    score->add_option("--output-dir", output_dir, "Override the configured output directory");
    score->add_option("--scheme", scheme, "simple, complex or both")
        ->check(CLI::IsMember({"simple", "complex", "both"}));
    score->add_option("--window", window, "Qualifier window in tokens")->check(CLI::PositiveNumber);

    auto* asp = app.add_subcommand("aspects", "Propose aspect candidates for the review form");
    asp->add_option("--config", config, "Course config file")->required()->check(CLI::ExistingFile);
    asp->add_option("--output-dir", output_dir, "Override the configured output directory");
    asp->add_option("--window", window, "Aspect window in tokens")->check(CLI::PositiveNumber);
    asp->add_option("--min-mentions", min_mentions, "Minimum mentions per noun")->check(CLI::PositiveNumber);
    asp->add_option("--min-abs-sentiment", min_abs, "Minimum summed absolute sentiment")->check(CLI::PositiveNumber);

    auto* report = app.add_subcommand("report", "Correlations, top keywords and lexicon usage");
    report->add_option("--config", config, "Course config file")->required()->check(CLI::ExistingFile);
    report->add_option("--output-dir", output_dir, "Override the configured output directory");

    auto* serve = app.add_subcommand("serve", "Serve results over HTTP");
    serve->add_option("--config", config, "Course config file")->required()->check(CLI::ExistingFile);
    serve->add_option("--output-dir", output_dir, "Override the configured output directory");
    serve->add_option("--bind", bind, "host:port");
    serve->add_option("--scheme", scheme, "simple or complex")->check(CLI::IsMember({"simple", "complex", "both"}));
    serve->add_option("--window", window, "Qualifier window in tokens")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        auto run = course::load_config(config);
        if (!output_dir.empty()) run.output_dir = output_dir;
        if (score->parsed()) {
            if (window) run.negation.qualifier_window = *window;
            return course::cmd_score(run, course::scheme_choice_from_string(scheme), std::cerr);
        }
        if (asp->parsed()) {
            if (window) run.aspect_window = *window;
            return course::cmd_aspects(run, min_mentions.value_or(run.min_mentions),
                                       min_abs.value_or(run.min_abs_sentiment), std::cerr);
        }
        if (report->parsed()) return course::cmd_report(run, std::cerr);
        if (serve->parsed()) {
            if (window) run.negation.qualifier_window = *window;
            const auto s = scheme == "complex" ? grading::Scheme::Complex : grading::Scheme::Simple;
            service::serve(std::move(run), s, bind);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
