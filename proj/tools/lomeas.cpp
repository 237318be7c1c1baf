// Copyright 2026 The lomeas Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lomeas/cli.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Post-selected linear-optics projective measurement simulator"};
    app.require_subcommand(1);

    std::string run_config;
    std::string format = "json";
    std::string out_path;
    auto *run = app.add_subcommand("run", "Enumerate all protocol branches and write the report");
    run->add_option("--config", run_config, "Config file path or inline JSON")->required();
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    run->add_option("--out", out_path, "Output file (default: stdout)");

    std::string verify_config;
    auto *verify = app.add_subcommand("verify", "Compare protocol statistics against direct projection");
    verify->add_option("--config", verify_config, "Config file path or inline JSON")->required();

    auto *families = app.add_subcommand("families", "Print the parity preset as a config skeleton");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : lomeas::cli::kParseFailure;
    }

    if (*run) {
        const auto fmt = format == "csv" ? lomeas::ReportFormat::Csv : lomeas::ReportFormat::Json;
        std::optional<std::string> out;
        if (!out_path.empty()) {
            out = out_path;
        }
        return lomeas::cli::run_command(run_config, fmt, out, std::cout, std::cerr);
    }
    if (*verify) {
        return lomeas::cli::verify_command(verify_config, std::cout, std::cerr);
    }
    if (*families) {
        return lomeas::cli::families_command(std::cout);
    }
    return lomeas::cli::kParseFailure;
}
