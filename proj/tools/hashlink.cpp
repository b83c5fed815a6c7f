/**
 * Copyright 2026 The hashlink Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "hashlink/common.hpp"
#include "hashlink/kernels.hpp"
#include "hashlink/pipeline.hpp"

namespace {

using hashlink::pipeline::PipelineConfig;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct GlobalFlags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    std::string seed;
    int threads = 0;
    std::string log_level = "info";
};

PipelineConfig resolve_config(const GlobalFlags& flags) {
    PipelineConfig cfg = flags.config_path.empty() ? PipelineConfig{} : PipelineConfig::load(flags.config_path);
    for (const auto& kv : flags.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw hashlink::ConfigError("--set expects section.key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
    if (!flags.seed.empty()) cfg.set("pipeline.seed", flags.seed);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hashlink: hashtag annotation and cross-platform user linking"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalFlags flags;
    app.add_option("-c,--config", flags.config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("--set", flags.overrides, "Override a setting: section.key=value (repeatable)");
    app.add_option("-o,--out", flags.out_dir, "Output directory (paths.out_dir)");
    app.add_option("--seed", flags.seed, "Global seed (pipeline.seed)");
    app.add_option("--threads", flags.threads, "Worker thread cap (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--log-level", flags.log_level, "trace|debug|info|warn|error|off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

    std::string method;
    std::function<void(const PipelineConfig&)> action;
    auto stage = [&](const char* name, const char* help, std::function<void(const PipelineConfig&)> fn) {
        auto* sub = app.add_subcommand(name, help);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };
    stage("synth", "Generate synthetic paired-platform corpora and ground truth", hashlink::pipeline::run_synth);
    stage("preprocess", "Normalize and tokenize both corpora", hashlink::pipeline::run_preprocess);
    stage("annotate", "Select automatic hashtags", hashlink::pipeline::run_annotate)
        ->add_option("--method", method, "topic|community (pipeline.annotator)")
        ->check(CLI::IsMember({"topic", "community"}));
    stage("build-graph", "Build per-platform user/hashtag graphs", hashlink::pipeline::run_build_graph);
    stage("align", "Join the platform graphs on shared hashtags and detect communities",
          hashlink::pipeline::run_align);
    stage("score", "Sample and score train/test trials", hashlink::pipeline::run_score);
    stage("train", "Train the score fuser", hashlink::pipeline::run_train);
    stage("eval-er", "Fuse test scores and report EER", [](const PipelineConfig& c) {
        hashlink::pipeline::run_eval_er(c);
    });
    stage("eval-hashtags", "Precision/recall of automatic against user hashtags",
          hashlink::pipeline::run_eval_hashtags);
    stage("run-all", "Run every stage in dependency order", [](const PipelineConfig& c) {
        hashlink::pipeline::run_all(c);
    });
    stage("show-config", "Print the effective configuration", [](const PipelineConfig& c) { std::cout << c.dump(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    spdlog::set_default_logger(spdlog::stderr_logger_st("hashlink"));
    spdlog::set_level(spdlog::level::from_str(flags.log_level));
    spdlog::set_pattern("[%l] %v");
    if (flags.threads > 0) hashlink::kernels::set_threads(flags.threads);

    try {
        auto cfg = resolve_config(flags);
        if (!method.empty()) cfg.annotator = hashlink::pipeline::parse_annotator(method);
        action(cfg);
    } catch (const hashlink::ConfigError& e) {
        spdlog::error("{}", e.what());
        return kUsage;
    } catch (const hashlink::NumericalError& e) {
        spdlog::error("{}", e.what());
        return kNumerical;
    } catch (const hashlink::DataError& e) {
        spdlog::error("{}", e.what());
        return kData;
    } catch (const std::filesystem::filesystem_error& e) {
        spdlog::error("{}", e.what());
        return kData;
    }
    return kOk;
}
