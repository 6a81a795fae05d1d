/**
 * @file cli.hpp
 * @brief Command-line front end shared by the `tfr` tool and the tests.
 */
#pragma once

#include "tfr/config.hpp"
#include "tfr/ensemble.hpp"
#include "tfr/manifest.hpp"
#include "tfr/recognition.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tfr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. Results go to `out`, diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Reads and enhances every row; rows need landmarks.
ensemble::TrainCorpus corpus_from_manifest(const std::vector<manifest::Row>& rows,
                                           const diffusion::DiffusionConfig& dcfg);

recognition::Signature signature_for_row(const manifest::Row& row, const ensemble::Ensemble& ens,
                                         const config::PipelineConfig& cfg);

}  // namespace tfr::cli
