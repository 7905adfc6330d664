#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nerkit/augment.hpp"
#include "nerkit/corpus.hpp"
#include "nerkit/eval.hpp"
#include "nerkit/schemes.hpp"

namespace nerkit {

// Declarative description of the five-stage experiment ladder. Parsed from
// a flat "key = value" file; relative paths resolve against the config
// file's directory.
struct PipelineConfig {
  std::string train_path;
  std::string test_path;
  std::string raw_path;
  std::string lexicon_path;
  Scheme scheme = Scheme::BIOES;        // working scheme for M1..M4
  RepairPolicy policy = RepairPolicy::Conll;
  std::vector<Technique> techniques{Technique::LWTR, Technique::SR, Technique::SIS};
  double augment_p = 0.3;
  std::uint32_t copies = 1;
  std::uint32_t epochs = 5;             // perceptron training epochs
  double min_acc = 0.99;
  std::vector<long long> min_scores{2, 3, 4, 5};
  std::size_t max_rules = 250;
  std::uint64_t seed = 1;
  std::string out_dir = "pipeline-out";
};

PipelineConfig parse_pipeline_config(std::istream& in, const std::string& base_dir);
PipelineConfig parse_pipeline_config_file(const std::string& path);

struct StageResult {
  std::string stage;          // m0 .. m4
  std::string description;
  Scheme scheme;              // scheme the stage trained/applied in
  std::size_t train_tokens;   // size of the corpus the stage's model saw
  ScoreReport report;         // test-set scores (always computed in BIO)
};

struct PipelineReport {
  std::vector<StageResult> stages;
  std::string summary;  // stage | scheme | f1 | train tokens table
};

// Runs the ladder: m0 baseline on the original corpus; m1 after scheme
// conversion; m2 after augmentation; m3 after consensus semi-supervision;
// m4 after transformation-based correction of m3's test predictions.
// Writes every intermediate corpus, model, rule list, and report under
// cfg.out_dir. `log` receives one progress line per artifact.
PipelineReport run_pipeline(const PipelineConfig& cfg, std::ostream& log);

// What run_pipeline would do, without touching the filesystem.
std::string describe_pipeline(const PipelineConfig& cfg);

}  // namespace nerkit
