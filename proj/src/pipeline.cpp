// The five-stage experiment ladder and its flat key=value configuration.

#include "nerkit/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nerkit/brill.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/semisup.hpp"
#include "nerkit/taggers.hpp"
#include "nerkit/util.hpp"

namespace fs = std::filesystem;

namespace nerkit {

namespace {

std::string resolve(const std::string& path, const std::string& base) {
  fs::path p(path);
  if (p.is_absolute() || base.empty()) return p.lexically_normal().string();
  return (fs::path(base) / p).lexically_normal().string();
}

double parse_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InputError("pipeline config: bad number \"" + value + "\" for " + key);
  }
}

std::uint64_t parse_unsigned(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size() || value.front() == '-') throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InputError("pipeline config: bad count \"" + value + "\" for " + key);
  }
}

}  // namespace

PipelineConfig parse_pipeline_config(std::istream& in, const std::string& base_dir) {
  PipelineConfig cfg;
  cfg.out_dir.clear();

  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("pipeline config line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    std::string key(trim(stripped.substr(0, eq)));
    std::string value(trim(stripped.substr(eq + 1)));
    if (key.empty()) {
      throw InputError("pipeline config line " + std::to_string(line_no) + ": empty key");
    }
    if (!seen.insert(key).second) {
      throw InputError("pipeline config line " + std::to_string(line_no) + ": duplicate key \"" +
                       key + "\"");
    }

    if (key == "train") cfg.train_path = resolve(value, base_dir);
    else if (key == "test") cfg.test_path = resolve(value, base_dir);
    else if (key == "raw") cfg.raw_path = resolve(value, base_dir);
    else if (key == "lexicon") cfg.lexicon_path = resolve(value, base_dir);
    else if (key == "out") cfg.out_dir = resolve(value, base_dir);
    else if (key == "scheme") {
      std::optional<Scheme> s = parse_scheme(value);
      if (!s) {
        throw InputError("pipeline config line " + std::to_string(line_no) +
                         ": unknown scheme \"" + value + "\"");
      }
      cfg.scheme = *s;
    } else if (key == "policy") {
      std::optional<RepairPolicy> p = parse_policy(value);
      if (!p) {
        throw InputError("pipeline config line " + std::to_string(line_no) +
                         ": unknown repair policy \"" + value + "\"");
      }
      cfg.policy = *p;
    } else if (key == "techniques") {
      cfg.techniques = parse_technique_list(value);
    } else if (key == "p") {
      cfg.augment_p = parse_double(value, key);
    } else if (key == "copies") {
      cfg.copies = static_cast<std::uint32_t>(parse_unsigned(value, key));
    } else if (key == "epochs") {
      cfg.epochs = static_cast<std::uint32_t>(parse_unsigned(value, key));
    } else if (key == "min_acc") {
      cfg.min_acc = parse_double(value, key);
    } else if (key == "min_scores") {
      cfg.min_scores.clear();
      for (const std::string& part : split_char(value, ',')) {
        cfg.min_scores.push_back(
            static_cast<long long>(parse_unsigned(std::string(trim(part)), key)));
      }
    } else if (key == "max_rules") {
      cfg.max_rules = static_cast<std::size_t>(parse_unsigned(value, key));
    } else if (key == "seed") {
      cfg.seed = parse_unsigned(value, key);
    } else {
      throw InputError("pipeline config line " + std::to_string(line_no) + ": unknown key \"" +
                       key + "\"");
    }
  }

  if (cfg.train_path.empty()) throw InputError("pipeline config: missing key \"train\"");
  if (cfg.test_path.empty()) throw InputError("pipeline config: missing key \"test\"");
  if (cfg.raw_path.empty()) throw InputError("pipeline config: missing key \"raw\"");
  if (cfg.lexicon_path.empty()) throw InputError("pipeline config: missing key \"lexicon\"");
  if (cfg.out_dir.empty()) cfg.out_dir = resolve("pipeline-out", base_dir);
  if (!(cfg.augment_p >= 0.0 && cfg.augment_p <= 1.0)) {
    throw InputError("pipeline config: p must be in [0,1]");
  }
  if (!(cfg.min_acc >= 0.0 && cfg.min_acc <= 1.0)) {
    throw InputError("pipeline config: min_acc must be in [0,1]");
  }
  if (cfg.epochs == 0) throw InputError("pipeline config: epochs must be >= 1");
  if (cfg.copies == 0) throw InputError("pipeline config: copies must be >= 1");
  if (cfg.min_scores.empty()) throw InputError("pipeline config: min_scores must be non-empty");
  for (long long s : cfg.min_scores) {
    if (s < 1) throw InputError("pipeline config: min_scores entries must be >= 1");
  }
  return cfg;
}

PipelineConfig parse_pipeline_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open pipeline config: " + path);
  return parse_pipeline_config(in, fs::path(path).parent_path().string());
}

namespace {

std::string technique_names(const std::vector<Technique>& techniques) {
  std::vector<std::string> names;
  names.reserve(techniques.size());
  for (Technique t : techniques) names.push_back(to_string(t));
  return join(names, ",");
}

std::string format_f1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round_half_up2(v));
  return buf;
}

std::string scores_list(const std::vector<long long>& scores) {
  std::vector<std::string> parts;
  parts.reserve(scores.size());
  for (long long s : scores) parts.push_back(std::to_string(s));
  return join(parts, ",");
}

}  // namespace

std::string describe_pipeline(const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "pipeline plan\n";
  out << "  train:   " << cfg.train_path << "\n";
  out << "  test:    " << cfg.test_path << "\n";
  out << "  raw:     " << cfg.raw_path << "\n";
  out << "  lexicon: " << cfg.lexicon_path << "\n";
  out << "  out:     " << cfg.out_dir << "\n";
  out << "  scheme " << to_string(cfg.scheme) << ", policy " << to_string(cfg.policy)
      << ", seed " << cfg.seed << "\n";
  out << "stages:\n";
  out << "  m0: train perceptron (epochs " << cfg.epochs
      << ") on the original corpus, score on test\n";
  out << "  m1: convert training data to " << to_string(cfg.scheme) << ", retrain, score\n";
  out << "  m2: augment (" << technique_names(cfg.techniques) << ", p=" << cfg.augment_p
      << ", copies=" << cfg.copies << "), retrain, score\n";
  out << "  m3: tag raw text with perceptron + unigram, keep consensus entities, "
         "append silver corpus, retrain, score\n";
  out << "  m4: split training data in half, tune rule threshold over {"
      << scores_list(cfg.min_scores) << "} (min_acc " << cfg.min_acc
      << "), correct m3 test predictions, score\n";
  return out.str();
}

namespace {

struct StageLogger {
  std::ostream& log;

  void artifact(const std::string& path) { log << "  wrote " << path << "\n"; }
  void begin(const std::string& stage, const std::string& what) {
    log << stage << ": " << what << "\n";
  }
};

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
  if (!out) throw InputError("failed writing " + path);
}

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw InputError("cannot create output directory " + cfg.out_dir + ": " + ec.message());

  StageLogger logger{log};
  PipelineReport report;
  auto out_path = [&](const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
  };

  std::string stage = "setup";
  try {
    Corpus train = read_conll_file(cfg.train_path);
    Corpus test = read_conll_file(cfg.test_path);
    if (train.scheme != test.scheme) {
      throw InputError("train (" + to_string(train.scheme) + ") and test (" +
                       to_string(test.scheme) + ") corpora must share a scheme");
    }
    std::vector<std::vector<std::string>> raw = read_raw_file(cfg.raw_path);
    SynonymLexicon lexicon = read_synonym_lexicon_file(cfg.lexicon_path);

    auto record = [&](const std::string& name, const std::string& description, Scheme scheme,
                      std::size_t train_tokens, const ScoreReport& sr) {
      report.stages.push_back(StageResult{name, description, scheme, train_tokens, sr});
      write_text_file(out_path(name + "-score.txt"), format_score_table(sr));
      write_text_file(out_path(name + "-score.kv"), format_score_kv(sr));
      logger.artifact(out_path(name + "-score.txt"));
      log << "  " << name << " f1 " << format_f1(sr.overall.f1()) << " (train tokens "
          << train_tokens << ")\n";
    };

    // m0: baseline on the corpus exactly as distributed.
    stage = "m0";
    logger.begin(stage, "baseline perceptron on the original corpus");
    PerceptronModel m0 = train_perceptron(train, cfg.epochs, cfg.seed);
    save_model_file(m0, out_path("m0-model.txt"));
    logger.artifact(out_path("m0-model.txt"));
    Corpus m0_pred = retag_corpus(m0, test);
    write_conll_file(m0_pred, out_path("m0-pred.conll"));
    logger.artifact(out_path("m0-pred.conll"));
    record("m0", "baseline on original data", train.scheme, train.token_count(),
           score(test, m0_pred, cfg.policy));

    // m1: same data re-annotated in the working scheme.
    stage = "m1";
    logger.begin(stage, "convert to " + to_string(cfg.scheme) + " and retrain");
    Corpus train1 = convert_corpus(train, cfg.scheme, cfg.policy);
    write_conll_file(train1, out_path("m1-train.conll"));
    logger.artifact(out_path("m1-train.conll"));
    PerceptronModel m1 = train_perceptron(train1, cfg.epochs, cfg.seed);
    save_model_file(m1, out_path("m1-model.txt"));
    logger.artifact(out_path("m1-model.txt"));
    Corpus m1_pred = retag_corpus(m1, test);
    write_conll_file(m1_pred, out_path("m1-pred.conll"));
    logger.artifact(out_path("m1-pred.conll"));
    record("m1", "converted to " + to_string(cfg.scheme), cfg.scheme, train1.token_count(),
           score(test, m1_pred, cfg.policy));

    // m2: augmentation.
    stage = "m2";
    logger.begin(stage, "augment the converted corpus and retrain");
    LabelTokenDistribution dist = build_label_token_distribution(train1);
    AugmentConfig acfg;
    acfg.techniques = cfg.techniques;
    acfg.p = cfg.augment_p;
    acfg.copies_per_technique = cfg.copies;
    acfg.seed = cfg.seed;
    Corpus train2 = augment_corpus(train1, acfg, lexicon, dist);
    write_conll_file(train2, out_path("m2-train.conll"));
    logger.artifact(out_path("m2-train.conll"));
    PerceptronModel m2 = train_perceptron(train2, cfg.epochs, cfg.seed);
    save_model_file(m2, out_path("m2-model.txt"));
    logger.artifact(out_path("m2-model.txt"));
    Corpus m2_pred = retag_corpus(m2, test);
    write_conll_file(m2_pred, out_path("m2-pred.conll"));
    logger.artifact(out_path("m2-pred.conll"));
    record("m2", "augmented (" + technique_names(cfg.techniques) + ")", cfg.scheme,
           train2.token_count(), score(test, m2_pred, cfg.policy));

    // m3: consensus silver corpus from two models over the raw pool.
    stage = "m3";
    logger.begin(stage, "build consensus silver corpus and retrain");
    UnigramModel unigram = train_unigram(train2);
    Corpus raw_pred_a = tag_corpus(m2, raw);
    Corpus raw_pred_b = tag_corpus(unigram, raw);
    write_conll_file(raw_pred_a, out_path("m3-raw-pred-perceptron.conll"));
    write_conll_file(raw_pred_b, out_path("m3-raw-pred-unigram.conll"));
    logger.artifact(out_path("m3-raw-pred-perceptron.conll"));
    logger.artifact(out_path("m3-raw-pred-unigram.conll"));
    ConsensusConfig ccfg;
    ccfg.scheme = cfg.scheme;
    ccfg.policy = cfg.policy;
    ccfg.drop_all_o = true;
    Corpus silver = build_silver_corpus({raw_pred_a, raw_pred_b}, ccfg);
    write_conll_file(silver, out_path("m3-silver.conll"));
    logger.artifact(out_path("m3-silver.conll"));
    Corpus train3 = concatenate(train2, silver);
    write_conll_file(train3, out_path("m3-train.conll"));
    logger.artifact(out_path("m3-train.conll"));
    PerceptronModel m3 = train_perceptron(train3, cfg.epochs, cfg.seed);
    save_model_file(m3, out_path("m3-model.txt"));
    logger.artifact(out_path("m3-model.txt"));
    Corpus m3_pred = retag_corpus(m3, test);
    write_conll_file(m3_pred, out_path("m3-pred.conll"));
    logger.artifact(out_path("m3-pred.conll"));
    record("m3", "plus consensus silver corpus (" + std::to_string(silver.sentences.size()) +
                     " sentences)",
           cfg.scheme, train3.token_count(), score(test, m3_pred, cfg.policy));

    // m4: transformation rules tuned on split halves of the training data.
    stage = "m4";
    logger.begin(stage, "tune transformation rules and correct m3 predictions");
    std::size_t half = train1.sentences.size() / 2;
    Corpus gold_learn = make_corpus(
        std::vector<Sentence>(train1.sentences.begin(),
                              train1.sentences.begin() + static_cast<std::ptrdiff_t>(half)),
        cfg.scheme);
    Corpus gold_eval = make_corpus(
        std::vector<Sentence>(train1.sentences.begin() + static_cast<std::ptrdiff_t>(half),
                              train1.sentences.end()),
        cfg.scheme);
    if (gold_learn.sentences.empty() || gold_eval.sentences.empty()) {
      throw InputError("training corpus too small to split for rule tuning");
    }
    Corpus initial_learn = retag_corpus(m3, gold_learn);
    Corpus initial_eval = retag_corpus(m3, gold_eval);

    BrillConfig bcfg;
    bcfg.min_acc = cfg.min_acc;
    bcfg.max_rules = cfg.max_rules;
    TuneResult tune = tune_min_score(gold_learn, initial_learn, gold_eval, initial_eval,
                                     cfg.min_scores, bcfg);

    // The corrected tagger must not fall behind the uncorrected one on the
    // tuning half, so "no rules at all" competes with every threshold.
    double identity_f1 = score(gold_eval, initial_eval, cfg.policy).overall.f1();
    bool keep_rules = tune.candidates.empty() ? false : true;
    double best_f1 = identity_f1;
    for (const TuneCandidate& tc : tune.candidates) {
      if (tc.min_score == tune.best_min_score) best_f1 = tc.f1;
    }
    if (best_f1 < identity_f1) {
      keep_rules = false;
      tune.rules.clear();
    }

    std::ostringstream tuning;
    tuning << "min_score  rules  eval_f1\n";
    for (const TuneCandidate& tc : tune.candidates) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%9lld  %5zu  %7s\n", tc.min_score, tc.rule_count,
                    format_f1(tc.f1).c_str());
      tuning << buf;
    }
    tuning << "baseline (no rules) eval_f1 " << format_f1(identity_f1) << "\n";
    tuning << "chosen min_score " << tune.best_min_score << " with "
           << tune.rules.size() << " rules"
           << (keep_rules ? "" : " (rules discarded: no threshold beat the baseline)") << "\n";
    write_text_file(out_path("m4-tuning.txt"), tuning.str());
    logger.artifact(out_path("m4-tuning.txt"));
    write_rules_file(tune.rules, out_path("m4-rules.txt"));
    logger.artifact(out_path("m4-rules.txt"));

    Corpus m4_pred = apply_rules(m3_pred, tune.rules);
    write_conll_file(m4_pred, out_path("m4-pred.conll"));
    logger.artifact(out_path("m4-pred.conll"));
    record("m4", "plus transformation rules (min_score " +
                     std::to_string(tune.best_min_score) + ", " +
                     std::to_string(tune.rules.size()) + " rules)",
           cfg.scheme, train3.token_count(), score(test, m4_pred, cfg.policy));
  } catch (const Error& e) {
    throw InputError("pipeline stage " + stage + ": " + e.what());
  }

  std::ostringstream summary;
  summary << "stage  scheme  train-tokens      f1  note\n";
  for (const StageResult& sr : report.stages) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-5s  %-6s  %12zu  %6s  %s\n", sr.stage.c_str(),
                  to_string(sr.scheme).c_str(), sr.train_tokens,
                  format_f1(sr.report.overall.f1()).c_str(), sr.description.c_str());
    summary << buf;
  }
  report.summary = summary.str();
  write_text_file(out_path("summary.txt"), report.summary);
  logger.artifact(out_path("summary.txt"));
  log << report.summary;
  return report;
}

}  // namespace nerkit
