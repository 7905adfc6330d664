// nerkit command-line driver: every library operation as a subcommand plus
// the five-stage pipeline runner.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nerkit/augment.hpp"
#include "nerkit/brill.hpp"
#include "nerkit/corpus.hpp"
#include "nerkit/errors.hpp"
#include "nerkit/eval.hpp"
#include "nerkit/pipeline.hpp"
#include "nerkit/schemes.hpp"
#include "nerkit/semisup.hpp"
#include "nerkit/taggers.hpp"
#include "nerkit/util.hpp"

namespace {

using namespace nerkit;

Scheme scheme_or_throw(const std::string& name) {
  std::optional<Scheme> s = parse_scheme(name);
  if (!s) throw InputError("unknown scheme \"" + name + "\" (expected BIO, IO, or BIOES)");
  return *s;
}

RepairPolicy policy_or_throw(const std::string& name) {
  std::optional<RepairPolicy> p = parse_policy(name);
  if (!p) {
    throw InputError("unknown repair policy \"" + name +
                     "\" (expected strict, conll, or discard)");
  }
  return *p;
}

void write_text_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + out_path);
  out << text;
  if (!out) throw InputError("failed writing " + out_path);
}

void write_corpus_output(const Corpus& corpus, const std::string& out_path) {
  if (out_path.empty()) {
    write_conll(corpus, std::cout);
    return;
  }
  write_conll_file(corpus, out_path);
}

std::vector<long long> parse_score_list(const std::string& list) {
  std::vector<long long> out;
  for (const std::string& part : split_char(list, ',')) {
    std::string item(trim(part));
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad min_score value \"" + item + "\"");
    }
  }
  if (out.empty()) throw InputError("empty min_score list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus engineering toolkit for NER sequence labeling"};
  app.require_subcommand(1);

  // convert
  struct {
    std::string in, out, from, to = "BIOES", policy = "conll";
  } conv;
  CLI::App* convert_cmd = app.add_subcommand("convert", "convert a corpus between tag schemes");
  convert_cmd->add_option("--in", conv.in, "input CoNLL file")->required();
  convert_cmd->add_option("--out", conv.out, "output CoNLL file (default stdout)");
  convert_cmd->add_option("--from", conv.from, "input scheme (default: inferred)");
  convert_cmd->add_option("--to", conv.to, "target scheme")->required();
  convert_cmd->add_option("--repair,--policy", conv.policy,
                          "repair policy: strict|conll|discard");

  // augment
  struct {
    std::string in, out, lexicon, techniques = "lwtr,sr,sis";
    double p = 0.3;
    std::uint32_t copies = 1;
    std::uint64_t seed = 1;
  } aug;
  CLI::App* augment_cmd = app.add_subcommand("augment", "expand a corpus with augmented copies");
  augment_cmd->add_option("--in", aug.in, "input CoNLL file")->required();
  augment_cmd->add_option("--out", aug.out, "output CoNLL file (default stdout)");
  augment_cmd->add_option("--lexicon", aug.lexicon, "synonym lexicon (headword<TAB>phrase)")
      ->required();
  augment_cmd->add_option("--techniques", aug.techniques, "comma list of lwtr,sr,sis");
  augment_cmd->add_option("--p", aug.p, "per-token/segment replacement probability");
  augment_cmd->add_option("--copies", aug.copies, "augmented copies per technique");
  augment_cmd->add_option("--seed", aug.seed, "random seed");

  // train
  struct {
    std::string in, out, model = "perceptron";
    std::uint32_t epochs = 5;
    std::uint64_t seed = 1;
  } train;
  CLI::App* train_cmd = app.add_subcommand("train", "train a baseline tagger");
  train_cmd->add_option("--in", train.in, "training CoNLL file")->required();
  train_cmd->add_option("--out", train.out, "model output file")->required();
  train_cmd->add_option("--model", train.model, "model family: unigram|perceptron");
  train_cmd->add_option("--epochs", train.epochs, "perceptron training epochs");
  train_cmd->add_option("--seed", train.seed, "perceptron shuffling seed");

  // tag
  struct {
    std::string model, in, out, format = "raw";
  } tag;
  CLI::App* tag_cmd = app.add_subcommand("tag", "tag text with a trained model");
  tag_cmd->add_option("--model", tag.model, "model file")->required();
  tag_cmd->add_option("--in", tag.in, "input file")->required();
  tag_cmd->add_option("--out", tag.out, "output CoNLL file (default stdout)");
  tag_cmd->add_option("--format", tag.format,
                      "input format: raw (one sentence per line) or conll (retag surfaces)");

  // consensus
  struct {
    std::vector<std::string> preds;
    std::string raw, out, scheme, policy = "conll";
    bool keep_all_o = false;
  } cons;
  CLI::App* consensus_cmd =
      app.add_subcommand("consensus", "intersect model predictions into a silver corpus");
  consensus_cmd->add_option("--pred", cons.preds, "prediction CoNLL file (repeat, two or more)")
      ->required();
  consensus_cmd->add_option("--raw", cons.raw, "raw sentences the predictions annotate")
      ->required();
  consensus_cmd->add_option("--out", cons.out, "output CoNLL file (default stdout)");
  consensus_cmd->add_option("--scheme", cons.scheme,
                            "output scheme (default: first prediction's scheme)");
  consensus_cmd->add_option("--policy", cons.policy, "repair policy for predictions");
  consensus_cmd->add_flag("--keep-all-o", cons.keep_all_o,
                          "keep sentences with no agreed entities");

  // brill-learn
  struct {
    std::string initial, gold, out, templates = "default";
    double min_acc = 0.99;
    long long min_score = 5;
    std::size_t max_rules = 250;
  } learn;
  CLI::App* learn_cmd =
      app.add_subcommand("brill-learn", "learn transformation rules from tagger errors");
  learn_cmd->add_option("--initial", learn.initial, "initial tagger output (CoNLL)")->required();
  learn_cmd->add_option("--gold", learn.gold, "gold corpus (CoNLL)")->required();
  learn_cmd->add_option("--out", learn.out, "rule file (default stdout)");
  learn_cmd->add_option("--min-acc", learn.min_acc, "minimum rule accuracy");
  learn_cmd->add_option("--min-score", learn.min_score, "minimum rule score");
  learn_cmd->add_option("--max-rules", learn.max_rules, "rule count cap");
  learn_cmd->add_option("--templates", learn.templates,
                        "template set (only \"default\" is defined)");

  // brill-apply
  struct {
    std::string rules, in, out;
  } apply;
  CLI::App* apply_cmd = app.add_subcommand("brill-apply", "apply a rule file to a tagged corpus");
  apply_cmd->add_option("--rules", apply.rules, "rule file")->required();
  apply_cmd->add_option("--in", apply.in, "tagged CoNLL file")->required();
  apply_cmd->add_option("--out", apply.out, "output CoNLL file (default stdout)");

  // brill-tune
  struct {
    std::string gold, initial, out, scores = "2,3,4,5";
    double min_acc = 0.99;
    std::size_t max_rules = 250;
  } tune;
  CLI::App* tune_cmd = app.add_subcommand(
      "brill-tune", "pick min_score on a half split: learn on the first half, score the second");
  tune_cmd->add_option("--gold", tune.gold, "gold corpus (split in half)")->required();
  tune_cmd->add_option("--initial", tune.initial, "initial tagger output, aligned with --gold")
      ->required();
  tune_cmd->add_option("--out", tune.out, "winning rule file (default stdout)");
  tune_cmd->add_option("--scores", tune.scores, "candidate min_scores, comma separated");
  tune_cmd->add_option("--min-acc", tune.min_acc, "minimum rule accuracy");
  tune_cmd->add_option("--max-rules", tune.max_rules, "rule count cap");

  // score
  struct {
    std::string gold, pred, out, policy = "conll";
    bool kv = false;
  } sc;
  CLI::App* score_cmd = app.add_subcommand("score", "entity-level precision/recall/F1");
  score_cmd->add_option("--gold", sc.gold, "gold CoNLL file")->required();
  score_cmd->add_option("--pred", sc.pred, "prediction CoNLL file")->required();
  score_cmd->add_option("--out", sc.out, "report file (default stdout)");
  score_cmd->add_option("--policy", sc.policy, "repair policy");
  score_cmd->add_flag("--kv", sc.kv, "key-value output only (default: table plus key-value)");

  // diff
  struct {
    std::string gold, a, b, out, policy = "conll";
  } df;
  CLI::App* diff_cmd = app.add_subcommand("diff", "correct-phrase counts of two systems");
  diff_cmd->add_option("--gold", df.gold, "gold CoNLL file")->required();
  diff_cmd->add_option("--a", df.a, "system A predictions")->required();
  diff_cmd->add_option("--b", df.b, "system B predictions")->required();
  diff_cmd->add_option("--out", df.out, "report file (default stdout)");
  diff_cmd->add_option("--policy", df.policy, "repair policy");

  // pipeline
  struct {
    std::string config, out;
    bool dry_run = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
  } pipe;
  CLI::App* pipeline_cmd = app.add_subcommand("pipeline", "run the five-stage experiment ladder");
  pipeline_cmd->add_option("--config", pipe.config, "pipeline config file")->required();
  pipeline_cmd->add_flag("--dry-run", pipe.dry_run, "print the plan without running");
  pipeline_cmd->add_option("--out", pipe.out, "override the output directory");
  pipeline_cmd->add_option("--seed", pipe.seed, "override the seed")
      ->each([&](const std::string&) { pipe.seed_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (convert_cmd->parsed()) {
      std::optional<Scheme> from;
      if (!conv.from.empty()) from = scheme_or_throw(conv.from);
      Corpus corpus = read_conll_file(conv.in, from);
      Corpus converted =
          convert_corpus(corpus, scheme_or_throw(conv.to), policy_or_throw(conv.policy));
      write_corpus_output(converted, conv.out);
    } else if (augment_cmd->parsed()) {
      Corpus corpus = read_conll_file(aug.in);
      SynonymLexicon lexicon = read_synonym_lexicon_file(aug.lexicon);
      AugmentConfig cfg;
      cfg.techniques = parse_technique_list(aug.techniques);
      cfg.p = aug.p;
      cfg.copies_per_technique = aug.copies;
      cfg.seed = aug.seed;
      LabelTokenDistribution dist = build_label_token_distribution(corpus);
      write_corpus_output(augment_corpus(corpus, cfg, lexicon, dist), aug.out);
    } else if (train_cmd->parsed()) {
      Corpus corpus = read_conll_file(train.in);
      if (train.model == "unigram") {
        save_model_file(train_unigram(corpus), train.out);
      } else if (train.model == "perceptron") {
        save_model_file(train_perceptron(corpus, train.epochs, train.seed), train.out);
      } else {
        throw InputError("unknown model family \"" + train.model +
                         "\" (expected unigram or perceptron)");
      }
    } else if (tag_cmd->parsed()) {
      AnyModel model = AnyModel::load_file(tag.model);
      if (tag.format == "raw") {
        write_corpus_output(tag_corpus(model, read_raw_file(tag.in)), tag.out);
      } else if (tag.format == "conll") {
        write_corpus_output(retag_corpus(model, read_conll_file(tag.in)), tag.out);
      } else {
        throw InputError("unknown input format \"" + tag.format + "\" (expected raw or conll)");
      }
    } else if (consensus_cmd->parsed()) {
      if (cons.preds.size() < 2) throw InputError("consensus requires at least two --pred files");
      std::vector<Corpus> preds;
      preds.reserve(cons.preds.size());
      for (const std::string& path : cons.preds) preds.push_back(read_conll_file(path));
      std::vector<std::vector<std::string>> raw = read_raw_file(cons.raw);
      if (preds[0].sentences.size() != raw.size()) {
        throw InputError("--raw has " + std::to_string(raw.size()) + " sentences but \"" +
                         cons.preds[0] + "\" has " + std::to_string(preds[0].sentences.size()));
      }
      for (std::size_t si = 0; si < raw.size(); ++si) {
        if (preds[0].sentences[si].surfaces() != raw[si]) {
          throw InputError("sentence " + std::to_string(si) +
                           ": \"" + cons.preds[0] + "\" does not match the raw text");
        }
      }
      ConsensusConfig cfg;
      cfg.scheme = cons.scheme.empty() ? preds[0].scheme : scheme_or_throw(cons.scheme);
      cfg.policy = policy_or_throw(cons.policy);
      cfg.drop_all_o = !cons.keep_all_o;
      write_corpus_output(build_silver_corpus(preds, cfg), cons.out);
    } else if (learn_cmd->parsed()) {
      if (learn.templates != "default") {
        throw InputError("unknown template set \"" + learn.templates +
                         "\" (only \"default\" is defined)");
      }
      Corpus initial = read_conll_file(learn.initial);
      Corpus gold = read_conll_file(learn.gold);
      BrillConfig cfg;
      cfg.min_acc = learn.min_acc;
      cfg.min_score = learn.min_score;
      cfg.max_rules = learn.max_rules;
      write_text_output(serialize_rules(learn_rules(initial, gold, cfg)), learn.out);
    } else if (apply_cmd->parsed()) {
      std::vector<BrillRule> rules = parse_rules_file(apply.rules);
      write_corpus_output(apply_rules(read_conll_file(apply.in), rules), apply.out);
    } else if (tune_cmd->parsed()) {
      Corpus gold = read_conll_file(tune.gold);
      Corpus initial = read_conll_file(tune.initial);
      if (gold.sentences.size() < 2) {
        throw InputError("need at least two sentences to split for tuning");
      }
      std::size_t half = gold.sentences.size() / 2;
      auto slice = [](const Corpus& c, std::size_t begin, std::size_t end) {
        return make_corpus(
            std::vector<Sentence>(c.sentences.begin() + static_cast<std::ptrdiff_t>(begin),
                                  c.sentences.begin() + static_cast<std::ptrdiff_t>(end)),
            c.scheme);
      };
      BrillConfig cfg;
      cfg.min_acc = tune.min_acc;
      cfg.max_rules = tune.max_rules;
      TuneResult result = tune_min_score(
          slice(gold, 0, half), slice(initial, 0, half), slice(gold, half, gold.sentences.size()),
          slice(initial, half, initial.sentences.size()), parse_score_list(tune.scores), cfg);
      std::cerr << "min_score  rules  eval_f1\n";
      for (const TuneCandidate& tc : result.candidates) {
        char buf[80];
        std::snprintf(buf, sizeof buf, "%9lld  %5zu  %7.2f\n", tc.min_score, tc.rule_count,
                      round_half_up2(tc.f1));
        std::cerr << buf;
      }
      std::cerr << "chosen min_score " << result.best_min_score << "\n";
      write_text_output(serialize_rules(result.rules), tune.out);
    } else if (score_cmd->parsed()) {
      Corpus gold = read_conll_file(sc.gold);
      Corpus pred = read_conll_file(sc.pred);
      ScoreReport report = score(gold, pred, policy_or_throw(sc.policy));
      std::string text = format_score_kv(report);
      if (!sc.kv) text = format_score_table(report) + "\n" + text;
      write_text_output(text, sc.out);
    } else if (diff_cmd->parsed()) {
      Corpus gold = read_conll_file(df.gold);
      Corpus a = read_conll_file(df.a);
      Corpus b = read_conll_file(df.b);
      write_text_output(format_diff_table(diff_report(gold, a, b, policy_or_throw(df.policy))),
                        df.out);
    } else if (pipeline_cmd->parsed()) {
      PipelineConfig cfg = parse_pipeline_config_file(pipe.config);
      if (!pipe.out.empty()) cfg.out_dir = pipe.out;
      if (pipe.seed_set) cfg.seed = pipe.seed;
      if (pipe.dry_run) {
        std::cout << describe_pipeline(cfg);
      } else {
        run_pipeline(cfg, std::cout);
      }
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
