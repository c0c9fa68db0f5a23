#include "kalm/cli.h"

#include <fcntl.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "kalm/errors.h"
#include "kalm/eval_harness.h"
#include "kalm/pipeline.h"

#ifndef KALM_DEFAULT_ONTOLOGY
#define KALM_DEFAULT_ONTOLOGY "data/ontology"
#endif

namespace kalm {

namespace fs = std::filesystem;

std::string default_ontology_dir() { return KALM_DEFAULT_ONTOLOGY; }

void Config::validate() const {
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must be in (0,1)");
  if (depth_bound < 1) throw ConfigError("depth must be >= 1");
  if (!weights.valid()) throw ConfigError("relation weights must be in (0,1]");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
  }
  return d;
}

bool to_bool(const std::string &key, const std::string &v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: " + key + " expects true/false, got '" + v + "'");
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Exclusive writer lock: a `<kb>.lock` file created with O_EXCL.
class KbLock {
 public:
  explicit KbLock(const std::string &kb_path) : path_(kb_path + ".lock") {
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0) throw Error("knowledge base is locked: " + path_);
  }
  ~KbLock() {
    ::close(fd_);
    ::unlink(path_.c_str());
  }
  KbLock(const KbLock &) = delete;
  KbLock &operator=(const KbLock &) = delete;

 private:
  std::string path_;
  int fd_ = -1;
};

KnowledgeBase load_kb(const std::string &path) {
  if (!fs::exists(path)) return {};
  return KnowledgeBase::load(read_file(path));
}

// Write to a temporary beside the target, then rename over it.
void save_kb_atomically(const KnowledgeBase &kb, const std::string &path) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << kb.save();
    out.flush();
    if (!out) throw Error("cannot write " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot replace " + path + ": " + ec.message());
  }
}

DisambiguationConfig disambiguation_config(const Config &c) {
  DisambiguationConfig d;
  d.theta = c.theta;
  d.scoring.depth_bound = c.depth_bound;
  d.scoring.weights = c.weights;
  return d;
}

// Loaded ontology plus pipeline; fails with exit code 2 semantics.
struct Session {
  Ontology ontology;
  std::unique_ptr<Pipeline> pipeline;

  explicit Session(const Config &config) {
    config.validate();
    ontology = Ontology::load_dir(config.ontology_dir.empty() ? default_ontology_dir()
                                                              : config.ontology_dir);
    pipeline = std::make_unique<Pipeline>(ontology, disambiguation_config(config));
  }
};

void print_author_result(const Pipeline::AuthorResult &r, std::ostream &out) {
  if (!r.ok) {
    out << "REJECTED " << r.reason << "\n";
    return;
  }
  for (const auto &a : r.authored) {
    out << "OK " << a.id.str() << " frame=" << a.frame << "\n";
  }
}

void print_query_result(const Pipeline::QueryResult &r, bool explain, std::ostream &out) {
  if (explain) {
    for (const auto &q : r.queries) {
      out << "ulrq: " << print_ulrq(q) << "\n";
      out << "answer: ?" << q.answer_var << "\n";
    }
  }
  for (const auto &a : r.answers) out << a << "\n";
}

bool is_question(const std::string &s) { return !s.empty() && s.back() == '?'; }

}  // namespace

void apply_config_text(std::string_view text, Config &config) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(n) + ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "ontology") {
      config.ontology_dir = value;
    } else if (key == "kb") {
      config.kb_path = value;
    } else if (key == "theta") {
      config.theta = to_double(key, value);
    } else if (key == "depth") {
      config.depth_bound = static_cast<int>(to_double(key, value));
    } else if (key == "explain") {
      config.explain = to_bool(key, value);
    } else if (key == "jobs") {
      config.jobs = static_cast<unsigned>(to_double(key, value));
    } else if (key == "weight.hypernym") {
      config.weights.hypernym = to_double(key, value);
    } else if (key == "weight.hyponym") {
      config.weights.hyponym = to_double(key, value);
    } else if (key == "weight.meronym") {
      config.weights.meronym = to_double(key, value);
    } else if (key == "weight.holonym") {
      config.weights.holonym = to_double(key, value);
    } else if (key == "weight.related") {
      config.weights.related = to_double(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(n) + ": unknown key '" + key + "'");
    }
  }
}

int cmd_author(const Config &config, const std::vector<std::string> &files,
               std::istream &in, std::ostream &out, std::ostream &err) {
  std::optional<Session> session;
  std::string text;
  try {
    session.emplace(config);
    if (files.empty()) {
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    } else {
      for (const auto &f : files) text += read_file(f) + "\n";
    }
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const auto sentences = split_sentences(text);
  if (sentences.empty()) return 0;
  try {
    KbLock lock(config.kb_path);
    KnowledgeBase kb = load_kb(config.kb_path);
    bool rejected = false;
    for (const auto &s : sentences) {
      auto r = session->pipeline->author(s, kb);
      rejected |= !r.ok;
      print_author_result(r, out);
    }
    save_kb_atomically(kb, config.kb_path);
    return rejected ? 1 : 0;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_query(const Config &config, const std::string &question, std::ostream &out,
              std::ostream &err) {
  std::optional<Session> session;
  KnowledgeBase kb;
  try {
    session.emplace(config);
    kb = load_kb(config.kb_path);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    print_query_result(session->pipeline->query(question, kb), config.explain, out);
  } catch (const Error &e) {
    err << e.what() << "\n";
    return 1;
  }
  return 0;
}

int cmd_repl(const Config &config, std::istream &in, std::ostream &out,
             std::ostream &err) {
  std::optional<Session> session;
  KnowledgeBase kb;
  try {
    session.emplace(config);
    kb = load_kb(config.kb_path);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const bool interactive = &in == &std::cin && ::isatty(STDIN_FILENO);
  std::string line;
  for (;;) {
    if (interactive) out << "kalm> " << std::flush;
    if (!std::getline(in, line)) break;
    const std::string t = trim(line);
    if (t == ":quit") break;
    for (const auto &s : split_sentences(t)) {
      if (is_question(s)) {
        try {
          print_query_result(session->pipeline->query(s, kb), config.explain, out);
        } catch (const Error &e) {
          out << "ERROR " << e.what() << "\n";
        }
        continue;
      }
      auto r = session->pipeline->author(s, kb);
      print_author_result(r, out);
      if (!r.ok) continue;
      try {
        KbLock lock(config.kb_path);
        save_kb_atomically(kb, config.kb_path);
      } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
      }
    }
  }
  return 0;
}

int cmd_eval_author(const Config &config, const std::string &corpus, std::ostream &out,
                    std::ostream &err) {
  try {
    Session session(config);
    const auto gold = parse_gold(read_file(corpus));
    check_gold(gold, session.ontology.frames);
    const MetricsReport report = run_authoring(*session.pipeline, gold, config.jobs);
    out << report.table() << "\n" << report.lines();
    for (const auto &v : report.verdicts) {
      if (v.verdict == Verdict::kFrSynC) continue;
      out << "# " << verdict_name(v.verdict) << " [" << v.index + 1 << "] "
          << v.sentence << " : " << v.reason << "\n";
    }
    return 0;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int cmd_eval_qa(const Config &config, const std::string &kb_corpus,
                const std::string &questions, std::ostream &out, std::ostream &err) {
  try {
    Session session(config);
    const auto sentences = parse_kb_corpus(read_file(kb_corpus));
    const auto items = parse_questions(read_file(questions));
    const QaReport report = run_qa(*session.pipeline, sentences, items);
    out << report.table() << "\n" << report.lines();
    for (const auto &r : report.rejected) out << "# rejected " << r << "\n";
    for (const auto &item : report.items) {
      if (item.correct) continue;
      out << "# wrong " << item.question << " :";
      for (const auto &a : item.got) out << " " << a;
      if (!item.error.empty()) out << " (" << item.error << ")";
      out << "\n";
    }
    return 0;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char *const *argv, std::istream &in, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Knowledge authoring and question answering over controlled English"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string ontology, kb, config_path;
  double theta = 0;
  int depth = 0;
  unsigned jobs = 1;
  bool explain = false;
  auto *o_ontology = app.add_option("--ontology", ontology, "Ontology directory");
  auto *o_kb = app.add_option("--kb", kb, "Knowledge base file");
  auto *o_theta = app.add_option("--theta", theta, "Pruning threshold in (0,1)");
  auto *o_depth = app.add_option("--depth", depth, "Path length bound for scoring");
  auto *o_jobs = app.add_option("--jobs", jobs, "Worker threads for eval author");
  auto *o_explain = app.add_flag("--explain", explain, "Print ULRQ goals");
  app.add_option("--config", config_path, "key = value config file");

  std::vector<std::string> files;
  auto *author = app.add_subcommand("author", "Author declarative sentences");
  author->add_option("files", files, "Input files (default stdin)");

  std::string question;
  auto *query = app.add_subcommand("query", "Answer a question");
  query->add_option("question", question, "Question text")->required();

  auto *repl = app.add_subcommand("repl", "Interactive session");

  auto *eval = app.add_subcommand("eval", "Evaluation reports");
  eval->require_subcommand(1);
  std::string corpus, kb_corpus, questions_path;
  auto *eval_author = eval->add_subcommand("author", "Authoring metrics");
  eval_author->add_option("--corpus", corpus, "Annotated corpus")->required();
  auto *eval_qa = eval->add_subcommand("qa", "QA accuracy");
  eval_qa->add_option("--kb-corpus", kb_corpus, "Sentences to author")->required();
  eval_qa->add_option("--questions", questions_path, "Questions with answers")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  Config config;
  config.ontology_dir = default_ontology_dir();
  try {
    if (!config_path.empty()) apply_config_text(read_file(config_path), config);
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (o_ontology->count()) config.ontology_dir = ontology;
  if (o_kb->count()) config.kb_path = kb;
  if (o_theta->count()) config.theta = theta;
  if (o_depth->count()) config.depth_bound = depth;
  if (o_jobs->count()) config.jobs = jobs;
  if (o_explain->count()) config.explain = explain;
  try {
    config.validate();
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (author->parsed()) return cmd_author(config, files, in, out, err);
  if (query->parsed()) return cmd_query(config, question, out, err);
  if (repl->parsed()) return cmd_repl(config, in, out, err);
  if (eval_author->parsed()) return cmd_eval_author(config, corpus, out, err);
  if (eval_qa->parsed()) return cmd_eval_qa(config, kb_corpus, questions_path, out, err);
  return 2;
}

}  // namespace kalm
