#include "kalm/pipeline.h"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "kalm/errors.h"

namespace kalm {

namespace {

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Ontology Ontology::load_dir(const std::string &dir) {
  const std::filesystem::path root(dir);
  Ontology o;
  o.lexicon = Lexicon::parse(read_file(root / "lexicon.tsv"));
  auto frames = load_frames(read_file(root / "frames.fp"));
  auto lvps = load_lvps(read_file(root / "lvps.lvp"), frames);
  o.frames = FrameOnt(std::move(frames), std::move(lvps));
  o.graph = SynsetGraph::parse(read_file(root / "synsets.graph"));
  return o;
}

Pipeline::Pipeline(const Ontology &ontology, DisambiguationConfig config)
    : ontology_(ontology),
      disambiguator_(ontology.graph, ontology.frames, &ontology.lexicon,
                     std::move(config)) {}

Pipeline::Analysis Pipeline::analyze(std::string_view sentence) const {
  Analysis a;
  a.drs = parse_any(tokenize(sentence, ontology_.lexicon));
  try {
    a.extracted = extract(a.drs, ontology_.frames);
  } catch (const NoFrameMatched &e) {
    a.pruned.push_back(e.what());
    return a;
  }
  for (const auto &inst : a.extracted) {
    std::string why;
    if (auto d = disambiguator_.disambiguate(inst, &why)) {
      a.kept.push_back(std::move(*d));
    } else {
      a.pruned.push_back(inst.frame + ": " + why);
    }
  }
  return a;
}

Pipeline::AuthorResult Pipeline::author(std::string_view sentence,
                                        KnowledgeBase &kb) const {
  AuthorResult r;
  Analysis a;
  try {
    a = analyze(sentence);
  } catch (const Error &e) {
    r.reason = e.what();
    return r;
  }
  if (a.drs.is_question()) {
    r.reason = "not a declarative sentence";
    return r;
  }
  if (a.kept.empty()) {
    if (!a.pruned.empty()) {
      r.reason = a.pruned.front();
    } else {
      r.reason = "no frame evoked";
    }
    return r;
  }
  std::vector<UlrFact> facts;
  for (const auto &inst : a.kept) {
    auto f = to_ulr(inst, ontology_.frames, kb);
    r.authored.push_back({fact_instance(f.front()),
                          std::get<fact::Frame>(f.front()).frame});
    facts.insert(facts.end(), f.begin(), f.end());
  }
  kb.add_all(facts);
  r.ok = true;
  return r;
}

Pipeline::QueryResult Pipeline::query(std::string_view question,
                                      const KnowledgeBase &kb) const {
  QueryResult r;
  Analysis a = analyze(question);
  if (!a.drs.is_question()) throw Error("not a question");
  std::set<std::string> answers;
  for (const auto &inst : a.kept) {
    int queryvars = 0;
    for (const auto &[role, b] : inst.bindings) {
      if (b.filler.kind == Filler::Kind::kQueryVar) ++queryvars;
    }
    if (queryvars != 1) continue;
    Ulrq q = to_ulrq(inst, ontology_.frames);
    for (auto &ans : kb.evaluate(q)) answers.insert(std::move(ans));
    r.queries.push_back(std::move(q));
  }
  r.answers.assign(answers.begin(), answers.end());
  return r;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    current.push_back(c);
    const bool decimal = c == '.' && i > 0 && i + 1 < text.size() &&
                         std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                         std::isdigit(static_cast<unsigned char>(text[i + 1]));
    if ((c == '.' && !decimal) || c == '?') {
      std::string s = trim(current);
      if (!s.empty()) out.push_back(std::move(s));
      current.clear();
    }
  }
  std::string rest = trim(current);
  if (!rest.empty()) out.push_back(std::move(rest));
  return out;
}

}  // namespace kalm
