#include "kalm/synset_graph.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "kalm/errors.h"

namespace kalm {

namespace {

constexpr std::string_view kRelationNames[] = {"hypernym", "hyponym", "meronym",
                                               "holonym", "related"};

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    auto end = s.find(sep, start);
    if (end != start) parts.emplace_back(s.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

std::string format_weight(double w) {
  std::ostringstream ss;
  ss.precision(17);
  ss << w;
  // Shortest representation that round-trips.
  for (int p = 1; p <= 17; ++p) {
    std::ostringstream t;
    t.precision(p);
    t << w;
    if (std::stod(t.str()) == w) return t.str();
  }
  return ss.str();
}

}  // namespace

std::string_view relation_name(SemRelation r) {
  return kRelationNames[static_cast<int>(r)];
}

bool parse_relation(std::string_view name, SemRelation *r) {
  for (std::size_t i = 0; i < std::size(kRelationNames); ++i) {
    if (kRelationNames[i] == name) {
      *r = static_cast<SemRelation>(i);
      return true;
    }
  }
  return false;
}

double WeightProfile::weight(SemRelation r) const {
  switch (r) {
    case SemRelation::kHypernym: return hypernym;
    case SemRelation::kHyponym: return hyponym;
    case SemRelation::kMeronym: return meronym;
    case SemRelation::kHolonym: return holonym;
    case SemRelation::kRelated: return related;
  }
  return 0.0;
}

std::uint64_t WeightProfile::hash() const {
  // FNV-1a over the raw doubles.
  std::uint64_t h = 1469598103934665603ull;
  for (double w : {hypernym, hyponym, meronym, holonym, related}) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &w, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  }
  return h;
}

bool WeightProfile::valid() const {
  for (double w : {hypernym, hyponym, meronym, holonym, related}) {
    if (!(w > 0.0 && w <= 1.0)) return false;
  }
  return true;
}

std::size_t SynsetGraph::add_node(const SynsetId &id,
                                  const std::vector<std::string> &lemmas) {
  auto [it, inserted] = index_.emplace(id, ids_.size());
  if (inserted) {
    ids_.push_back(id);
    lemmas_.emplace_back();
    out_.emplace_back();
  }
  const std::size_t n = it->second;
  for (const auto &lemma : lemmas) {
    auto &node_lemmas = lemmas_[n];
    if (std::find(node_lemmas.begin(), node_lemmas.end(), lemma) == node_lemmas.end()) {
      node_lemmas.push_back(lemma);
    }
    auto &senses = senses_[lemma];
    if (std::find(senses.begin(), senses.end(), id) == senses.end()) {
      senses.push_back(id);
    }
  }
  return n;
}

void SynsetGraph::add_edge(const SynsetId &from, const SynsetId &to,
                           SemRelation relation, std::optional<double> weight) {
  auto f = node(from);
  auto t = node(to);
  if (!f || !t) throw Error("edge endpoint not in graph");
  if (weight && !(*weight > 0.0 && *weight <= 1.0)) {
    throw Error("edge weight outside (0,1]");
  }
  out_[*f].push_back({*t, relation, weight});
}

std::size_t SynsetGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto &edges : out_) n += edges.size();
  return n;
}

std::optional<std::size_t> SynsetGraph::node(const SynsetId &id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<SynsetId> &SynsetGraph::senses(std::string_view lemma) const {
  static const std::vector<SynsetId> kNone;
  auto it = senses_.find(lemma);
  return it == senses_.end() ? kNone : it->second;
}

bool operator==(const SynsetGraph &a, const SynsetGraph &b) {
  if (a.ids_ != b.ids_ || a.lemmas_ != b.lemmas_ || a.senses_ != b.senses_) {
    return false;
  }
  for (std::size_t i = 0; i < a.out_.size(); ++i) {
    const auto &ea = a.out_[i];
    const auto &eb = b.out_[i];
    if (ea.size() != eb.size()) return false;
    for (std::size_t j = 0; j < ea.size(); ++j) {
      if (ea[j].to != eb[j].to || ea[j].relation != eb[j].relation ||
          ea[j].weight != eb[j].weight) {
        return false;
      }
    }
  }
  return true;
}

SynsetGraph SynsetGraph::parse(std::string_view text) {
  struct PendingEdge {
    int line;
    std::string from, to;
    SemRelation relation;
    std::optional<double> weight;
  };
  SynsetGraph g;
  std::vector<PendingEdge> edges;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    if (kind == "s") {
      std::string id, lemmas, extra;
      if (!(ls >> id >> lemmas) || (ls >> extra)) {
        throw SyntaxError(line_no, "expected: s <id> <lemma>[,<lemma>...]");
      }
      g.add_node(SynsetId::from(id), split(lemmas, ','));
    } else if (kind == "e") {
      PendingEdge e{line_no, {}, {}, SemRelation::kRelated, std::nullopt};
      std::string rel, weight, extra;
      if (!(ls >> e.from >> e.to >> rel)) {
        throw SyntaxError(line_no, "expected: e <from> <to> <relation> [<weight>]");
      }
      if (!parse_relation(rel, &e.relation)) {
        throw SyntaxError(line_no, "unknown relation '" + rel + "'");
      }
      if (ls >> weight) {
        std::size_t used = 0;
        double w = 0;
        try {
          w = std::stod(weight, &used);
        } catch (const std::exception &) {
          used = 0;
        }
        if (used != weight.size() || !(w > 0.0 && w <= 1.0)) {
          throw SyntaxError(line_no, "edge weight must be in (0,1]: " + weight);
        }
        e.weight = w;
      }
      if (ls >> extra) throw SyntaxError(line_no, "trailing text after edge");
      SynsetId::from(e.from);
      SynsetId::from(e.to);
      edges.push_back(std::move(e));
    } else {
      throw SyntaxError(line_no, "unknown line kind '" + kind + "'");
    }
  }
  for (const auto &e : edges) {
    const SynsetId from = SynsetId::from(e.from);
    const SynsetId to = SynsetId::from(e.to);
    if (!g.contains(from) || !g.contains(to)) {
      throw SyntaxError(e.line, "edge endpoint not declared");
    }
    g.add_edge(from, to, e.relation, e.weight);
  }
  return g;
}

SynsetGraph SynsetGraph::load_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open synset graph: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string SynsetGraph::print() const {
  std::string out;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    out += "s " + ids_[i].str() + " ";
    for (std::size_t j = 0; j < lemmas_[i].size(); ++j) {
      if (j) out += ",";
      out += lemmas_[i][j];
    }
    out += "\n";
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    for (const auto &e : out_[i]) {
      out += "e " + ids_[i].str() + " " + ids_[e.to].str() + " " +
             std::string(relation_name(e.relation));
      if (e.weight) out += " " + format_weight(*e.weight);
      out += "\n";
    }
  }
  return out;
}

}  // namespace kalm
