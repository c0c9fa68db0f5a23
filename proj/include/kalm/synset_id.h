#ifndef KALM_SYNSET_ID_H_
#define KALM_SYNSET_ID_H_

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace kalm {

// BabelNet-style synset identifier: `bn:` + 8 digits + one of n,v,a,r.
class SynsetId {
 public:
  SynsetId() = default;

  static bool valid(std::string_view text);
  static std::optional<SynsetId> parse(std::string_view text);
  // Throws BadSynsetId.
  static SynsetId from(std::string_view text);

  const std::string &str() const { return id_; }
  bool empty() const { return id_.empty(); }

  friend auto operator<=>(const SynsetId &, const SynsetId &) = default;

 private:
  explicit SynsetId(std::string id) : id_(std::move(id)) {}
  std::string id_;
};

}  // namespace kalm

template <>
struct std::hash<kalm::SynsetId> {
  std::size_t operator()(const kalm::SynsetId &s) const noexcept {
    return std::hash<std::string>()(s.str());
  }
};

#endif  // KALM_SYNSET_ID_H_
