#include "kalm/synset_id.h"

#include <cctype>

#include "kalm/errors.h"

namespace kalm {

bool SynsetId::valid(std::string_view text) {
  if (text.size() != 12 || text.substr(0, 3) != "bn:") return false;
  for (std::size_t i = 3; i < 11; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  const char tag = text[11];
  return tag == 'n' || tag == 'v' || tag == 'a' || tag == 'r';
}

std::optional<SynsetId> SynsetId::parse(std::string_view text) {
  if (!valid(text)) return std::nullopt;
  return SynsetId(std::string(text));
}

SynsetId SynsetId::from(std::string_view text) {
  if (!valid(text)) throw BadSynsetId(std::string(text));
  return SynsetId(std::string(text));
}

}  // namespace kalm
