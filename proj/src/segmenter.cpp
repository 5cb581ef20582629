#include "clausecut/segmenter.h"

#include <stdexcept>

#include "clausecut/tagset.h"

namespace clausecut {

int SegmentedSentence::segment_of(int token) const {
  for (int s = 0; s < size(); ++s)
    if (segments[s].contains(token)) return s;
  return -1;
}

int SegmentedSentence::non_empty_count() const {
  int count = 0;
  for (const auto& s : segments) count += !s.empty();
  return count;
}

std::vector<int> SegmentedSentence::flatten() const {
  std::vector<int> order;
  for (int s = 0; s < size(); ++s) {
    for (int i = segments[s].begin; i < segments[s].end; ++i) order.push_back(i);
    if (!linkwords[s].synthetic) order.push_back(linkwords[s].index);
  }
  return order;
}

SegmentedSentence segment(std::span<const Token> sentence, std::span<const LinkWordRole> roles) {
  if (roles.size() != sentence.size()) throw std::invalid_argument("segment: one role per token required");
  const int n = static_cast<int>(sentence.size());
  SegmentedSentence out;
  out.token_count = n;
  const bool has_final = n > 0 && sentence[n - 1].pos == kFinalTag;
  const int body_end = has_final ? n - 1 : n;
  int begin = 0;
  for (int i = 0; i < body_end; ++i) {
    if (!is_segmenting(roles[i])) continue;
    out.segments.push_back({begin, i});
    out.linkwords.push_back({i, roles[i], false});
    begin = i + 1;
  }
  out.segments.push_back({begin, body_end});
  if (has_final) out.linkwords.push_back({n - 1, LinkWordRole::NotLinkWord, false});
  else out.linkwords.push_back({n, LinkWordRole::NotLinkWord, true});
  return out;
}

std::string format_segmentation(std::span<const Token> sentence, const SegmentedSentence& seg) {
  std::string out;
  for (int s = 0; s < seg.size(); ++s) {
    for (int i = seg.segments[s].begin; i < seg.segments[s].end; ++i) {
      if (i > seg.segments[s].begin) out += ' ';
      out += sentence[i].form;
    }
    out += '\n';
    const auto& lw = seg.linkwords[s];
    out += "LW:\t";
    out += lw.synthetic ? std::string(".") : sentence[lw.index].form;
    out += '\t';
    out += s + 1 == seg.size() ? std::string("Final") : std::string(role_name(lw.role));
    out += '\n';
  }
  return out;
}

}  // namespace clausecut
