#include "doctest.h"

#include <random>

#include "clausecut/segmenter.h"
#include "support/fixtures.h"
#include "support/random_corpus.h"

using namespace clausecut;
using fixtures::tagged;
using fixtures::toy_sentence;

TEST_SUITE("segmenter") {

TEST_CASE("segments of the Jane sentence") {
  const auto& s = toy_sentence(
      "When Jane goes to school , she takes a bus , walks 5 minutes and continues the journey on the rail .");
  auto seg = segment(s.tokens, s.roles);
  // Only the prosodic comma segments; the logical comma and "and" do not.
  REQUIRE(seg.size() == 2);
  CHECK(seg.segments[0] == Span{0, 5});
  CHECK(seg.linkwords[0].role == LinkWordRole::ProsodicComma);
  CHECK(seg.segments[1] == Span{6, s.size() - 1});
  CHECK(seg.final_linkword().index == s.size() - 1);
  CHECK_FALSE(seg.final_linkword().synthetic);
  CHECK(seg.segment_of(5) == -1);
  CHECK(seg.segment_of(7) == 1);
}

TEST_CASE("clausal links split the second ice-cream sentence") {
  const auto& s = toy_sentence("I like ice-cream , crave for hot-dogs but detest pies .");
  auto seg = segment(s.tokens, s.roles);
  REQUIRE(seg.size() == 3);
  CHECK(seg.segments[0] == Span{0, 3});
  CHECK(seg.segments[1] == Span{4, 7});
  CHECK(seg.segments[2] == Span{8, 10});
  CHECK(format_segmentation(s.tokens, seg) ==
        "I like ice-cream\nLW:\t,\tClausalConjunctiveComma\n"
        "crave for hot-dogs\nLW:\tbut\tClausalConjunction\n"
        "detest pies\nLW:\t.\tFinal\n");
}

TEST_CASE("missing final punctuation gets a synthetic link word") {
  auto tokens = tagged("she/PRP sings/VBZ");
  std::vector<LinkWordRole> roles(2, LinkWordRole::NotLinkWord);
  auto seg = segment(tokens, roles);
  REQUIRE(seg.size() == 1);
  CHECK(seg.segments[0] == Span{0, 2});
  CHECK(seg.final_linkword() == LinkWord{2, LinkWordRole::NotLinkWord, true});
  CHECK(seg.flatten() == std::vector<int>{0, 1});
  CHECK(format_segmentation(tokens, seg) == "she sings\nLW:\t.\tFinal\n");
}

TEST_CASE("adjacent link words give empty segments") {
  auto tokens = tagged("he/PRP left/VBD ,/, and/CC she/PRP stayed/VBD ./.");
  std::vector<LinkWordRole> roles(tokens.size(), LinkWordRole::NotLinkWord);
  roles[2] = LinkWordRole::ProsodicComma;
  roles[3] = LinkWordRole::ClausalConjunction;
  auto seg = segment(tokens, roles);
  REQUIRE(seg.size() == 3);
  CHECK(seg.segments[1].empty());
  CHECK(seg.non_empty_count() == 2);
  CHECK(format_segmentation(tokens, seg) ==
        "he left\nLW:\t,\tProsodicComma\n\nLW:\tand\tClausalConjunction\nshe stayed\nLW:\t.\tFinal\n");
}

TEST_CASE("a sentence-final link word leaves an empty last segment") {
  auto tokens = tagged("because/IN ./.");
  std::vector<LinkWordRole> roles = {LinkWordRole::SubordinatingPreposition, LinkWordRole::NotLinkWord};
  auto seg = segment(tokens, roles);
  REQUIRE(seg.size() == 2);
  CHECK(seg.segments[0].empty());
  CHECK(seg.segments[1].empty());
  CHECK(seg.non_empty_count() == 0);
}

TEST_CASE("role count must match") {
  auto tokens = tagged("a/DT b/NN");
  std::vector<LinkWordRole> roles(1, LinkWordRole::NotLinkWord);
  CHECK_THROWS_AS(segment(tokens, roles), std::invalid_argument);
}

TEST_CASE("flattening restores the token order") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> tags = {"NN", "VBZ", ",", "CC", "IN", "DT", "."};
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<std::string> forms, pos;
    std::vector<LinkWordRole> roles;
    for (int i = 0; i < n; ++i) {
      pos.push_back(tags[rng() % tags.size()]);
      forms.push_back("w" + std::to_string(i));
      LinkWordRole r = LinkWordRole::NotLinkWord;
      if (pos.back() == ",") r = static_cast<LinkWordRole>(rng() % 3);
      else if (pos.back() == "CC") r = rng() % 2 ? LinkWordRole::ClausalConjunction : LinkWordRole::LogicalConjunction;
      else if (pos.back() == "IN") r = rng() % 2 ? LinkWordRole::SubordinatingPreposition
                                                 : LinkWordRole::NonSegmentingPreposition;
      roles.push_back(r);
    }
    auto tokens = make_tokens(forms, pos);
    auto seg = segment(tokens, roles);
    std::vector<int> expected(n);
    for (int i = 0; i < n; ++i) expected[i] = i;
    CHECK(seg.flatten() == expected);
    const int body_end = pos[n - 1] == "." ? n - 1 : n;
    int segmenting = 0;
    for (int i = 0; i < body_end; ++i) segmenting += is_segmenting(roles[i]);
    CHECK(seg.size() == segmenting + 1);
    CHECK(seg.linkwords.size() == seg.segments.size());
    CHECK(seg.final_linkword().synthetic == (pos[n - 1] != "."));
    for (int s = 0; s + 1 < seg.size(); ++s) CHECK(is_segmenting(seg.linkwords[s].role));
  }
}

}  // TEST_SUITE
