#include "doctest.h"

#include <random>
#include <sstream>

#include "clausecut/corpus.h"
#include "clausecut/errors.h"
#include "support/fixtures.h"

using namespace clausecut;

namespace {

std::vector<AnnotatedSentence> parse(const std::string& text) {
  std::istringstream in(text);
  return read_corpus(in, "test");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("reads a six-column sentence") {
  auto corpus = parse(
      "# sent 1\n"
      "0\tHe\tPRP\t1\t_\tB-NP\n"
      "1\tleft\tVBD\t2\t_\tO\n"
      "2\t.\t.\tROOT\t_\tO\n");
  REQUIRE(corpus.size() == 1);
  const auto& s = corpus[0];
  CHECK(s.comments == std::vector<std::string>{"# sent 1"});
  CHECK(s.governors == std::vector<int>{1, 2, kRoot});
  CHECK(s.has_chunks());
  CHECK(s.np_spans() == std::vector<NPSpan>{{0, 0}});
  CHECK(validate_tree(s.tree()).proper());
}

TEST_CASE("five columns and unannotated governors") {
  auto corpus = parse("0\tHe\tPRP\t_\t_\n1\tleft\tVBD\t_\t_\n\n0\tGo\tVB\tROOT\t_\n");
  REQUIRE(corpus.size() == 2);
  CHECK_FALSE(corpus[0].has_chunks());
  CHECK_FALSE(corpus[0].fully_attached());
  CHECK_THROWS_AS(corpus[0].tree(), InputError);
  CHECK(corpus[1].fully_attached());
}

TEST_CASE("errors name the line and column") {
  CHECK(error_of("0\tHe\tXYZ\t_\t_\n") == "test:1: column 3 (POS): unknown POS tag 'XYZ'");
  CHECK(error_of("0\tHe\tPRP\t_\t_\n2\tx\tNN\t_\t_\n") == "test:2: column 1 (INDEX): expected index 1, found 2");
  CHECK(error_of("0\tHe\tPRP\t0\t_\n") == "test:1: column 4 (GOVERNOR): token governs itself");
  CHECK(error_of("0\tHe\tPRP\t_\tProsodicComma\n") ==
        "test:1: column 5 (ROLE): role ProsodicComma cannot apply to tag PRP");
  CHECK(error_of("0\tHe\tPRP\t_\t_\tX\n") == "test:1: column 6 (BIO): unknown chunk tag 'X'");
  CHECK(error_of("0\tHe\tPRP\t_\n").find("expected 5 or 6") != std::string::npos);
  CHECK(error_of("0\tHe\tPRP\t_\t_\tO\n1\tx\tNN\t_\t_\n").find("column count changes") != std::string::npos);
  CHECK(error_of("0\tHe\tPRP\t5\t_\n").find("outside the sentence") != std::string::npos);
}

TEST_CASE("write then read is the identity") {
  const auto& corpus = fixtures::toy_corpus();
  std::ostringstream out;
  write_corpus(out, corpus);
  std::istringstream in(out.str());
  auto again = read_corpus(in);
  CHECK(again == corpus);
  std::ostringstream out2;
  write_corpus(out2, again);
  CHECK(out2.str() == out.str());
}

TEST_CASE("toy corpus is fully annotated with proper trees") {
  const auto& corpus = fixtures::toy_corpus();
  CHECK(corpus.size() >= 60);
  for (const auto& s : corpus) {
    CAPTURE(fixtures::text_of(s));
    CHECK(s.has_chunks());
    REQUIRE(s.fully_attached());
    CHECK(validate_tree(s.tree()).proper());
  }
}

TEST_CASE("BIO and spans convert both ways") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    std::vector<Bio> tags;
    for (int i = 0; i < n; ++i) {
      Bio t = static_cast<Bio>(rng() % 3);
      if (t == Bio::I && (i == 0 || tags.back() == Bio::O)) t = Bio::B;
      tags.push_back(t);
    }
    CHECK(bio_from_spans(spans_from_bio(tags), n) == tags);
  }
  std::vector<Bio> stray = {Bio::O, Bio::I, Bio::I};
  CHECK(spans_from_bio(stray) == std::vector<NPSpan>{{1, 2}});
}

}  // TEST_SUITE
