#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "rlz/dictionary.hpp"
#include "rlz/errors.hpp"
#include "oracles.hpp"

using rlz::Dictionary;
using rlz::DictionaryIndex;
using rlz::MemorySource;

TEST_CASE("sample_layout reproduces the 64 GiB / 64 MiB geometry") {
  const auto layout = rlz::sample_layout(64ull << 30, 64ull << 20, 1024);
  CHECK(layout.sample_count == 65536);
  CHECK(layout.interval == 1048576);
}

TEST_CASE("sample_layout rejects bad geometry") {
  CHECK_THROWS_AS(rlz::sample_layout(1 << 20, 1000, 64), rlz::UsageError);
  CHECK_THROWS_AS(rlz::sample_layout(1 << 20, 0, 64), rlz::UsageError);
  CHECK_THROWS_AS(rlz::sample_layout(1 << 20, 1024, 0), rlz::UsageError);
}

TEST_CASE("build_dictionary covering the whole corpus returns the corpus") {
  std::mt19937_64 rng(3);
  const std::string corpus = oracle::random_bytes(rng, 4096);
  const Dictionary d = rlz::build_dictionary(MemorySource(corpus), 4096, 256);
  CHECK(d.data == corpus);
  CHECK(d.sample_interval == 256);
  CHECK(d.sample_count() == 16);
}

TEST_CASE("build_dictionary takes samples at the computed interval") {
  std::mt19937_64 rng(7);
  const std::string corpus = oracle::random_bytes(rng, 65536);
  const Dictionary d = rlz::build_dictionary(MemorySource(corpus), 1024, 64);
  REQUIRE(d.data.size() == 1024);
  CHECK(d.sample_count() == 16);
  CHECK(d.sample_interval == 4096);
  for (size_t i = 0; i < 16; ++i) {
    CHECK(d.data.substr(i * 64, 64) == corpus.substr(i * 4096, 64));
  }
}

TEST_CASE("build_dictionary zero-pads when the corpus is too short") {
  const std::string corpus = "abc";
  const Dictionary d = rlz::build_dictionary(MemorySource(corpus), 256, 64);
  REQUIRE(d.data.size() == 256);
  CHECK(d.sample_interval == 0);  // 3-byte corpus, 4 samples: all alias start
  for (size_t slot = 0; slot < 4; ++slot) {
    CHECK(d.data.substr(slot * 64, 3) == "abc");
    CHECK(d.data.substr(slot * 64 + 3, 61) == std::string(61, '\0'));
  }
}

TEST_CASE("build_dictionary is deterministic") {
  std::mt19937_64 rng(11);
  const std::string corpus = oracle::matchy_text(rng, 1 << 16);
  const Dictionary a = rlz::build_dictionary(MemorySource(corpus), 2048, 128);
  const Dictionary b = rlz::build_dictionary(MemorySource(corpus), 2048, 128);
  CHECK(a.data == b.data);
  CHECK(a.sample_interval == b.sample_interval);
}

TEST_CASE("suffix array of banana") {
  const auto sa = rlz::build_suffix_array("banana");
  CHECK(sa == std::vector<int32_t>{5, 3, 1, 0, 4, 2});
}

TEST_CASE("suffix array of aaaa puts shorter suffixes first") {
  const auto sa = rlz::build_suffix_array("aaaa");
  CHECK(sa == std::vector<int32_t>{3, 2, 1, 0});
}

TEST_CASE("suffix array of a single byte") {
  const auto sa = rlz::build_suffix_array(std::string(1, '\0'));
  CHECK(sa == std::vector<int32_t>{0});
}

TEST_CASE("suffix array matches std::sort order on random texts") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 20; ++round) {
    const size_t len = 1 + rlz::uniform_below(rng, 700);
    const std::string text = round % 2 == 0
                                 ? oracle::matchy_text(rng, len, 3)
                                 : oracle::random_bytes(rng, len);
    const auto sa = rlz::build_suffix_array(text);
    std::vector<int32_t> expect(len);
    for (size_t i = 0; i < len; ++i) expect[i] = static_cast<int32_t>(i);
    const std::string_view tv = text;
    std::stable_sort(expect.begin(), expect.end(),
                     [&](int32_t a, int32_t b) {
                       return tv.substr(a) < tv.substr(b);
                     });
    CAPTURE(round);
    REQUIRE(sa == expect);
  }
}

TEST_CASE("suffix array handles all 256 byte values unsigned") {
  std::string text;
  for (int b = 255; b >= 0; --b) text.push_back(static_cast<char>(b));
  const auto sa = rlz::build_suffix_array(text);
  // text is strictly decreasing, so suffixes sort in reverse start order
  for (size_t i = 0; i < sa.size(); ++i) {
    CHECK(sa[i] == static_cast<int32_t>(255 - i));
  }
}

TEST_CASE("index rejects an empty dictionary") {
  const Dictionary d = oracle::wrap_dict("");
  CHECK_THROWS_AS(DictionaryIndex{d}, rlz::UsageError);
}

TEST_CASE("longest_match on the abracadabra examples") {
  const Dictionary d = oracle::wrap_dict("abracadabra");
  const DictionaryIndex idx(d);

  auto m = idx.longest_match("abrabra");
  CHECK(m.offset == 0);
  CHECK(m.length == 4);

  m = idx.longest_match("bra");
  CHECK(m.offset == 1);
  CHECK(m.length == 3);
}

TEST_CASE("longest_match with no occurrence returns {0,0}") {
  const Dictionary d = oracle::wrap_dict("aaaa");
  const DictionaryIndex idx(d);
  const auto m = idx.longest_match("bbbb");
  CHECK(m.offset == 0);
  CHECK(m.length == 0);
}

TEST_CASE("longest_match of an empty string is empty") {
  const Dictionary d = oracle::wrap_dict("abc");
  const DictionaryIndex idx(d);
  const auto m = idx.longest_match("");
  CHECK(m.length == 0);
}

TEST_CASE("longest_match picks the smallest offset among ties") {
  // "ab" occurs at 0, 3 and 6; query cannot extend past length 2
  const Dictionary d = oracle::wrap_dict("abxabyabz");
  const DictionaryIndex idx(d);
  const auto m = idx.longest_match("abq");
  CHECK(m.length == 2);
  CHECK(m.offset == 0);
}

TEST_CASE("longest_match can use the final dictionary suffix") {
  const Dictionary d = oracle::wrap_dict("xyzzy");
  const DictionaryIndex idx(d);
  const auto m = idx.longest_match("zy!");
  CHECK(m.length == 2);
  CHECK(m.offset == 3);
}

TEST_CASE("longest_match agrees with the brute-force oracle") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 300; ++round) {
    const size_t dict_len = 1 + rlz::uniform_below(rng, 4096);
    const size_t q_len = rlz::uniform_below(rng, 513);
    const unsigned alphabet = 2 + static_cast<unsigned>(rlz::uniform_below(rng, 5));
    const Dictionary d =
        oracle::wrap_dict(oracle::matchy_text(rng, dict_len, alphabet));
    const DictionaryIndex idx(d);
    const std::string q = oracle::matchy_text(rng, q_len, alphabet);
    const auto got = idx.longest_match(q);
    const auto want = oracle::longest_match(d.data, q);
    CAPTURE(round);
    REQUIRE(got.length == want.length);
    REQUIRE(got.offset == want.offset);
  }
}

TEST_CASE("longest_match maximality on matchy queries") {
  std::mt19937_64 rng(29);
  const Dictionary d = oracle::wrap_dict(oracle::matchy_text(rng, 2000, 3));
  const DictionaryIndex idx(d);
  for (int round = 0; round < 200; ++round) {
    const std::string q = oracle::matchy_text(rng, 40, 3);
    const auto m = idx.longest_match(q);
    if (m.length > 0) {
      CHECK(d.data.find(q.substr(0, m.length)) != std::string::npos);
    }
    if (m.length < q.size()) {
      CHECK(d.data.find(q.substr(0, m.length + 1)) == std::string::npos);
    }
  }
}

TEST_CASE("suffix_order is exposed and is a permutation") {
  std::mt19937_64 rng(31);
  const Dictionary d = oracle::wrap_dict(oracle::matchy_text(rng, 512, 4));
  const DictionaryIndex idx(d);
  auto order = idx.suffix_order();
  REQUIRE(order.size() == d.data.size());
  std::sort(order.begin(), order.end());
  for (size_t i = 0; i < order.size(); ++i) {
    CHECK(order[i] == static_cast<int32_t>(i));
  }
}
