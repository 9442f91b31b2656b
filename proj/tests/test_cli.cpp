#include <string>

#include <doctest.h>
#include <json.hpp>

#include "rlz/bytes.hpp"
#include "rlz/corpus.hpp"
#include "oracles.hpp"

using json = nlohmann::json;
using oracle::run_cli;

namespace {

json parse_json(const std::string& text) { return json::parse(text); }

struct CliFixture {
  oracle::TempDir tmp;
  std::string corpus_path;
  std::string archive_path;

  CliFixture() {
    corpus_path = tmp.file("corpus.dat");
    auto r = run_cli("gen --out " + corpus_path + " --size 256KiB --seed 42");
    REQUIRE(r.exit_code == 0);
    archive_path = tmp.file("a.rlza");
    r = run_cli("build " + corpus_path + " --out " + archive_path +
                " --scheme RLZ_ZZ --dict-size 32KiB --manifest");
    REQUIRE(r.exit_code == 0);
  }
};

}  // namespace

TEST_CASE("gen writes the exact size and is reproducible") {
  oracle::TempDir tmp;
  const std::string p1 = tmp.file("one.dat");
  const std::string p2 = tmp.file("two.dat");
  CHECK(run_cli("gen --out " + p1 + " --size 100000 --seed 5").exit_code == 0);
  CHECK(run_cli("gen --out " + p2 + " --size 100000 --seed 5").exit_code == 0);
  const std::string a = oracle::read_file(p1);
  CHECK(a.size() == 100000);
  CHECK(a == oracle::read_file(p2));
  CHECK(a == rlz::generate_corpus({100000, 5, 10.0, 1 << 20}));
}

TEST_CASE("build emits rate and share statistics") {
  CliFixture f;
  const auto r = run_cli("build " + f.corpus_path + " --out " +
                         f.tmp.file("s.rlza") +
                         " --scheme RLZ_PV --dict-size 32KiB --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = parse_json(r.out);
  CHECK(doc["scheme"] == "RLZ_PV");
  CHECK(doc["source_length"] == 256 * 1024);
  CHECK(doc["block_count"] == 16);
  CHECK(doc["compression_rate_percent"].get<double>() > 0.0);
  CHECK(doc["dict_share_percent"].get<double>() ==
        doctest::Approx(100.0 * 32768 / 262144));
  CHECK(doc["file_bytes"].get<uint64_t>() ==
        oracle::read_file(f.tmp.file("s.rlza")).size());
}

TEST_CASE("identical build configurations produce identical archives") {
  CliFixture f;
  const std::string again = f.tmp.file("again.rlza");
  const auto r = run_cli("build " + f.corpus_path + " --out " + again +
                         " --scheme RLZ_ZZ --dict-size 32KiB --manifest");
  REQUIRE(r.exit_code == 0);
  CHECK(oracle::read_file(again) == oracle::read_file(f.archive_path));
}

TEST_CASE("COPY build never shrinks below the source") {
  CliFixture f;
  const auto r = run_cli("build " + f.corpus_path + " --out " +
                         f.tmp.file("c.rlza") + " --scheme COPY --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = parse_json(r.out);
  CHECK(doc["file_bytes"].get<uint64_t>() >= 256 * 1024);
}

TEST_CASE("extract reproduces ranges and documents") {
  CliFixture f;
  const std::string corpus = oracle::read_file(f.corpus_path);

  const std::string out = f.tmp.file("frag.bin");
  auto r = run_cli("extract " + f.archive_path +
                   " --start 30000 --len 40000 --out " + out);
  REQUIRE(r.exit_code == 0);
  CHECK(oracle::read_file(out) == corpus.substr(30000, 40000));

  const std::string whole = f.tmp.file("whole.bin");
  r = run_cli("extract " + f.archive_path + " --doc " + f.corpus_path +
              " --out " + whole);
  REQUIRE(r.exit_code == 0);
  CHECK(oracle::read_file(whole) == corpus);

  r = run_cli("extract " + f.archive_path + " --doc nope --out " + out);
  CHECK(r.exit_code == 2);
  r = run_cli("extract " + f.archive_path + " --start 0 --len 999MiB --out " +
              out);
  CHECK(r.exit_code == 2);
}

TEST_CASE("bench reports are structurally sound and seed-stable") {
  CliFixture f;
  const std::string cmd = "bench " + f.archive_path +
                          " --mode batch --queries 200 --fragment 4KiB "
                          "--seed 3 --format json";
  const auto a = run_cli(cmd);
  REQUIRE(a.exit_code == 0);
  const json da = parse_json(a.out);
  CHECK(da["mode"] == "BATCH");
  CHECK(da["queries_sorted"] == true);
  CHECK(da["query_count"] == 200);
  CHECK(da["fragment_size"] == 4096);
  CHECK(da["bytes_decoded"] == 200 * 4096);

  const auto b = run_cli(cmd);
  REQUIRE(b.exit_code == 0);
  CHECK(parse_json(b.out)["result_hash"] == da["result_hash"]);

  const auto rnd = run_cli("bench " + f.archive_path +
                           " --mode random --queries 200 --fragment 4KiB "
                           "--seed 3 --format json");
  REQUIRE(rnd.exit_code == 0);
  const json dr = parse_json(rnd.out);
  CHECK(dr["queries_sorted"] == false);
  CHECK(dr["result_hash"] == da["result_hash"]);
}

TEST_CASE("bench cache-drop hook is driven by the environment variable") {
  CliFixture f;
  const std::string marker = f.tmp.file("dropped");
  const std::string cmd = "RLZ_ARC_DROP_CACHE='touch " + marker + "' " +
                          RLZ_ARC_BIN_PATH + " bench " + f.archive_path +
                          " --mode random --queries 5 --fragment 4KiB >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(oracle::read_file(marker).empty());
}

TEST_CASE("stat component sizes sum to the file size") {
  CliFixture f;
  const auto r = run_cli("stat " + f.archive_path + " --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = parse_json(r.out);
  const uint64_t total = doc["header_bytes"].get<uint64_t>() +
                         doc["payload_bytes"].get<uint64_t>() +
                         doc["dict_record_bytes"].get<uint64_t>() +
                         doc["table_bytes"].get<uint64_t>() +
                         doc["manifest_bytes"].get<uint64_t>();
  CHECK(total == doc["file_bytes"].get<uint64_t>());
  CHECK(doc["doc_count"] == 1);
  CHECK(doc["scheme"] == "RLZ_ZZ");
  CHECK(doc["factor_entries"].get<uint64_t>() > 0);
  const double mean = doc["mean_factor_length"].get<double>();
  CHECK(mean == doctest::Approx(256.0 * 1024 /
                                doc["factor_entries"].get<double>()));
}

TEST_CASE("stat mean factor length approaches block size when dict == corpus") {
  oracle::TempDir tmp;
  const std::string corpus_path = tmp.file("tiny.dat");
  REQUIRE(run_cli("gen --out " + corpus_path + " --size 64KiB --seed 8")
              .exit_code == 0);
  const std::string archive = tmp.file("tiny.rlza");
  REQUIRE(run_cli("build " + corpus_path + " --out " + archive +
                  " --scheme RLZ_UV --dict-size 64KiB")
              .exit_code == 0);
  const auto r = run_cli("stat " + archive + " --format json");
  REQUIRE(r.exit_code == 0);
  const json doc = parse_json(r.out);
  CHECK(doc["factor_entries"] == 4);  // one whole-block factor per block
  CHECK(doc["mean_factor_length"].get<double>() == doctest::Approx(16384.0));
}

TEST_CASE("model surfaces the three worked examples") {
  const auto hdd64 = run_cli(
      "model --media hdd --block-size 64KiB --fragment 16KiB --rate 0.22 "
      "--decode-rate 260e6 --batch-latency 4.5e-3 --format json");
  REQUIRE(hdd64.exit_code == 0);
  const json d1 = parse_json(hdd64.out);
  CHECK(d1["random"]["qps"].get<double>() == doctest::Approx(113.83).epsilon(0.01));
  CHECK(d1["random"]["decode_share_percent"].get<double>() < 3.0);
  CHECK(d1["batch"]["qps"].get<double>() == doctest::Approx(209.0).epsilon(0.01));

  const auto hdd512 = run_cli(
      "model --media hdd --block-size 512KiB --fragment 16KiB --rate 0.25 "
      "--decode-rate 300e6 --format json");
  REQUIRE(hdd512.exit_code == 0);
  const json d2 = parse_json(hdd512.out);
  CHECK(d2["random"]["total_seconds"].get<double>() ==
        doctest::Approx(10.3e-3).epsilon(0.02));
  CHECK(d2["random"]["qps"].get<double>() == doctest::Approx(97.1).epsilon(0.01));

  const auto ssd = run_cli(
      "model --media ssd --latency 0.1e-3 --block-size 64KiB --fragment "
      "16KiB --rate 0.22 --decode-rate 260e6 --format json");
  REQUIRE(ssd.exit_code == 0);
  const json d3 = parse_json(ssd.out);
  CHECK(d3["random"]["qps"].get<double>() == doctest::Approx(3294.9).epsilon(0.01));
  CHECK(d3["random"]["decode_share_percent"].get<double>() ==
        doctest::Approx(62.3).epsilon(0.01));
}

TEST_CASE("model arithmetic section reproduces the layout numbers") {
  const auto r = run_cli(
      "model --media hdd --block-size 16KiB --fragment 16KiB --arithmetic "
      "--dict-size 64MiB --corpus-size 64GiB --mean-factor-length 20 "
      "--table-entries 4194304 --format json");
  REQUIRE(r.exit_code == 0);
  const json a = parse_json(r.out)["arithmetic"];
  CHECK(a["sample_count"] == 65536);
  CHECK(a["sample_interval"] == 1048576);
  CHECK(a["offset_bits"] == 26);
  CHECK(a["bits_per_factor"].get<double>() == doctest::Approx(34.0));
  CHECK(a["block_payload_kib"].get<double>() == doctest::Approx(3.4));
  CHECK(a["table_mib"].get<double>() == doctest::Approx(17.0));
}

TEST_CASE("verify succeeds on good archives and fails on mismatches") {
  CliFixture f;
  auto r = run_cli("verify " + f.archive_path + " " + f.corpus_path +
                   " --format json");
  REQUIRE(r.exit_code == 0);
  CHECK(parse_json(r.out)["ok"] == true);

  const std::string other = f.tmp.file("other.dat");
  REQUIRE(run_cli("gen --out " + other + " --size 256KiB --seed 77")
              .exit_code == 0);
  r = run_cli("verify " + f.archive_path + " " + other);
  CHECK(r.exit_code == 3);
}

TEST_CASE("exit codes follow the documented taxonomy") {
  CliFixture f;
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("bench " + f.archive_path + " --mode sideways").exit_code == 2);
  CHECK(run_cli("build " + f.corpus_path + " --out " + f.tmp.file("x") +
                " --scheme RLZ_ZZ")
            .exit_code == 2);  // missing --dict-size

  const std::string junk = f.tmp.file("junk.rlza");
  oracle::write_file(junk, std::string(500, 'j'));
  CHECK(run_cli("stat " + junk).exit_code == 3);
}

TEST_CASE("build concatenates multiple inputs in argument order") {
  oracle::TempDir tmp;
  const std::string a = tmp.file("a.dat");
  const std::string b = tmp.file("b.dat");
  REQUIRE(run_cli("gen --out " + a + " --size 100000 --seed 1").exit_code == 0);
  REQUIRE(run_cli("gen --out " + b + " --size 60000 --seed 2").exit_code == 0);
  const std::string archive = tmp.file("cat.rlza");
  REQUIRE(run_cli("build " + a + " " + b + " --out " + archive +
                  " --scheme RLZ_PV --dict-size 16KiB --manifest")
              .exit_code == 0);

  const std::string out = tmp.file("b_back.bin");
  REQUIRE(run_cli("extract " + archive + " --doc " + b + " --out " + out)
              .exit_code == 0);
  CHECK(oracle::read_file(out) == oracle::read_file(b));

  const std::string all = tmp.file("all.bin");
  REQUIRE(run_cli("extract " + archive + " --start 0 --len 160000 --out " +
                  all)
              .exit_code == 0);
  CHECK(oracle::read_file(all) ==
        oracle::read_file(a) + oracle::read_file(b));
}
