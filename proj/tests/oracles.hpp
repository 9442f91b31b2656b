#pragma once
// Reference implementations the unit tests check the real code against, plus
// shared fixtures (temp files, CLI runner, seeded text generators).

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <sys/wait.h>

#include "rlz/dictionary.hpp"
#include "rlz/errors.hpp"
#include "rlz/factorize.hpp"
#include "rlz/rng.hpp"

namespace oracle {

// O(|D|*|s|) scan; a longer match replaces, an equal-length one never does,
// so the smallest offset wins ties by construction.
inline rlz::DictionaryIndex::Match longest_match(std::string_view dict,
                                                 std::string_view s) {
  rlz::DictionaryIndex::Match best;
  for (size_t off = 0; off < dict.size(); ++off) {
    size_t len = 0;
    while (len < s.size() && off + len < dict.size() &&
           dict[off + len] == s[len]) {
      ++len;
    }
    if (len > best.length) {
      best = {static_cast<uint32_t>(off), static_cast<uint32_t>(len)};
    }
  }
  return best;
}

// Greedy parse written straight from the contract, on top of the scan above.
inline rlz::FactorStreams parse(std::string_view dict, std::string_view block,
                                rlz::FactorizeMode mode, uint32_t min_literal) {
  rlz::FactorStreams fs;
  fs.mode = mode;
  fs.min_literal =
      mode == rlz::FactorizeMode::kThreeStream ? min_literal : 1;
  fs.block_len = static_cast<uint32_t>(block.size());
  size_t pos = 0;
  uint32_t run = 0;
  const auto flush = [&] {
    if (run > 0) {
      fs.offsets.push_back(run);
      fs.lengths.push_back(0);
      run = 0;
    }
  };
  while (pos < block.size()) {
    const auto m = longest_match(dict, block.substr(pos));
    const auto take_len =
        std::min<size_t>(m.length, block.size() - pos);
    if (mode == rlz::FactorizeMode::kInterleaved) {
      if (take_len == 0) {
        fs.offsets.push_back(static_cast<unsigned char>(block[pos]));
        fs.lengths.push_back(0);
        ++pos;
      } else {
        fs.offsets.push_back(m.offset);
        fs.lengths.push_back(static_cast<uint32_t>(take_len));
        pos += take_len;
      }
    } else if (take_len < min_literal) {
      const size_t take = std::max<size_t>(1, take_len);
      fs.literals.append(block.substr(pos, take));
      run += static_cast<uint32_t>(take);
      pos += take;
    } else {
      flush();
      fs.offsets.push_back(m.offset);
      fs.lengths.push_back(static_cast<uint32_t>(take_len));
      pos += take_len;
    }
  }
  flush();
  return fs;
}

// Bit-by-bit LSB-first packer.
inline std::string pack_bits(const std::vector<uint32_t>& values,
                             uint32_t width) {
  std::vector<bool> bits;
  for (const uint32_t v : values) {
    for (uint32_t b = 0; b < width; ++b) bits.push_back((v >> b) & 1u);
  }
  std::string out((bits.size() + 7) / 8, '\0');
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) out[i / 8] |= static_cast<char>(1u << (i % 8));
  }
  return out;
}

// Small alphabet so dictionary matches actually occur.
inline std::string matchy_text(std::mt19937_64& rng, size_t len,
                               unsigned alphabet = 4) {
  std::string s(len, '\0');
  for (auto& c : s) {
    c = static_cast<char>('a' + rlz::uniform_below(rng, alphabet));
  }
  return s;
}

inline std::string random_bytes(std::mt19937_64& rng, size_t len) {
  std::string s(len, '\0');
  for (auto& c : s) c = static_cast<char>(rlz::uniform_below(rng, 256));
  return s;
}

inline rlz::Dictionary wrap_dict(std::string data, uint32_t sample_size = 0) {
  rlz::Dictionary d;
  d.sample_size =
      sample_size ? sample_size : static_cast<uint32_t>(data.size());
  d.source_length = data.size();
  d.data = std::move(data);
  d.sample_interval = d.data.size();
  return d;
}

// Self-cleaning scratch directory.
struct TempDir {
  std::string path;

  TempDir() {
    std::string tmpl = "/tmp/rlz_test_XXXXXX";
    if (mkdtemp(tmpl.data()) == nullptr) {
      throw rlz::IoError("mkdtemp failed");
    }
    path = tmpl;
  }
  ~TempDir() {
    const std::string cmd = "rm -rf '" + path + "'";
    if (std::system(cmd.c_str()) != 0) {
      std::fprintf(stderr, "warning: failed to clean %s\n", path.c_str());
    }
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return path + "/" + name; }
};

inline void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw rlz::IoError("write failed: " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rlz::IoError("open failed: " + path);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return data;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the rlz-arc binary with stderr folded into the captured stream.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RLZ_ARC_BIN_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw rlz::IoError("popen failed");
  CliResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  r.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace oracle
