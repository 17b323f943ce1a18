// Copyright 2026 The pipemap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pipemap/instance_io.h"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pipemap/error.h"

namespace pipemap {
namespace {

std::vector<std::string_view> SplitWords(std::string_view line) {
  std::vector<std::string_view> words;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
           line[j] != '\r') {
      ++j;
    }
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

[[noreturn]] void ParseFail(int line_no, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line_no) + ": " + what);
}

double ParseDouble(std::string_view word, int line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(),
                                   value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    ParseFail(line_no, "not a number: '" + std::string(word) + "'");
  }
  return value;
}

int ParseInt(std::string_view word, int line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(),
                                   value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    ParseFail(line_no, "not an integer: '" + std::string(word) + "'");
  }
  return value;
}

int ParseIndex(std::string_view word, std::string_view token) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(),
                                   value);
  if (word.empty() || ec != std::errc() ||
      ptr != word.data() + word.size()) {
    throw Error(ErrorCode::kParseError,
                "bad mapping token '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Instance ParseInstance(std::string_view text) {
  std::map<std::string, std::vector<std::string_view>, std::less<>> fields;
  std::map<std::string, int, std::less<>> field_line;
  bool saw_header = false;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string_view> words = SplitWords(line);
    if (words.empty()) continue;
    if (!saw_header) {
      if (words.size() != 2 || words[0] != "pipeline" || words[1] != "v1") {
        ParseFail(line_no, "expected header 'pipeline v1'");
      }
      saw_header = true;
      continue;
    }
    const std::string key(words[0]);
    if (key != "n" && key != "b" && key != "delta" && key != "w" &&
        key != "p" && key != "s") {
      ParseFail(line_no, "unknown key '" + key + "'");
    }
    if (fields.count(key) != 0) ParseFail(line_no, "duplicate key '" + key + "'");
    fields[key].assign(words.begin() + 1, words.end());
    field_line[key] = line_no;
  }
  if (!saw_header) ParseFail(line_no, "missing header 'pipeline v1'");
  for (const char* key : {"n", "b", "delta", "w", "p", "s"}) {
    if (fields.count(key) == 0) {
      ParseFail(line_no, std::string("missing key '") + key + "'");
    }
  }
  auto scalar = [&](const char* key) {
    if (fields[key].size() != 1) {
      ParseFail(field_line[key], std::string("'") + key +
                                     "' takes exactly one value");
    }
    return fields[key][0];
  };
  auto reals = [&](const char* key, int expected) {
    const auto& words = fields[key];
    if (static_cast<int>(words.size()) != expected) {
      ParseFail(field_line[key], std::string("'") + key + "' expects " +
                                     std::to_string(expected) + " values, got " +
                                     std::to_string(words.size()));
    }
    std::vector<double> out;
    out.reserve(words.size());
    for (std::string_view w : words) out.push_back(ParseDouble(w, field_line[key]));
    return out;
  };

  const int n = ParseInt(scalar("n"), field_line["n"]);
  const int p = ParseInt(scalar("p"), field_line["p"]);
  if (n < 1) ParseFail(field_line["n"], "n must be positive");
  if (p < 1) ParseFail(field_line["p"], "p must be positive");

  Instance inst;
  inst.platform.bandwidth = ParseDouble(scalar("b"), field_line["b"]);
  inst.app.delta = reals("delta", n + 1);
  inst.app.work = reals("w", n);
  inst.platform.speeds = reals("s", p);
  ValidateApp(inst.app);
  ValidatePlatform(inst.platform);
  return inst;
}

Instance ReadInstanceFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseInstance(buf.str());
}

std::string FormatReal(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string FormatInstance(const PipelineApp& app, const Platform& platform) {
  std::string out = "pipeline v1\n";
  out += "n " + std::to_string(app.stages()) + "\n";
  out += "b " + FormatReal(platform.bandwidth) + "\n";
  out += "delta";
  for (double d : app.delta) out += " " + FormatReal(d);
  out += "\nw";
  for (double w : app.work) out += " " + FormatReal(w);
  out += "\np " + std::to_string(platform.processors()) + "\n";
  out += "s";
  for (double s : platform.speeds) out += " " + FormatReal(s);
  out += "\n";
  return out;
}

void WriteInstanceFile(const std::filesystem::path& path,
                       const PipelineApp& app, const Platform& platform) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  }
  out << FormatInstance(app, platform);
}

IntervalMapping ParseMapping(std::string_view text) {
  std::vector<std::string_view> words = SplitWords(text);
  size_t start = 0;
  if (!words.empty() && words[0] == "map") start = 1;
  IntervalMapping mapping;
  for (size_t i = start; i < words.size(); ++i) {
    std::string_view tok = words[i];
    const size_t colon = tok.find(':');
    if (colon == std::string_view::npos) {
      throw Error(ErrorCode::kParseError,
                  "bad mapping token '" + std::string(tok) +
                      "', expected <first>-<last>:<proc>");
    }
    std::string_view range = tok.substr(0, colon);
    const int proc = ParseIndex(tok.substr(colon + 1), tok);
    Interval iv;
    if (const size_t dash = range.find('-'); dash != std::string_view::npos) {
      iv.first = ParseIndex(range.substr(0, dash), tok);
      iv.last = ParseIndex(range.substr(dash + 1), tok);
    } else {
      iv.first = iv.last = ParseIndex(range, tok);
    }
    mapping.intervals.push_back(iv);
    mapping.alloc.push_back(proc);
  }
  if (mapping.intervals.empty()) {
    throw Error(ErrorCode::kParseError, "mapping has no interval");
  }
  return mapping;
}

std::string FormatMapping(const IntervalMapping& mapping) {
  std::string out = "map";
  for (int j = 0; j < mapping.size(); ++j) {
    out += " " + std::to_string(mapping.intervals[j].first) + "-" +
           std::to_string(mapping.intervals[j].last) + ":" +
           std::to_string(mapping.alloc[j]);
  }
  return out;
}

}  // namespace pipemap
