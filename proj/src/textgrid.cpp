// sonolab/textgrid.cpp
//
// Copyright 2026  The Sonolab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sonolab/textgrid.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "sonolab/errors.hpp"

namespace sonolab {

namespace {

// Both TextGrid text forms reduce to one stream of values: numbers, quoted
// strings, and <flags>. Long-form keys, '=', ':' and bracketed indices are
// syntax noise around the same value sequence the short form writes bare.
struct Token {
  enum Kind { number, string, flag, end } kind = end;
  double num = 0.0;
  std::string text;  // string payload or flag name
  int line = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) {}

  Token next() {
    for (;;) {
      skip_space();
      if (pos_ >= s_.size()) return Token{Token::end, 0.0, "", line_};
      char c = s_[pos_];
      if (c == '"') return lex_string();
      if (c == '<') return lex_flag();
      if (c == '[') {
        skip_brackets();
        continue;
      }
      if (c == '=' || c == ':') {
        ++pos_;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
          c == '+' || c == '.') {
        return lex_number();
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        lex_keyword();
        continue;
      }
      throw Error(Errc::syntax_error, "line " + std::to_string(line_) +
                                          ": unexpected character '" +
                                          std::string(1, c) + "'");
    }
  }

 private:
  void skip_space() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Token lex_number() {
    int line = line_;
    const char* start = s_.c_str() + pos_;
    char* endp = nullptr;
    double v = std::strtod(start, &endp);
    if (endp == start || !std::isfinite(v))
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(line) + ": malformed number");
    pos_ += static_cast<std::size_t>(endp - start);
    return Token{Token::number, v, "", line};
  }

  Token lex_string() {
    int line = line_;
    ++pos_;  // opening quote
    std::string out;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '"') {
        if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '"') {
          out.push_back('"');  // doubled quote escape
          pos_ += 2;
        } else {
          ++pos_;
          return Token{Token::string, 0.0, out, line};
        }
      } else {
        if (c == '\n') ++line_;
        out.push_back(c);
        ++pos_;
      }
    }
    throw Error(Errc::syntax_error,
                "line " + std::to_string(line) + ": unterminated string");
  }

  Token lex_flag() {
    int line = line_;
    std::size_t close = s_.find('>', pos_);
    if (close == std::string::npos)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(line) + ": unterminated <flag>");
    std::string name = s_.substr(pos_ + 1, close - pos_ - 1);
    pos_ = close + 1;
    return Token{Token::flag, 0.0, name, line};
  }

  void skip_brackets() {
    int line = line_;
    std::size_t close = s_.find(']', pos_);
    if (close == std::string::npos)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(line) + ": unterminated '['");
    for (std::size_t i = pos_; i < close; ++i)
      if (s_[i] == '\n') ++line_;
    pos_ = close + 1;
  }

  void lex_keyword() {
    static const std::set<std::string> known = {
        "File", "type", "Object", "class",  "xmin", "xmax",   "tiers?",
        "size", "item", "intervals", "points", "text", "name", "number",
        "mark", "tiers"};
    int line = line_;
    std::string word;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '?' || c == '_') {
        word.push_back(c);
        ++pos_;
      } else {
        break;
      }
    }
    if (!known.count(word))
      throw Error(Errc::syntax_error, "line " + std::to_string(line) +
                                          ": unknown keyword '" + word + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { advance(); }

  std::vector<Tier> parse() {
    expect_header_string("ooTextFile");
    expect_header_string("TextGrid");
    take_number("global xmin");
    take_number("global xmax");

    Token flag = take(Token::flag, "tiers? flag");
    if (flag.text == "absent") return {};
    if (flag.text != "exists")
      throw Error(Errc::syntax_error, "line " + std::to_string(flag.line) +
                                          ": expected <exists> or <absent>");

    double size_v = take_number("tier count");
    int n_tiers = require_count(size_v, "tier count");
    std::vector<Tier> tiers;
    tiers.reserve(static_cast<std::size_t>(n_tiers));
    for (int i = 0; i < n_tiers; ++i) tiers.push_back(parse_tier());

    if (cur_.kind != Token::end)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(cur_.line) +
                      ": trailing content after last tier");
    return tiers;
  }

 private:
  Tier parse_tier() {
    Token cls = take(Token::string, "tier class");
    if (cls.text == "TextTier")
      throw Error(Errc::point_tier_unsupported,
                  "line " + std::to_string(cls.line) +
                      ": point tiers are not supported");
    if (cls.text != "IntervalTier")
      throw Error(Errc::syntax_error, "line " + std::to_string(cls.line) +
                                          ": unknown tier class \"" +
                                          cls.text + "\"");
    Tier tier;
    tier.name = take(Token::string, "tier name").text;
    take_number("tier xmin");
    take_number("tier xmax");
    int n = require_count(take_number("interval count"), "interval count");

    double prev_end = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      Token t_min = take(Token::number, "interval xmin");
      double xmin = t_min.num;
      double xmax = take_number("interval xmax");
      std::string label = take(Token::string, "interval text").text;
      if (!(xmin < xmax))
        throw Error(Errc::non_monotone_intervals,
                    "line " + std::to_string(t_min.line) +
                        ": interval has xmin >= xmax");
      if (xmin < prev_end - 1e-9)
        throw Error(Errc::non_monotone_intervals,
                    "line " + std::to_string(t_min.line) +
                        ": interval overlaps its predecessor");
      prev_end = xmax;
      tier.segments.push_back(Segment{label, xmin, xmax, tier.name});
    }
    return tier;
  }

  void expect_header_string(const std::string& want) {
    Token t = take(Token::string, "header");
    if (t.text != want)
      throw Error(Errc::syntax_error, "line " + std::to_string(t.line) +
                                          ": expected \"" + want +
                                          "\", got \"" + t.text + "\"");
  }

  int require_count(double v, const std::string& what) {
    if (v < 0 || v != std::floor(v) || v > 1e9)
      throw Error(Errc::syntax_error, "line " + std::to_string(cur_.line) +
                                          ": bad " + what);
    return static_cast<int>(v);
  }

  double take_number(const std::string& what) {
    return take(Token::number, what).num;
  }

  Token take(Token::Kind kind, const std::string& what) {
    if (cur_.kind != kind) {
      std::string where = cur_.kind == Token::end
                              ? "at end of document"
                              : "line " + std::to_string(cur_.line);
      throw Error(Errc::syntax_error, where + ": expected " + what);
    }
    Token t = cur_;
    advance();
    return t;
  }

  void advance() { cur_ = lex_.next(); }

  Lexer lex_;
  Token cur_;
};

std::string fmt_time(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out.push_back(c);
    if (c == '"') out.push_back('"');
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::vector<Tier> parse_textgrid(const std::string& text) {
  return Parser(text).parse();
}

std::string serialize_textgrid(const std::vector<Tier>& tiers) {
  double gmin = 0.0, gmax = 0.0;
  bool first = true;
  for (const Tier& t : tiers) {
    for (const Segment& s : t.segments) {
      if (first || s.start_s < gmin) gmin = s.start_s;
      if (first || s.end_s > gmax) gmax = s.end_s;
      first = false;
    }
  }

  std::ostringstream out;
  out << "File type = \"ooTextFile\"\n";
  out << "Object class = \"TextGrid\"\n\n";
  out << "xmin = " << fmt_time(gmin) << "\n";
  out << "xmax = " << fmt_time(gmax) << "\n";
  if (tiers.empty()) {
    out << "tiers? <absent>\n";
    return out.str();
  }
  out << "tiers? <exists>\n";
  out << "size = " << tiers.size() << "\n";
  out << "item []:\n";
  for (std::size_t i = 0; i < tiers.size(); ++i) {
    const Tier& t = tiers[i];
    double tmin = t.segments.empty() ? gmin : t.segments.front().start_s;
    double tmax = t.segments.empty() ? gmax : t.segments.back().end_s;
    out << "    item [" << (i + 1) << "]:\n";
    out << "        class = \"IntervalTier\"\n";
    out << "        name = " << quote(t.name) << "\n";
    out << "        xmin = " << fmt_time(tmin) << "\n";
    out << "        xmax = " << fmt_time(tmax) << "\n";
    out << "        intervals: size = " << t.segments.size() << "\n";
    for (std::size_t j = 0; j < t.segments.size(); ++j) {
      const Segment& s = t.segments[j];
      out << "        intervals [" << (j + 1) << "]:\n";
      out << "            xmin = " << fmt_time(s.start_s) << "\n";
      out << "            xmax = " << fmt_time(s.end_s) << "\n";
      out << "            text = " << quote(s.label) << "\n";
    }
  }
  return out.str();
}

std::vector<Segment> parse_tsv_annotations(const std::string& text) {
  std::vector<Segment> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') continue;

    std::vector<std::string> cols;
    std::size_t pos = 0;
    for (;;) {
      std::size_t tab = line.find('\t', pos);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(pos));
        break;
      }
      cols.push_back(line.substr(pos, tab - pos));
      pos = tab + 1;
    }
    if (cols.size() != 4)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(lineno) + ": expected 4 columns, got " +
                      std::to_string(cols.size()));

    auto parse_time = [&](const std::string& s, const char* what) {
      char* endp = nullptr;
      double v = std::strtod(s.c_str(), &endp);
      if (endp == s.c_str() || *endp != '\0' || !std::isfinite(v))
        throw Error(Errc::syntax_error, "line " + std::to_string(lineno) +
                                            ": non-numeric " + what);
      return v;
    };
    double start = parse_time(cols[2], "start time");
    double end = parse_time(cols[3], "end time");
    if (start < 0.0)
      throw Error(Errc::syntax_error,
                  "line " + std::to_string(lineno) + ": negative start time");
    if (end <= start)
      throw Error(Errc::negative_duration,
                  "line " + std::to_string(lineno) + ": end <= start");
    out.push_back(Segment{cols[1], start, end, cols[0]});
  }
  return out;
}

std::string serialize_tsv_annotations(const std::vector<Segment>& segments) {
  std::ostringstream out;
  for (const Segment& s : segments) {
    out << s.tier << '\t' << s.label << '\t' << fmt_time(s.start_s) << '\t'
        << fmt_time(s.end_s) << '\n';
  }
  return out.str();
}

}  // namespace sonolab
