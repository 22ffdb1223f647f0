// Copyright 2026 The teasekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

namespace teasekit {

// Porter (1980) suffix stemmer, following the reference C implementation
// published by the algorithm's author (including its "bli" -> "ble" and
// "logi" -> "log" departures). Input must be lowercase ASCII letters;
// words of one or two letters are returned unchanged.
class PorterStemmer {
 public:
  std::string operator()(std::string_view word) const {
    State s{std::string(word), 0, 0};
    if (s.b.size() <= 2) return s.b;
    s.k = static_cast<int>(s.b.size()) - 1;
    step1ab(s);
    if (s.k > 0) {
      step1c(s);
      step2(s);
      step3(s);
      step4(s);
      step5(s);
    }
    s.b.resize(static_cast<std::size_t>(s.k) + 1);
    return s.b;
  }

 private:
  // b[0..k] is the live word; j marks the end of the stem after a
  // successful ends() match.
  struct State {
    std::string b;
    int k;
    int j;
  };

  static bool cons(const State& s, int i) {
    switch (s.b[static_cast<std::size_t>(i)]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(s, i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  static int measure(const State& s) {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > s.j) return n;
      if (!cons(s, i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > s.j) return n;
        if (cons(s, i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > s.j) return n;
        if (!cons(s, i)) break;
        ++i;
      }
      ++i;
    }
  }

  static bool vowel_in_stem(const State& s) {
    for (int i = 0; i <= s.j; ++i)
      if (!cons(s, i)) return true;
    return false;
  }

  static bool double_cons(const State& s, int j) {
    if (j < 1) return false;
    if (s.b[static_cast<std::size_t>(j)] != s.b[static_cast<std::size_t>(j - 1)]) return false;
    return cons(s, j);
  }

  // consonant-vowel-consonant ending at i, final consonant not w, x or y.
  static bool cvc(const State& s, int i) {
    if (i < 2 || !cons(s, i) || cons(s, i - 1) || !cons(s, i - 2)) return false;
    const char ch = s.b[static_cast<std::size_t>(i)];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  static bool ends(State& s, std::string_view suffix) {
    const int len = static_cast<int>(suffix.size());
    if (len > s.k + 1) return false;
    if (std::string_view(s.b).substr(static_cast<std::size_t>(s.k - len + 1),
                                     static_cast<std::size_t>(len)) != suffix)
      return false;
    s.j = s.k - len;
    return true;
  }

  static void set_to(State& s, std::string_view replacement) {
    s.b.replace(static_cast<std::size_t>(s.j + 1), static_cast<std::size_t>(s.k - s.j),
                replacement);
    s.k = s.j + static_cast<int>(replacement.size());
    s.b.resize(static_cast<std::size_t>(s.k) + 1);
  }

  static void replace_if_measured(State& s, std::string_view replacement) {
    if (measure(s) > 0) set_to(s, replacement);
  }

  static void step1ab(State& s) {
    if (s.b[static_cast<std::size_t>(s.k)] == 's') {
      if (ends(s, "sses")) {
        s.k -= 2;
      } else if (ends(s, "ies")) {
        set_to(s, "i");
      } else if (s.b[static_cast<std::size_t>(s.k - 1)] != 's') {
        --s.k;
      }
      s.b.resize(static_cast<std::size_t>(s.k) + 1);
    }
    if (ends(s, "eed")) {
      if (measure(s) > 0) --s.k;
    } else if ((ends(s, "ed") || ends(s, "ing")) && vowel_in_stem(s)) {
      s.k = s.j;
      s.b.resize(static_cast<std::size_t>(s.k) + 1);
      if (ends(s, "at")) {
        set_to(s, "ate");
      } else if (ends(s, "bl")) {
        set_to(s, "ble");
      } else if (ends(s, "iz")) {
        set_to(s, "ize");
      } else if (double_cons(s, s.k)) {
        --s.k;
        const char ch = s.b[static_cast<std::size_t>(s.k)];
        if (ch == 'l' || ch == 's' || ch == 'z') ++s.k;
      } else {
        s.j = s.k;
        if (measure(s) == 1 && cvc(s, s.k)) {
          s.b.push_back('e');
          ++s.k;
        }
      }
    }
    s.b.resize(static_cast<std::size_t>(s.k) + 1);
  }

  static void step1c(State& s) {
    if (ends(s, "y") && vowel_in_stem(s)) s.b[static_cast<std::size_t>(s.k)] = 'i';
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  // The first matching suffix wins; its condition is tested once.
  template <std::size_t N>
  static void apply_first(State& s, const Rule (&rules)[N]) {
    for (const Rule& rule : rules) {
      if (ends(s, rule.suffix)) {
        replace_if_measured(s, rule.replacement);
        return;
      }
    }
  }

  static void step2(State& s) {
    if (s.k < 1) return;
    switch (s.b[static_cast<std::size_t>(s.k - 1)]) {
      case 'a': {
        static constexpr Rule r[] = {{"ational", "ate"}, {"tional", "tion"}};
        apply_first(s, r);
        break;
      }
      case 'c': {
        static constexpr Rule r[] = {{"enci", "ence"}, {"anci", "ance"}};
        apply_first(s, r);
        break;
      }
      case 'e': {
        static constexpr Rule r[] = {{"izer", "ize"}};
        apply_first(s, r);
        break;
      }
      case 'l': {
        static constexpr Rule r[] = {
            {"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}};
        apply_first(s, r);
        break;
      }
      case 'o': {
        static constexpr Rule r[] = {{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
        apply_first(s, r);
        break;
      }
      case 's': {
        static constexpr Rule r[] = {
            {"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}};
        apply_first(s, r);
        break;
      }
      case 't': {
        static constexpr Rule r[] = {{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
        apply_first(s, r);
        break;
      }
      case 'g': {
        static constexpr Rule r[] = {{"logi", "log"}};
        apply_first(s, r);
        break;
      }
      default:
        break;
    }
  }

  static void step3(State& s) {
    switch (s.b[static_cast<std::size_t>(s.k)]) {
      case 'e': {
        static constexpr Rule r[] = {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
        apply_first(s, r);
        break;
      }
      case 'i': {
        static constexpr Rule r[] = {{"iciti", "ic"}};
        apply_first(s, r);
        break;
      }
      case 'l': {
        static constexpr Rule r[] = {{"ical", "ic"}, {"ful", ""}};
        apply_first(s, r);
        break;
      }
      case 's': {
        static constexpr Rule r[] = {{"ness", ""}};
        apply_first(s, r);
        break;
      }
      default:
        break;
    }
  }

  static void step4(State& s) {
    if (s.k < 1) return;
    bool matched = false;
    switch (s.b[static_cast<std::size_t>(s.k - 1)]) {
      case 'a': matched = ends(s, "al"); break;
      case 'c': matched = ends(s, "ance") || ends(s, "ence"); break;
      case 'e': matched = ends(s, "er"); break;
      case 'i': matched = ends(s, "ic"); break;
      case 'l': matched = ends(s, "able") || ends(s, "ible"); break;
      case 'n':
        matched = ends(s, "ant") || ends(s, "ement") || ends(s, "ment") || ends(s, "ent");
        break;
      case 'o':
        if (ends(s, "ion") && s.j >= 0 &&
            (s.b[static_cast<std::size_t>(s.j)] == 's' || s.b[static_cast<std::size_t>(s.j)] == 't')) {
          matched = true;
        } else {
          matched = ends(s, "ou");
        }
        break;
      case 's': matched = ends(s, "ism"); break;
      case 't': matched = ends(s, "ate") || ends(s, "iti"); break;
      case 'u': matched = ends(s, "ous"); break;
      case 'v': matched = ends(s, "ive"); break;
      case 'z': matched = ends(s, "ize"); break;
      default: break;
    }
    if (matched && measure(s) > 1) {
      s.k = s.j;
      s.b.resize(static_cast<std::size_t>(s.k) + 1);
    }
  }

  static void step5(State& s) {
    s.j = s.k;
    if (s.b[static_cast<std::size_t>(s.k)] == 'e') {
      const int m = measure(s);
      if (m > 1 || (m == 1 && !cvc(s, s.k - 1))) --s.k;
    }
    if (s.b[static_cast<std::size_t>(s.k)] == 'l' && double_cons(s, s.k) && measure(s) > 1) --s.k;
    s.b.resize(static_cast<std::size_t>(s.k) + 1);
  }
};

// Applies the stemmer until the word stops changing. A single Porter pass is
// not idempotent ("agreed" -> "agre" -> "agr"); normalization needs it to be.
inline std::string stem_to_fixed_point(std::string_view word) {
  static const PorterStemmer stemmer;
  std::string current(word);
  for (;;) {
    std::string next = stemmer(current);
    if (next == current) return current;
    current = std::move(next);
  }
}

}  // namespace teasekit
