// Copyright 2026 The proprank Authors.
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
//
// Porter stemming algorithm, 1980 rules. Follows the standard reference
// implementation, including its step-2 adjustments (bli->ble, logi->log)
// and the rule that words of length <= 2 are left alone.

#include <array>
#include <string>
#include <string_view>

namespace proprank::text {

namespace {

struct Stemmer {
    std::string b;
    int k = 0;  // last index of the current word
    int j = 0;  // last index of the stem before a matched suffix

    bool is_consonant(int i) const {
        char c = b[i];
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
        if (c == 'y') return i == 0 ? true : !is_consonant(i - 1);
        return true;
    }

    // Number of VC sequences in b[0..upto].
    int measure(int upto) const {
        int n = 0, i = 0;
        while (true) {
            if (i > upto) return n;
            if (!is_consonant(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > upto) return n;
                if (is_consonant(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > upto) return n;
                if (!is_consonant(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j; ++i)
            if (!is_consonant(i)) return true;
        return false;
    }

    bool double_consonant(int i) const {
        return i >= 1 && b[i] == b[i - 1] && is_consonant(i);
    }

    // consonant-vowel-consonant ending at i, last consonant not w/x/y
    bool cvc(int i) const {
        if (i < 2 || !is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2))
            return false;
        char c = b[i];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view s) {
        int len = static_cast<int>(s.size());
        if (len > k + 1) return false;
        if (b.compare(k - len + 1, len, s) != 0) return false;
        j = k - len;
        return true;
    }

    void set_to(std::string_view s) {
        b.replace(j + 1, k - j, s);
        k = j + static_cast<int>(s.size());
    }

    void replace_if_m(std::string_view s) {
        if (measure(j) > 0) set_to(s);
    }

    void step1ab() {
        if (b[k] == 's') {
            if (ends("sses")) k -= 2;
            else if (ends("ies")) set_to("i");
            else if (b[k - 1] != 's') --k;
        }
        if (ends("eed")) {
            if (measure(j) > 0) --k;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k = j;
            if (ends("at")) set_to("ate");
            else if (ends("bl")) set_to("ble");
            else if (ends("iz")) set_to("ize");
            else if (double_consonant(k)) {
                --k;
                char c = b[k];
                if (c == 'l' || c == 's' || c == 'z') ++k;
            } else if (measure(k) == 1 && cvc(k)) {
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem()) b[k] = 'i';
    }

    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
    };

    // First matching suffix in the group claims the word; the measure
    // condition then decides whether the replacement happens.
    bool apply_first(std::initializer_list<Rule> rules) {
        for (const Rule& r : rules) {
            if (ends(r.suffix)) {
                replace_if_m(r.replacement);
                return true;
            }
        }
        return false;
    }

    void step2() {
        if (k < 1) return;
        switch (b[k - 1]) {
        case 'a': apply_first({{"ational", "ate"}, {"tional", "tion"}}); break;
        case 'c': apply_first({{"enci", "ence"}, {"anci", "ance"}}); break;
        case 'e': apply_first({{"izer", "ize"}}); break;
        case 'l':
            apply_first({{"bli", "ble"}, {"alli", "al"}, {"entli", "ent"},
                         {"eli", "e"}, {"ousli", "ous"}});
            break;
        case 'o': apply_first({{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}}); break;
        case 's':
            apply_first({{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"},
                         {"ousness", "ous"}});
            break;
        case 't': apply_first({{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}}); break;
        case 'g': apply_first({{"logi", "log"}}); break;
        default: break;
        }
    }

    void step3() {
        switch (b[k]) {
        case 'e': apply_first({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}}); break;
        case 'i': apply_first({{"iciti", "ic"}}); break;
        case 'l': apply_first({{"ical", "ic"}, {"ful", ""}}); break;
        case 's': apply_first({{"ness", ""}}); break;
        default: break;
        }
    }

    void step4() {
        if (k < 1) return;
        bool matched = false;
        switch (b[k - 1]) {
        case 'a': matched = ends("al"); break;
        case 'c': matched = ends("ance") || ends("ence"); break;
        case 'e': matched = ends("er"); break;
        case 'i': matched = ends("ic"); break;
        case 'l': matched = ends("able") || ends("ible"); break;
        case 'n': matched = ends("ant") || ends("ement") || ends("ment") || ends("ent"); break;
        case 'o':
            matched = (ends("ion") && j >= 0 && (b[j] == 's' || b[j] == 't')) || ends("ou");
            break;
        case 's': matched = ends("ism"); break;
        case 't': matched = ends("ate") || ends("iti"); break;
        case 'u': matched = ends("ous"); break;
        case 'v': matched = ends("ive"); break;
        case 'z': matched = ends("ize"); break;
        default: break;
        }
        if (matched && measure(j) > 1) k = j;
    }

    void step5() {
        if (b[k] == 'e') {
            int m = measure(k);
            if (m > 1 || (m == 1 && !cvc(k - 1))) --k;
        }
        if (b[k] == 'l' && double_consonant(k) && measure(k) > 1) --k;
    }

    std::string run() {
        if (k <= 1) return b;
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b.substr(0, k + 1);
    }
};

}  // namespace

std::string porter_stem(std::string_view word) {
    Stemmer s;
    s.b = std::string(word);
    s.k = static_cast<int>(s.b.size()) - 1;
    if (s.k < 0) return {};
    return s.run();
}

}  // namespace proprank::text
