// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 irtune contributors

#include "irtune/porter.hpp"

#include <array>
#include <cstddef>
#include <span>

namespace irtune {
namespace {

// Works on a private buffer; `k` is the index of the last live character and
// `j` marks the end of the stem left of the suffix matched by ends().
class Stemmer {
public:
    explicit Stemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

    std::string run() {
        step1a();
        if (k_ < 0) return {};
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5();
        b_.resize(static_cast<std::size_t>(k_) + 1);
        return std::move(b_);
    }

private:
    std::string b_;
    int k_;
    int j_ = 0;

    bool is_consonant(int i) const {
        char c = b_[static_cast<std::size_t>(i)];
        switch (c) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !is_consonant(i - 1);
            default:
                return true;
        }
    }

    // Number of vowel-consonant sequences in b[0..j].
    int measure(int j) const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j) return n;
            if (!is_consonant(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j) return n;
                if (is_consonant(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j) return n;
                if (!is_consonant(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem(int j) const {
        for (int i = 0; i <= j; ++i) {
            if (!is_consonant(i)) return true;
        }
        return false;
    }

    bool double_consonant(int i) const {
        if (i < 1) return false;
        if (b_[static_cast<std::size_t>(i)] != b_[static_cast<std::size_t>(i - 1)]) return false;
        return is_consonant(i);
    }

    // consonant-vowel-consonant ending where the final consonant is not w, x or y.
    bool cvc(int i) const {
        if (i < 2 || !is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2)) return false;
        char c = b_[static_cast<std::size_t>(i)];
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends(std::string_view s) {
        int len = static_cast<int>(s.size());
        if (len > k_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(k_ + 1 - len), static_cast<std::size_t>(len), s) !=
            0) {
            return false;
        }
        j_ = k_ - len;
        return true;
    }

    void set_to(std::string_view s) {
        b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
        k_ = j_ + static_cast<int>(s.size());
    }

    void drop_suffix() { k_ = j_; }

    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
    };

    // Apply the longest matching rule; when its m-condition fails, no other
    // rule in the step is tried.
    void apply_rules(std::span<const Rule> rules) {
        const Rule* best = nullptr;
        for (const Rule& r : rules) {
            if (r.suffix.size() <= (best != nullptr ? best->suffix.size() : 0)) continue;
            if (ends(r.suffix)) best = &r;
        }
        if (best == nullptr) return;
        ends(best->suffix);  // reset j_ for the winning suffix
        if (measure(j_) > 0) set_to(best->replacement);
    }

    void step1a() {
        if (k_ < 0 || b_[static_cast<std::size_t>(k_)] != 's') return;
        if (ends("sses")) {
            set_to("ss");
        } else if (ends("ies")) {
            set_to("i");
        } else if (ends("ss")) {
            // keep
        } else if (ends("s")) {
            drop_suffix();
        }
    }

    void step1b() {
        if (ends("eed")) {
            if (measure(j_) > 0) set_to("ee");
            return;
        }
        if ((ends("ed") || ends("ing")) && vowel_in_stem(j_)) {
            drop_suffix();
            if (ends("at")) {
                set_to("ate");
            } else if (ends("bl")) {
                set_to("ble");
            } else if (ends("iz")) {
                set_to("ize");
            } else if (double_consonant(k_)) {
                char c = b_[static_cast<std::size_t>(k_)];
                if (c != 'l' && c != 's' && c != 'z') --k_;
            } else if (measure(k_) == 1 && cvc(k_)) {
                j_ = k_;
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends("y") && vowel_in_stem(j_)) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    void step2() {
        static constexpr std::array<Rule, 20> rules{{
            {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"}, {"fulness", "ful"},
            {"ousness", "ous"}, {"tional", "tion"}, {"biliti", "ble"},  {"entli", "ent"},
            {"ousli", "ous"},   {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
            {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},   {"izer", "ize"},
            {"abli", "able"},   {"alli", "al"},     {"ator", "ate"},    {"eli", "e"},
        }};
        apply_rules(rules);
    }

    void step3() {
        static constexpr std::array<Rule, 7> rules{{
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
            {"ical", "ic"},  {"ness", ""},  {"ful", ""},
        }};
        apply_rules(rules);
    }

    void step4() {
        static constexpr std::array<std::string_view, 19> suffixes{
            "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion", "ism",
            "ate",   "iti",  "ous",  "ive",  "ize",  "al",   "er",  "ic",  "ou",
        };
        std::string_view best;
        for (std::string_view s : suffixes) {
            if (s.size() <= best.size()) continue;
            if (ends(s)) best = s;
        }
        if (best.empty()) return;
        ends(best);
        if (measure(j_) <= 1) return;
        if (best == "ion") {
            char c = j_ >= 0 ? b_[static_cast<std::size_t>(j_)] : '\0';
            if (c != 's' && c != 't') return;
        }
        drop_suffix();
    }

    void step5() {
        // 5a: drop a final e when m > 1, or when m == 1 unless the stem ends cvc.
        if (ends("e")) {
            int m = measure(j_);
            if (m > 1 || (m == 1 && !cvc(j_))) drop_suffix();
        }
        // 5b: -ll -> -l when m > 1.
        if (k_ >= 1 && b_[static_cast<std::size_t>(k_)] == 'l' && double_consonant(k_) &&
            measure(k_) > 1) {
            --k_;
        }
    }
};

}  // namespace

std::string porter_stem(std::string_view word) {
    if (word.size() <= 0) return {};
    return Stemmer(word).run();
}

}  // namespace irtune
