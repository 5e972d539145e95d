#ifndef MEDIR_PORTER_HPP
#define MEDIR_PORTER_HPP

#include <string>
#include <string_view>

// Porter suffix-stripping stemmer, including the two common departures from
// the 1980 description (step 2 maps bli->ble rather than abli->able, and adds
// logi->log) and the guard that leaves words of length <= 2 untouched.

namespace medir {

namespace detail {

class PorterStemmer {
public:
    std::string stem(std::string_view word) {
        if (word.size() <= 2) return std::string(word);
        b_.assign(word.begin(), word.end());
        k_ = static_cast<int>(b_.size()) - 1;
        j_ = 0;
        step1ab();
        step1c();
        step2();
        step3();
        step4();
        step5();
        return b_;
    }

private:
    std::string b_;
    int k_ = 0; // index of the last letter of the word
    int j_ = 0; // index of the last letter of the candidate stem

    char at(int i) const { return b_[static_cast<std::size_t>(i)]; }

    bool is_consonant(int i) const {
        switch (at(i)) {
        case 'a': case 'e': case 'i': case 'o': case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !is_consonant(i - 1);
        default:
            return true;
        }
    }

    // Number of vowel-consonant sequences in [0, j_].
    int measure() const {
        int n = 0;
        int i = 0;
        while (true) {
            if (i > j_) return n;
            if (!is_consonant(i)) break;
            ++i;
        }
        ++i;
        while (true) {
            while (true) {
                if (i > j_) return n;
                if (is_consonant(i)) break;
                ++i;
            }
            ++i;
            ++n;
            while (true) {
                if (i > j_) return n;
                if (!is_consonant(i)) break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const {
        for (int i = 0; i <= j_; ++i)
            if (!is_consonant(i)) return true;
        return false;
    }

    bool double_consonant(int i) const {
        if (i < 1) return false;
        if (at(i) != at(i - 1)) return false;
        return is_consonant(i);
    }

    // consonant-vowel-consonant ending at i where the last consonant is not
    // w, x or y; marks short stems like "hop" that want a trailing e back.
    bool cvc(int i) const {
        if (i < 2 || !is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2))
            return false;
        char c = at(i);
        return c != 'w' && c != 'x' && c != 'y';
    }

    bool ends_with(std::string_view s) {
        int len = static_cast<int>(s.size());
        if (len > k_ + 1) return false;
        if (b_.compare(static_cast<std::size_t>(k_ + 1 - len), static_cast<std::size_t>(len), s) != 0)
            return false;
        j_ = k_ - len;
        return true;
    }

    void set_to(std::string_view s) {
        b_.resize(static_cast<std::size_t>(j_ + 1));
        b_.append(s);
        k_ = j_ + static_cast<int>(s.size());
    }

    void truncate(int new_k) {
        k_ = new_k;
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }

    void replace_if_stem(std::string_view s) {
        if (measure() > 0) set_to(s);
    }

    void step1ab() {
        if (at(k_) == 's') {
            if (ends_with("sses")) {
                truncate(k_ - 2);
            } else if (ends_with("ies")) {
                set_to("i");
            } else if (at(k_ - 1) != 's') {
                truncate(k_ - 1);
            }
        }
        if (ends_with("eed")) {
            if (measure() > 0) truncate(k_ - 1);
        } else if ((ends_with("ed") || ends_with("ing")) && vowel_in_stem()) {
            truncate(j_);
            if (ends_with("at")) {
                set_to("ate");
            } else if (ends_with("bl")) {
                set_to("ble");
            } else if (ends_with("iz")) {
                set_to("ize");
            } else if (double_consonant(k_)) {
                char c = at(k_);
                if (c != 'l' && c != 's' && c != 'z') truncate(k_ - 1);
            } else if (measure() == 1 && cvc(k_)) {
                j_ = k_;
                set_to("e");
            }
        }
    }

    void step1c() {
        if (ends_with("y") && vowel_in_stem()) b_[static_cast<std::size_t>(k_)] = 'i';
    }

    void step2() {
        if (k_ < 1) return;
        switch (at(k_ - 1)) {
        case 'a':
            if (ends_with("ational")) { replace_if_stem("ate"); return; }
            if (ends_with("tional")) { replace_if_stem("tion"); return; }
            return;
        case 'c':
            if (ends_with("enci")) { replace_if_stem("ence"); return; }
            if (ends_with("anci")) { replace_if_stem("ance"); return; }
            return;
        case 'e':
            if (ends_with("izer")) { replace_if_stem("ize"); return; }
            return;
        case 'l':
            if (ends_with("bli")) { replace_if_stem("ble"); return; }
            if (ends_with("alli")) { replace_if_stem("al"); return; }
            if (ends_with("entli")) { replace_if_stem("ent"); return; }
            if (ends_with("eli")) { replace_if_stem("e"); return; }
            if (ends_with("ousli")) { replace_if_stem("ous"); return; }
            return;
        case 'o':
            if (ends_with("ization")) { replace_if_stem("ize"); return; }
            if (ends_with("ation")) { replace_if_stem("ate"); return; }
            if (ends_with("ator")) { replace_if_stem("ate"); return; }
            return;
        case 's':
            if (ends_with("alism")) { replace_if_stem("al"); return; }
            if (ends_with("iveness")) { replace_if_stem("ive"); return; }
            if (ends_with("fulness")) { replace_if_stem("ful"); return; }
            if (ends_with("ousness")) { replace_if_stem("ous"); return; }
            return;
        case 't':
            if (ends_with("aliti")) { replace_if_stem("al"); return; }
            if (ends_with("iviti")) { replace_if_stem("ive"); return; }
            if (ends_with("biliti")) { replace_if_stem("ble"); return; }
            return;
        case 'g':
            if (ends_with("logi")) { replace_if_stem("log"); return; }
            return;
        default:
            return;
        }
    }

    void step3() {
        switch (at(k_)) {
        case 'e':
            if (ends_with("icate")) { replace_if_stem("ic"); return; }
            if (ends_with("ative")) { replace_if_stem(""); return; }
            if (ends_with("alize")) { replace_if_stem("al"); return; }
            return;
        case 'i':
            if (ends_with("iciti")) { replace_if_stem("ic"); return; }
            return;
        case 'l':
            if (ends_with("ical")) { replace_if_stem("ic"); return; }
            if (ends_with("ful")) { replace_if_stem(""); return; }
            return;
        case 's':
            if (ends_with("ness")) { replace_if_stem(""); return; }
            return;
        default:
            return;
        }
    }

    void step4() {
        if (k_ < 1) return;
        bool matched = false;
        switch (at(k_ - 1)) {
        case 'a':
            matched = ends_with("al");
            break;
        case 'c':
            matched = ends_with("ance") || ends_with("ence");
            break;
        case 'e':
            matched = ends_with("er");
            break;
        case 'i':
            matched = ends_with("ic");
            break;
        case 'l':
            matched = ends_with("able") || ends_with("ible");
            break;
        case 'n':
            matched = ends_with("ant") || ends_with("ement") || ends_with("ment") || ends_with("ent");
            break;
        case 'o':
            matched = (ends_with("ion") && j_ >= 0 && (at(j_) == 's' || at(j_) == 't')) || ends_with("ou");
            break;
        case 's':
            matched = ends_with("ism");
            break;
        case 't':
            matched = ends_with("ate") || ends_with("iti");
            break;
        case 'u':
            matched = ends_with("ous");
            break;
        case 'v':
            matched = ends_with("ive");
            break;
        case 'z':
            matched = ends_with("ize");
            break;
        default:
            return;
        }
        if (matched && measure() > 1) truncate(j_);
    }

    void step5() {
        j_ = k_;
        if (at(k_) == 'e') {
            int a = measure();
            if (a > 1 || (a == 1 && !cvc(k_ - 1))) truncate(k_ - 1);
        }
        j_ = k_;
        if (at(k_) == 'l' && double_consonant(k_) && measure() > 1) truncate(k_ - 1);
    }
};

} // namespace detail

// Stems one already-lowercased token.
inline std::string porter_stem(std::string_view word) {
    detail::PorterStemmer stemmer;
    return stemmer.stem(word);
}

} // namespace medir

#endif
