/// @file porter.hpp
/// @brief The Porter (1980) suffix-stripping stemmer.
///
/// Follows Martin Porter's reference implementation, which differs from the
/// published rule tables in Step 2 only: `bli -> ble` replaces `abli -> able`,
/// and `logi -> log` is added. With these, output agrees with the reference
/// vocabulary (data/porter) word for word.
///
/// Input is expected to be lowercase. Words of one or two characters are
/// returned unchanged. Any byte other than a, e, i, o, u (and y after a
/// vowel) counts as a consonant.

#pragma once

#include <string>
#include <string_view>

namespace valence {

namespace detail {

class PorterStemmer {
public:
    explicit PorterStemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

    std::string run()
    {
        if (k_ <= 1)
            return b_;
        step1ab();
        if (k_ > 0) {
            step1c();
            step2();
            step3();
            step4();
            step5();
        }
        return b_.substr(0, static_cast<std::size_t>(k_ + 1));
    }

private:
    std::string b_;
    int k_; // index of the last character of the current word
    int j_ = 0; // end of the stem when a suffix matched

    bool cons(int i) const
    {
        switch (b_[i]) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u':
            return false;
        case 'y':
            return i == 0 ? true : !cons(i - 1);
        default:
            return true;
        }
    }

    /// Number of VC sequences in b[0..j].
    int measure() const
    {
        int n = 0;
        int i = 0;
        for (;;) {
            if (i > j_)
                return n;
            if (!cons(i))
                break;
            ++i;
        }
        ++i;
        for (;;) {
            for (;;) {
                if (i > j_)
                    return n;
                if (cons(i))
                    break;
                ++i;
            }
            ++i;
            ++n;
            for (;;) {
                if (i > j_)
                    return n;
                if (!cons(i))
                    break;
                ++i;
            }
            ++i;
        }
    }

    bool vowel_in_stem() const
    {
        for (int i = 0; i <= j_; ++i)
            if (!cons(i))
                return true;
        return false;
    }

    bool double_consonant(int i) const
    {
        return i >= 1 && b_[i] == b_[i - 1] && cons(i);
    }

    /// consonant-vowel-consonant ending at i, where the final consonant is
    /// not w, x or y.
    bool cvc(int i) const
    {
        if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2))
            return false;
        const char ch = b_[i];
        return ch != 'w' && ch != 'x' && ch != 'y';
    }

    bool ends(std::string_view suffix)
    {
        const int len = static_cast<int>(suffix.size());
        if (len > k_ + 1)
            return false;
        if (std::string_view(b_).substr(static_cast<std::size_t>(k_ + 1 - len), suffix.size()) != suffix)
            return false;
        j_ = k_ - len;
        return true;
    }

    /// Replaces b[j+1..k] with s.
    void set_to(std::string_view s)
    {
        b_.replace(static_cast<std::size_t>(j_ + 1), static_cast<std::size_t>(k_ - j_), s);
        k_ = j_ + static_cast<int>(s.size());
        b_.resize(static_cast<std::size_t>(k_ + 1));
    }

    void replace_if_measured(std::string_view s)
    {
        if (measure() > 0)
            set_to(s);
    }

    // Plurals and -ed / -ing.
    void step1ab()
    {
        if (b_[k_] == 's') {
            if (ends("sses"))
                k_ -= 2;
            else if (ends("ies"))
                set_to("i");
            else if (b_[k_ - 1] != 's')
                --k_;
        }
        if (ends("eed")) {
            if (measure() > 0)
                --k_;
        } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
            k_ = j_;
            if (ends("at"))
                set_to("ate");
            else if (ends("bl"))
                set_to("ble");
            else if (ends("iz"))
                set_to("ize");
            else if (double_consonant(k_)) {
                --k_;
                const char ch = b_[k_];
                if (ch == 'l' || ch == 's' || ch == 'z')
                    ++k_;
            } else if (measure() == 1 && cvc(k_)) {
                set_to("e");
            }
        }
    }

    // Terminal y -> i when there is another vowel in the stem.
    void step1c()
    {
        if (ends("y") && vowel_in_stem())
            b_[k_] = 'i';
    }

    // Double suffixes to single ones, keyed on the penultimate letter.
    void step2()
    {
        struct Rule {
            std::string_view suffix;
            std::string_view replacement;
        };
        auto apply = [this](std::initializer_list<Rule> rules) {
            for (const auto& r : rules)
                if (ends(r.suffix)) {
                    replace_if_measured(r.replacement);
                    return;
                }
        };
        switch (b_[k_ - 1]) {
        case 'a':
            apply({{"ational", "ate"}, {"tional", "tion"}});
            break;
        case 'c':
            apply({{"enci", "ence"}, {"anci", "ance"}});
            break;
        case 'e':
            apply({{"izer", "ize"}});
            break;
        case 'l':
            apply({{"bli", "ble"}, {"alli", "al"}, {"entli", "ent"}, {"eli", "e"}, {"ousli", "ous"}});
            break;
        case 'o':
            apply({{"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}});
            break;
        case 's':
            apply({{"alism", "al"}, {"iveness", "ive"}, {"fulness", "ful"}, {"ousness", "ous"}});
            break;
        case 't':
            apply({{"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}});
            break;
        case 'g':
            apply({{"logi", "log"}});
            break;
        default:
            break;
        }
    }

    // -ic-, -full, -ness etc.
    void step3()
    {
        struct Rule {
            std::string_view suffix;
            std::string_view replacement;
        };
        auto apply = [this](std::initializer_list<Rule> rules) {
            for (const auto& r : rules)
                if (ends(r.suffix)) {
                    replace_if_measured(r.replacement);
                    return;
                }
        };
        switch (b_[k_]) {
        case 'e':
            apply({{"icate", "ic"}, {"ative", ""}, {"alize", "al"}});
            break;
        case 'i':
            apply({{"iciti", "ic"}});
            break;
        case 'l':
            apply({{"ical", "ic"}, {"ful", ""}});
            break;
        case 's':
            apply({{"ness", ""}});
            break;
        default:
            break;
        }
    }

    // Strips -ant, -ence etc. in context <c>vcvc<v>.
    void step4()
    {
        auto any = [this](std::initializer_list<std::string_view> suffixes) {
            for (auto s : suffixes)
                if (ends(s))
                    return true;
            return false;
        };
        bool matched = false;
        switch (b_[k_ - 1]) {
        case 'a':
            matched = any({"al"});
            break;
        case 'c':
            matched = any({"ance", "ence"});
            break;
        case 'e':
            matched = any({"er"});
            break;
        case 'i':
            matched = any({"ic"});
            break;
        case 'l':
            matched = any({"able", "ible"});
            break;
        case 'n':
            matched = any({"ant", "ement", "ment", "ent"});
            break;
        case 'o':
            if (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't'))
                matched = true;
            else
                matched = any({"ou"});
            break;
        case 's':
            matched = any({"ism"});
            break;
        case 't':
            matched = any({"ate", "iti"});
            break;
        case 'u':
            matched = any({"ous"});
            break;
        case 'v':
            matched = any({"ive"});
            break;
        case 'z':
            matched = any({"ize"});
            break;
        default:
            break;
        }
        if (matched && measure() > 1)
            k_ = j_;
    }

    // Final -e and -ll.
    void step5()
    {
        j_ = k_;
        if (b_[k_] == 'e') {
            const int m = measure();
            if (m > 1 || (m == 1 && !cvc(k_ - 1)))
                --k_;
        }
        if (b_[k_] == 'l' && double_consonant(k_) && measure() > 1)
            --k_;
    }
};

} // namespace detail

inline std::string porter_stem(std::string_view word)
{
    return detail::PorterStemmer(word).run();
}

} // namespace valence
