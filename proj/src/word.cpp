#include "mvb/word.hpp"

#include <algorithm>
#include <cctype>

#include "mvb/error.hpp"

namespace mvb {

namespace {

class WordParser {
public:
    WordParser(std::string_view text, int n) : n_(n) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_ += c;
    }

    Word parse() {
        Word w = sequence();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return w;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;
    int n_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Errc::BadWord, msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    bool more() const { return pos_ < s_.size(); }
    char peek() const { return s_[pos_]; }

    int number() {
        const std::size_t start = pos_;
        while (more() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    Word sequence() {
        Word w;
        while (more() && peek() != ')') {
            Word item = atom();
            if (more() && peek() == '^') {
                ++pos_;
                bool invert = false;
                if (more() && peek() == '-') {
                    invert = true;
                    ++pos_;
                }
                // every generator is an involution, so w^-1 is w reversed
                if (invert) std::reverse(item.letters.begin(), item.letters.end());
                item = power(item, number());
            }
            w = concat(w, item);
        }
        return w;
    }

    Word atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Word inner = sequence();
            if (!more() || peek() != ')') fail("missing ')'");
            ++pos_;
            return inner;
        }
        ++pos_;
        int axis = 0;
        switch (c) {
            case 'X':
                axis = (more() && std::isdigit(static_cast<unsigned char>(peek()))) ? number() : 1;
                break;
            case 'Y': axis = 2; break;
            case 'Z': axis = 3; break;
            case 'W': axis = number(); break;
            case 'V': axis = 2; break;
            case 'H': axis = 1; break;
            default: --pos_; fail("unknown letter '" + std::string(1, c) + "'");
        }
        if (axis < 1 || axis > n_) fail("letter for axis " + std::to_string(axis) + " with n = " + std::to_string(n_));
        return Word{{axis}};
    }
};

}  // namespace

Word parse_word(std::string_view text, int n) { return WordParser(text, n).parse(); }

std::string format_word(const Word& w, int n) {
    std::string out;
    for (int a : w.letters) {
        if (n == 2) {
            out += a == 2 ? "V" : "H";
        } else if (a <= 3) {
            out += "XYZ"[a - 1];
        } else {
            out += "W" + std::to_string(a);
        }
    }
    return out.empty() ? "I" : out;
}

Word power(const Word& w, int k) {
    Word out;
    for (int i = 0; i < k; ++i) out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
    return out;
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

Word free_reduce(const Word& w) {
    Word out;
    for (int a : w.letters) {
        if (!out.letters.empty() && out.letters.back() == a) {
            out.letters.pop_back();
        } else {
            out.letters.push_back(a);
        }
    }
    return out;
}

}  // namespace mvb
