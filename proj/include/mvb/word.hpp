#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mvb {

// Letters are 1-based axes; the product reads left to right as composition,
// so the rightmost letter acts first.
struct Word {
    std::vector<int> letters;
    bool operator==(const Word&) const = default;
};

// Accepts X Y Z, W4 W5 ..., Xk, and V (axis 2) / H (axis 1), with
// parentheses and ^k powers. Whitespace is ignored.
Word parse_word(std::string_view text, int n);
std::string format_word(const Word& w, int n);
Word power(const Word& w, int k);
Word concat(const Word& a, const Word& b);
// cancels adjacent equal letters only
Word free_reduce(const Word& w);

}  // namespace mvb
