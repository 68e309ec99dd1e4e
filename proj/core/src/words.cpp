#include "h3cert/words.hpp"

#include <algorithm>

namespace h3cert {

GroupWord GroupWord::parse(std::string_view text) {
    for (size_t i = 0; i < text.size(); ++i) {
        if (!is_word_letter(text[i])) {
            throw parse_error("letter '" + std::string(1, text[i]) + "' at position " +
                              std::to_string(i) + " is outside the alphabet {x, y, X, Y}");
        }
    }
    return GroupWord(std::string(text));
}

long GroupWord::exponent_sum_x() const {
    long n = 0;
    for (char c : letters_) n += (c == 'x') - (c == 'X');
    return n;
}

long GroupWord::exponent_sum_y() const {
    long n = 0;
    for (char c : letters_) n += (c == 'y') - (c == 'Y');
    return n;
}

bool GroupWord::uses_only_generators(int generator_count) const {
    if (generator_count >= 2) return true;
    if (generator_count == 1) {
        return std::all_of(letters_.begin(), letters_.end(),
                           [](char c) { return c == 'x' || c == 'X'; });
    }
    return letters_.empty();
}

GroupWord GroupWord::inverse() const {
    std::string inv(letters_.rbegin(), letters_.rend());
    for (char& c : inv) {
        c = std::islower(static_cast<unsigned char>(c)) ? std::toupper(static_cast<unsigned char>(c))
                                                        : std::tolower(static_cast<unsigned char>(c));
    }
    return GroupWord(std::move(inv));
}

} // namespace h3cert
