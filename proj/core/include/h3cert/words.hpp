#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace h3cert {

class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A word over the alphabet {x, y, X, Y}, where X and Y denote the inverses
// of x and y.  The empty word is the identity.  The string form is the wire
// format: no whitespace, no other characters.
class GroupWord {
public:
    GroupWord() = default;

    static GroupWord parse(std::string_view text);

    const std::string& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    size_t size() const { return letters_.size(); }

    // signed letter counts (exponent sums in the abelianization)
    long exponent_sum_x() const;
    long exponent_sum_y() const;

    // uses only letters of the first `generator_count` generators
    bool uses_only_generators(int generator_count) const;

    GroupWord inverse() const;

    friend bool operator==(const GroupWord& a, const GroupWord& b) = default;

private:
    explicit GroupWord(std::string letters) : letters_(std::move(letters)) {}
    std::string letters_;
};

inline bool is_word_letter(char c) { return c == 'x' || c == 'y' || c == 'X' || c == 'Y'; }

} // namespace h3cert
