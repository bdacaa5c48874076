#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aqf {

/// Normalized fraction with 64-bit terms. Only the operations membership
/// grades need are provided: comparison, 1 - x, and textual conversion.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    /// Accepts "p/q", integers, and decimal literals ("0.09" -> 9/100).
    static Rational parse(std::string_view text);

    /// Always "p/q", including integers ("1/1").
    std::string fraction() const;

    /// Exact decimal expansion when the denominator is 2^a*5^b, else empty.
    std::string decimal() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

class GradeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Membership grade: an exact rational in [0, 1].
class Grade {
public:
    constexpr Grade() = default;
    explicit Grade(Rational value);
    Grade(std::int64_t num, std::int64_t den) : Grade(Rational(num, den)) {}

    static Grade zero() { return Grade(); }
    static Grade one() { return Grade(1, 1); }

    /// Parses a grade literal; throws GradeError when malformed or outside [0, 1].
    static Grade parse(std::string_view text);

    const Rational& value() const { return value_; }

    Grade complement() const;

    /// "p/q" form used by every structured output.
    std::string str() const { return value_.fraction(); }

    /// "0.4 (=2/5)" when a finite decimal exists ("0", "1" for integers),
    /// otherwise "p/q".
    std::string text() const;

    friend bool operator==(const Grade&, const Grade&) = default;
    friend std::strong_ordering operator<=>(const Grade& a, const Grade& b) { return a.value_ <=> b.value_; }

private:
    Rational value_;
};

inline const Grade& min(const Grade& a, const Grade& b) { return b < a ? b : a; }
inline const Grade& max(const Grade& a, const Grade& b) { return a < b ? b : a; }

}  // namespace aqf
