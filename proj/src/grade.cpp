#include "aqf/grade.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>

namespace aqf {

namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole)
{
    if (digits.empty()) {
        throw GradeError("malformed grade literal '" + std::string(whole) + "'");
    }
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc::result_out_of_range) {
        throw GradeError("grade literal '" + std::string(whole) + "' exceeds 64-bit precision");
    }
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw GradeError("malformed grade literal '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw GradeError("zero denominator");
    }
    if (den < 0) {
        if (num == std::numeric_limits<std::int64_t>::min() || den == std::numeric_limits<std::int64_t>::min()) {
            throw GradeError("rational term out of range");
        }
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) {
        return std::strong_ordering::less;
    }
    if (lhs > rhs) {
        return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Rational Rational::parse(std::string_view text)
{
    const std::string_view whole = text;
    if (text.empty()) {
        throw GradeError("empty grade literal");
    }
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    std::int64_t num = 0;
    std::int64_t den = 1;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = parse_digits(text.substr(0, slash), whole);
        den = parse_digits(text.substr(slash + 1), whole);
        if (den == 0) {
            throw GradeError("zero denominator in '" + std::string(whole) + "'");
        }
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const std::string_view int_part = text.substr(0, dot);
        const std::string_view frac_part = text.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) {
            throw GradeError("malformed grade literal '" + std::string(whole) + "'");
        }
        if (frac_part.size() > 18) {
            throw GradeError("grade literal '" + std::string(whole) + "' has too many decimal places");
        }
        const std::int64_t ip = int_part.empty() ? 0 : parse_digits(int_part, whole);
        const std::int64_t fp = frac_part.empty() ? 0 : parse_digits(frac_part, whole);
        for (std::size_t i = 0; i < frac_part.size(); ++i) {
            den *= 10;
        }
        if (ip > (std::numeric_limits<std::int64_t>::max() - fp) / den) {
            throw GradeError("grade literal '" + std::string(whole) + "' exceeds 64-bit precision");
        }
        num = ip * den + fp;
    } else {
        num = parse_digits(text, whole);
    }
    return Rational(negative ? -num : num, den);
}

std::string Rational::fraction() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::decimal() const
{
    std::int64_t d = den_;
    int twos = 0;
    int fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) {
        return {};
    }
    const int places = std::max(twos, fives);
    if (places > 36) {
        return {};
    }
    __int128 scaled = num_ < 0 ? -static_cast<__int128>(num_) : num_;
    __int128 pow10 = 1;
    for (int i = 0; i < places; ++i) {
        pow10 *= 10;
    }
    scaled = scaled * (pow10 / den_);
    std::string digits;
    {
        __int128 v = scaled;
        do {
            digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
            v /= 10;
        } while (v != 0);
    }
    if (places > 0) {
        while (digits.size() <= static_cast<std::size_t>(places)) {
            digits.insert(digits.begin(), '0');
        }
        digits.insert(digits.end() - places, '.');
    }
    return (num_ < 0 ? "-" : "") + digits;
}

Grade::Grade(Rational value) : value_(value)
{
    if (value_ < Rational(0, 1) || value_ > Rational(1, 1)) {
        throw GradeError("grade " + value_.fraction() + " lies outside [0, 1]");
    }
}

Grade Grade::parse(std::string_view text)
{
    return Grade(Rational::parse(text));
}

Grade Grade::complement() const
{
    return Grade(Rational(value_.den() - value_.num(), value_.den()));
}

std::string Grade::text() const
{
    const std::string dec = value_.decimal();
    if (dec.empty()) {
        return value_.fraction();
    }
    if (value_.den() == 1) {
        return dec;
    }
    return dec + " (=" + value_.fraction() + ")";
}

}  // namespace aqf
