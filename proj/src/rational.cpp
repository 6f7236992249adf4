#include "ibody/rational.hpp"

#include <cstddef>

namespace ibody {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

} // namespace

Rat parse_rat(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text)) {
            throw ValidationError("not an exact rational: \"" + text +
                                  "\" (expected \"p\" or \"p/q\" with integer p, q; "
                                  "irrational coordinates unsupported)");
        }
        return Rat(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) {
        throw ValidationError("not an exact rational: \"" + text + "\"");
    }
    const Int d(den);
    if (d == 0) {
        throw ValidationError("zero denominator in rational \"" + text + "\"");
    }
    return Rat(Int(num), d);
}

std::string rat_to_string(const Rat& v) {
    const Int num = numerator_of(v);
    const Int den = denominator_of(v);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string rat_to_decimal(const Rat& v, int significant) {
    if (significant < 1) significant = 1;
    if (v == 0) return "0";

    Int num = numerator_of(v);
    const Int den = denominator_of(v);
    const bool negative = num < 0;
    if (negative) num = -num;

    // t = floor(num * 10^P / den) carries more than `significant` digits of
    // the value; round the surplus away and track the decimal exponent.
    const int pad = static_cast<int>(den.str().size()) + significant + 2;
    Int t = num;
    for (int i = 0; i < pad; ++i) t *= 10;
    t /= den;

    std::string digits = t.str();
    int exponent = static_cast<int>(digits.size()) - 1 - pad;
    const int drop = static_cast<int>(digits.size()) - significant;

    Int ten_drop = 1;
    for (int i = 0; i < drop; ++i) ten_drop *= 10;
    Int rounded = t / ten_drop;
    const Int remainder = t % ten_drop;
    if (remainder * 2 >= ten_drop) rounded += 1;

    digits = rounded.str();
    if (static_cast<int>(digits.size()) > significant) {
        // Rounding carried into a new leading digit (e.g. 999... -> 1000...).
        digits.pop_back();
        ++exponent;
    }

    std::string out;
    if (exponent >= significant - 1) {
        out = digits + std::string(exponent - significant + 1, '0');
    } else if (exponent >= 0) {
        out = digits.substr(0, exponent + 1) + "." + digits.substr(exponent + 1);
    } else {
        out = "0." + std::string(-exponent - 1, '0') + digits;
    }

    if (out.find('.') != std::string::npos) {
        std::size_t last = out.find_last_not_of('0');
        if (out[last] == '.') --last;
        out.erase(last + 1);
    }
    return negative ? "-" + out : out;
}

} // namespace ibody
