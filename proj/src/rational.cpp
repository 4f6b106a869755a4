#include "gasket/rational.hpp"

#include "gasket/errors.hpp"

#include <cctype>

namespace gasket {

Rational pow_rational(long base, int e) {
    BigInt p = 1;
    const int m = e < 0 ? -e : e;
    for (int i = 0; i < m; ++i) p *= base;
    if (e >= 0) return Rational(p);
    return Rational(BigInt(1), p);
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ConfigError("empty number");
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) throw ConfigError("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        const auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(BigInt(s));
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const int frac = static_cast<int>(s.size() - dot - 1);
        if (digits == "-" || digits == "+" || digits.empty()) throw ConfigError("bad number '" + text + "'");
        return Rational(BigInt(digits)) * pow_rational(10, -frac);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + text + "'");
    }
}

}  // namespace gasket
