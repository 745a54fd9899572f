#include "atlas/scalar.hpp"

namespace atlas {

Scalar parse_scalar(const std::string& text) {
  if (text.empty()) throw InvalidInput("empty scalar");
  std::string num = text, den = "1";
  if (auto pos = text.find('/'); pos != std::string::npos) {
    num = text.substr(0, pos);
    den = text.substr(pos + 1);
  }
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) throw InvalidInput("malformed scalar: " + text);
  mpz_class n(num), d(den);
  if (d == 0) throw InvalidInput("zero denominator: " + text);
  Scalar r(n, d);
  r.canonicalize();
  return r;
}

std::string format_scalar(const Scalar& s) {
  Scalar c = s;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace atlas
