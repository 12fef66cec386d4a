#include "gpw/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gpw {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

}  // namespace

ConfigFile parse_config(std::string_view text) {
  ConfigFile cfg;
  std::string section;
  std::optional<int> order;
  std::vector<std::pair<MultiIndex, Expression>> terms;
  std::optional<QuadraticForm> gamma;
  bool saw_operator = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      section = trim(std::string_view(s).substr(1, s.size() - 2));
      if (section != "operator") fail(line, "unknown section [" + section + "]");
      saw_operator = true;
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(std::string_view(s).substr(0, eq));
    const std::string value = trim(std::string_view(s).substr(eq + 1));
    if (key.empty() || value.empty()) fail(line, "empty key or value");

    if (section.empty()) {
      cfg.settings[key] = value;
      continue;
    }
    try {
      if (key == "order") {
        order = std::stoi(value);
      } else if (key == "gamma") {
        QuadraticForm g{};
        std::stringstream vs(value);
        std::string part;
        int k = 0;
        while (std::getline(vs, part, ',')) {
          if (k >= 3) fail(line, "gamma takes three values");
          g[k++] = std::stod(part);
        }
        if (k != 3) fail(line, "gamma takes three values");
        gamma = g;
      } else if (key.size() == 3 && key[0] == 'a' && std::isdigit(static_cast<unsigned char>(key[1])) &&
                 std::isdigit(static_cast<unsigned char>(key[2]))) {
        terms.emplace_back(MultiIndex{key[1] - '0', key[2] - '0'}, Expression::parse(value));
      } else {
        fail(line, "unknown operator key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("config line", 0) == 0) throw;
      fail(line, what);
    }
  }

  if (saw_operator) {
    if (!order) throw std::invalid_argument("config: [operator] needs 'order'");
    OperatorFamily f(*order);
    for (const auto& [kl, expr] : terms) {
      if (kl.length() > *order)
        throw std::invalid_argument("config: coefficient a" + std::to_string(kl.i) + std::to_string(kl.j) +
                                    " exceeds the operator order");
      f.set(kl, expr);
    }
    if (gamma) f.assert_gamma(*gamma);
    cfg.op = std::move(f);
  }
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gpw
