#include "teamltl/limits.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace teamltl {

void Limits::apply(const std::string& spec) {
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed cap '" + item + "', expected key=value");
    std::string key = item.substr(0, eq);
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed value in cap '" + item + "'");
    }
    if (key == "lcm") max_lcm = value;
    else if (key == "cover") max_cover_team = value;
    else if (key == "bound-multiplier") bound_multiplier = value;
    else if (key == "fo-lax") max_fo_lax = value;
    else if (key == "fo-choices") max_fo_choices = value;
    else if (key == "fo-cover") max_fo_cover_team = value;
    else if (key == "bijection") max_bijection_team = value;
    else if (key == "kripke-paths") max_kripke_paths = value;
    else throw std::invalid_argument("unknown cap '" + key + "'");
  }
}

Limits Limits::from_env() {
  Limits l;
  if (const char* spec = std::getenv("TEAMLTL_CAPS")) l.apply(spec);
  return l;
}

}  // namespace teamltl
