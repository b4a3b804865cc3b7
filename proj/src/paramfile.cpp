#include "yeastlink/paramfile.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "yeastlink/errors.hpp"

namespace yeastlink {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::string_view bytes) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(bytes)));
  return buf;
}

ParamFileInfo load_param_file(const std::string& path,
                              const std::string& expected_schema,
                              std::span<const ParamBinding> bindings,
                              bool require_all) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw config_error("cannot open parameter file '" + path + "'");
  std::stringstream raw;
  raw << f.rdbuf();
  const std::string content = raw.str();

  std::unordered_map<std::string, const ParamBinding*> by_key;
  for (const auto& b : bindings) by_key[b.key] = &b;

  std::unordered_map<std::string, bool> seen;
  std::string schema;
  std::istringstream in(content);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "schema") {
      schema = value;
      if (schema != expected_schema)
        throw config_error(path + ": schema '" + schema + "' does not match '" +
                           expected_schema + "'");
      continue;
    }
    auto it = by_key.find(key);
    if (it == by_key.end())
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
    if (seen[key])
      throw config_error(path + ": duplicate key '" + key + "'");
    seen[key] = true;
    char* end = nullptr;
    const double num = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
      throw config_error(path + ": key '" + key + "': bad number '" + value + "'");
    std::visit(
        [&](auto* slot) {
          using T = std::remove_pointer_t<decltype(slot)>;
          if constexpr (std::is_same_v<T, double>) {
            *slot = num;
          } else if constexpr (std::is_same_v<T, int>) {
            *slot = static_cast<int>(std::llround(num));
          } else {
            *slot = num != 0.0;
          }
        },
        it->second->slot);
  }
  if (schema.empty())
    throw config_error(path + ": missing 'schema' key");
  if (require_all) {
    for (const auto& b : bindings)
      if (!seen[b.key])
        throw config_error(path + ": missing key '" + b.key + "'");
  }
  return ParamFileInfo{schema, hash_hex(content)};
}

void write_param_file(const std::string& path, const std::string& schema,
                      std::string_view title,
                      std::span<const ParamBinding> bindings) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw data_error("cannot open '" + path + "' for writing");
  f << "# " << title << "\n";
  f << "# One key per constant; values are calibration defaults.\n";
  f << "schema = " << schema << "\n\n";
  std::size_t width = 0;
  for (const auto& b : bindings) width = std::max(width, b.key.size());
  for (const auto& b : bindings) {
    std::string value = std::visit(
        [&](auto* slot) -> std::string {
          using T = std::remove_pointer_t<decltype(slot)>;
          char buf[40];
          if constexpr (std::is_same_v<T, double>) {
            std::snprintf(buf, sizeof(buf), "%.15g", *slot);
            if (std::strtod(buf, nullptr) != *slot)
              std::snprintf(buf, sizeof(buf), "%.17g", *slot);
          } else if constexpr (std::is_same_v<T, int>) {
            std::snprintf(buf, sizeof(buf), "%d", *slot);
          } else {
            std::snprintf(buf, sizeof(buf), "%d", *slot ? 1 : 0);
          }
          return buf;
        },
        b.slot);
    f << b.key << std::string(width - b.key.size() + 1, ' ') << "= " << value;
    if (!b.note.empty()) f << "  # " << b.note;
    f << "\n";
  }
}

}  // namespace yeastlink
