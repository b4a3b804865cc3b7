#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace yeastlink {

// One parameter slot: `key = value  # unit / note` in the file.
struct ParamBinding {
  std::string key;
  std::variant<double*, int*, bool*> slot;
  std::string note;  // units or a one-line description, emitted as a comment
};

struct ParamFileInfo {
  std::string schema;    // e.g. "rx_params/1"
  std::string hash_hex;  // content hash, recorded in run manifests
};

std::uint64_t fnv1a(std::string_view bytes);
std::string hash_hex(std::string_view bytes);

// Reads `key = value` lines ('#' starts a comment). The `schema` key is
// mandatory and must match. Unknown keys are rejected; with `require_all`
// every bound key must appear. Throws config_error with the offending key.
ParamFileInfo load_param_file(const std::string& path,
                              const std::string& expected_schema,
                              std::span<const ParamBinding> bindings,
                              bool require_all = true);

// Writes the documented counterpart of load_param_file.
void write_param_file(const std::string& path, const std::string& schema,
                      std::string_view title,
                      std::span<const ParamBinding> bindings);

}  // namespace yeastlink
