#pragma once

// JSON input documents. Integers are JSON integers or decimal strings (for
// values beyond 64 bits); rationals are integers or "p/q" strings. Unknown
// fields and floating point numbers are rejected.

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"

#include "tensegrity/framework.hpp"

namespace tensegrity {

using Json = nlohmann::ordered_json;

struct InputDocument {
  std::variant<PlanarFramework, KFramework> framework;

  bool planar() const noexcept { return framework.index() == 0; }
  const PlanarFramework& as_planar() const { return std::get<PlanarFramework>(framework); }
  const KFramework& as_general() const { return std::get<KFramework>(framework); }
  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// Throws Error(ParseError) with "line N" for syntax errors and the JSON
/// pointer of the offending field for schema errors.
InputDocument parse_document(std::string_view text);
InputDocument load_document(const std::filesystem::path& path);

Json to_json(const InputDocument& doc);
std::string serialize(const InputDocument& doc);

/// JSON integer when it fits in 64 bits, decimal string otherwise.
Json int_json(const Int& v);
/// Integer JSON value for integral rationals, "p/q" string otherwise.
Json rat_json(const Rat& v);

}  // namespace tensegrity
