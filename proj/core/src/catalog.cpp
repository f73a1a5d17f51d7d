#include "kform/catalog.hpp"

#include <map>

#include "kform/error.hpp"
#include "kform/parser.hpp"

namespace kform {

namespace {

const std::map<std::string, std::string>& table() {
  static const std::map<std::string, std::string> t{
      {"wave", "axes x,t; Dt^2 - Dx^2"},
      {"heat", "axes x,t; Dt - Dx^2"},
      {"biharmonic", "axes x,y,z; Dx^4 + Dy^4 + Dz^4 + 2*Dx^2*Dy^2 + 2*Dy^2*Dz^2 + 2*Dz^2*Dx^2"},
      {"example2", "axes x,y,z; Dx^2*Dy^2*Dz^2 + Dx^2*Dy^2 + Dz^2"},
      {"stokes",
       R"json({"axes": ["t", "x", "y", "z"], "params": ["nu"], "fields": ["u1", "u2", "u3", "p"],
 "entries": [["Dt - nu*(Dx^2 + Dy^2 + Dz^2)", "0", "0", "Dx"],
             ["0", "Dt - nu*(Dx^2 + Dy^2 + Dz^2)", "0", "Dy"],
             ["0", "0", "Dt - nu*(Dx^2 + Dy^2 + Dz^2)", "Dz"],
             ["Dx", "Dy", "Dz", "0"]]})json"},
  };
  return t;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& [k, _] : table()) out.push_back(k);
  return out;
}

std::string catalog_source(const std::string& name) {
  auto it = table().find(name);
  if (it == table().end()) throw DomainError("unknown catalog operator '" + name + "'");
  return it->second;
}

AnyOperator catalog_operator(const std::string& name) { return parse_operator(catalog_source(name)); }

}  // namespace kform
