#pragma once

#include <string>
#include <vector>

#include "kform/operator.hpp"

namespace kform {

/// Named operators: wave, heat, biharmonic, example2, stokes.
std::vector<std::string> catalog_names();
/// Source text of a named operator (DSL or matrix JSON); throws DomainError on unknown names.
std::string catalog_source(const std::string& name);
AnyOperator catalog_operator(const std::string& name);

}  // namespace kform
