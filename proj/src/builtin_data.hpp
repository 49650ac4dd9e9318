#pragma once

#include <string_view>

namespace gecsyn::detail {

extern const std::string_view kBuiltinLexicon;
extern const std::string_view kBuiltinIrregular;

} // namespace gecsyn::detail
