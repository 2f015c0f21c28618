#pragma once

#include <string_view>

namespace hetnet::detail {

extern const std::string_view southern_women_tsv;
extern const std::string_view southern_women_groups_tsv;

}  // namespace hetnet::detail
