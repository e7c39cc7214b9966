#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hvc/form.hpp"

namespace hvc::cli {

enum class Style { plain, latex, json };

std::optional<Style> style_from_string(std::string_view s);
// HVC_STYLE if set to a valid style, plain otherwise.
Style default_style();

std::string render(const Scalar& f, Style style);
std::string render(const Form& w, Style style);

nlohmann::json scalar_json(const Scalar& f);
nlohmann::json form_json(const Form& w);

}  // namespace hvc::cli
