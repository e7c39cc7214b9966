#include "hvc/cli/render.hpp"

#include <cstdlib>

namespace hvc::cli {

std::optional<Style> style_from_string(std::string_view s) {
  if (s == "plain") return Style::plain;
  if (s == "latex") return Style::latex;
  if (s == "json") return Style::json;
  return std::nullopt;
}

Style default_style() {
  const char* env = std::getenv("HVC_STYLE");
  if (env == nullptr) return Style::plain;
  return style_from_string(env).value_or(Style::plain);
}

nlohmann::json scalar_json(const Scalar& f) {
  std::string den = "1";
  if (!f.is_polynomial()) {
    den.clear();
    for (auto& factor : f.den_factors()) {
      if (!den.empty()) den += "*";
      den += "(" + factor.base->poly().str() + ")";
      if (factor.exponent > 1) den += "^" + std::to_string(factor.exponent);
    }
  }
  return {{"num", f.num().str()}, {"den", den}};
}

nlohmann::json form_json(const Form& w) { return nlohmann::json::parse(w.json()); }

std::string render(const Scalar& f, Style style) {
  switch (style) {
    case Style::latex: return f.latex();
    case Style::json: return scalar_json(f).dump();
    default: return f.str();
  }
}

std::string render(const Form& w, Style style) {
  switch (style) {
    case Style::latex: return w.latex();
    case Style::json: return w.json();
    default: return w.str();
  }
}

}  // namespace hvc::cli
