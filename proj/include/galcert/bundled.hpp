#pragma once

/**
 * @file bundled.hpp
 * @brief The two shipped eigenvalue datasets and the default expectations table.
 *
 * The JSON sources live in data/ and are compiled in, so the CLI and tests do
 * not depend on the working directory.
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "galcert/bundled_data.hpp"
#include "galcert/data_io.hpp"

namespace galcert {

struct BundledDataset {
    std::string_view id;
    std::string_view text;
};

inline constexpr std::array bundled_datasets{
    BundledDataset{"schoen_s4_25", bundled_text::schoen_s4_25},
    BundledDataset{"s2_512_sqrt2", bundled_text::s2_512_sqrt2},
};

/// Accepts the dataset id with or without a ".json" suffix.
inline std::optional<std::string_view> bundled_form_text(std::string_view name) {
    if (name.ends_with(".json")) name.remove_suffix(5);
    for (const auto& d : bundled_datasets)
        if (d.id == name) return d.text;
    return std::nullopt;
}

inline NewformData bundled_form(std::string_view name) {
    const auto text = bundled_form_text(name);
    if (!text) throw error(errc::invalid_argument, "no bundled dataset named " + std::string(name));
    return load(*text).form;
}

inline Expectations bundled_expectations() {
    return expectations_from_json(json::parse(bundled_text::expectations));
}

} // namespace galcert
